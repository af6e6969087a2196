from .povm import (
    CLICK,
    NO_CLICK,
    DetectorSpec,
    povm_no_click,
    povm_click,
    projector_exactly_n,
    outcome_weights,
    outcome_operator,
)
from .bell_measurement import ConditionalOutput, condition_on_bell
