from .layout import ModeLayout
from .states import FockState, DensityMatrix, PureEnsemble, hermitize
from .algebra import (
    coherent_state,
    number_state,
    tensor,
    partial_trace,
    normalize,
    fidelity_pure,
    fidelity_mixed,
    required_cutoff,
    poisson_tail,
    single_mode_layout,
)
