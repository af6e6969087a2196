from dataclasses import dataclass

import numpy as np

from utils.helpers import ConfigurationError, check_unit_interval

CLICK = 'click'
NO_CLICK = 'no-click'


@dataclass(frozen=True)
class DetectorSpec:
    """Single-photon detector.

    discriminating=False: click/no-click detector of efficiency eta_spd.
    discriminating=True: ideal photon counter (efficiency fixed at 1).
    """

    eta_spd: float = 1.0
    discriminating: bool = False

    def __post_init__(self):
        eta = check_unit_interval(self.eta_spd, 'eta_spd')
        if self.discriminating and eta != 1.0:
            raise ConfigurationError("number-discriminating detectors are modelled as lossless (eta_spd = 1)")
        object.__setattr__(self, 'eta_spd', eta)


def _require_click_detector(spec):
    if spec.discriminating:
        raise ConfigurationError("click/no-click POVM requested for a number-discriminating detector")


def no_click_weights(spec, layout):
    _require_click_detector(spec)
    return (1.0 - spec.eta_spd) ** np.arange(layout.local_dim)


def povm_no_click(spec, layout):
    """sum_n (1 - eta_spd)^n |n><n|."""
    layout.require_modes(1)
    return np.diag(no_click_weights(spec, layout))


def povm_click(spec, layout):
    """Identity minus the no-click element."""
    layout.require_modes(1)
    return np.diag(1.0 - no_click_weights(spec, layout))


def projector_exactly_n(n, layout):
    layout.require_modes(1)
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or not 0 <= n <= layout.cutoff:
        raise ConfigurationError(f"photon number {n!r} outside 0..{layout.cutoff}")
    weights = np.zeros(layout.local_dim)
    weights[n] = 1.0
    return np.diag(weights)


def outcome_weights(spec, outcome, layout):
    """Diagonal of the POVM element for `outcome` ('click' or 'no-click').

    A discriminating detector heralds 'click' with exactly one photon and
    'no-click' with exactly zero photons.
    """
    if outcome not in (CLICK, NO_CLICK):
        raise ConfigurationError(f"unknown detector outcome {outcome!r}")
    single = layout.subset(1)
    if spec.discriminating:
        return np.diagonal(projector_exactly_n(1 if outcome == CLICK else 0, single)).copy()
    if outcome == CLICK:
        return 1.0 - no_click_weights(spec, single)
    return no_click_weights(spec, single)


def outcome_operator(spec, outcome, layout):
    return np.diag(outcome_weights(spec, outcome, layout))
