from dataclasses import dataclass

import numpy as np

from fock_core import DensityMatrix, FockState, PureEnsemble, hermitize
from utils.helpers import ConfigurationError, NoTeleportationEventError, DEFAULT_SETTINGS
from .povm import CLICK, NO_CLICK, outcome_weights


@dataclass(frozen=True)
class ConditionalOutput:
    """Unnormalized state left in the unmeasured mode and its heralding probability."""

    rho_out: DensityMatrix
    p_tel: float


def _heralding_weights(d1, d2, layout):
    return np.outer(outcome_weights(d1, CLICK, layout), outcome_weights(d2, NO_CLICK, layout))


def condition_on_bell(rho123, d1, d2, settings=DEFAULT_SETTINGS, d1_mode=0, d2_mode=1):
    """Collapse a three-mode state on "D1 clicks, D2 stays dark".

    Both POVM elements are diagonal, so they are applied as weights on the
    photon numbers of the measured modes before tracing them out.
    """
    layout = rho123.layout
    layout.require_modes(3)
    layout.check_mode(d1_mode)
    layout.check_mode(d2_mode)
    if d1_mode == d2_mode:
        raise ConfigurationError("the two detectors must watch different modes")
    keep = ({0, 1, 2} - {d1_mode, d2_mode}).pop()

    d = layout.local_dim
    weights = _heralding_weights(d1, d2, layout).reshape(-1)
    out_layout = layout.subset(1)

    if isinstance(rho123, FockState):
        rho123 = PureEnsemble.from_state(rho123)

    if isinstance(rho123, PureEnsemble):
        elements = np.zeros((d, d), dtype=complex)
        for weight, psi in rho123.tensors():
            rows = np.transpose(psi, (d1_mode, d2_mode, keep)).reshape(d * d, d)
            elements += weight * rows.T @ (weights[:, None] * rows.conj())
    else:
        order = (d1_mode, d2_mode, keep, 3 + d1_mode, 3 + d2_mode, 3 + keep)
        moved = np.transpose(rho123.as_tensor(), order)
        elements = np.einsum('abcabd,ab->cd', moved, weights.reshape(d, d))

    rho_out = DensityMatrix(out_layout, hermitize(elements))
    p_tel = rho_out.trace
    if p_tel < settings.p_tel_floor:
        raise NoTeleportationEventError(p_tel, settings.p_tel_floor)
    return ConditionalOutput(rho_out, p_tel)
