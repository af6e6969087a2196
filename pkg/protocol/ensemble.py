import numpy as np

from fock_core import DensityMatrix, normalize, partial_trace
from optics import loss_channel
from utils.helpers import NoTeleportationEventError, DEFAULT_SETTINGS
from .branches import BranchResult, quantum_branch, semiclassical_branch, three_mode_state
from .params import MIXED


def _attempt(branch, params, settings):
    try:
        return branch(params, settings)
    except NoTeleportationEventError:
        return None


def combine_branches(params, quantum, semiclassical, settings=DEFAULT_SETTINGS):
    """Mode-matching mixture of two branch results, followed by homodyne loss.

    Weights are M * p_tel and (1 - M) * p_tel^sc; a missing branch (None)
    contributes nothing. The mixture is renormalized before the loss.
    """
    parts = []
    if quantum is not None:
        parts.append((params.mode_match * quantum.probability, quantum.rho))
    if semiclassical is not None:
        parts.append(((1.0 - params.mode_match) * semiclassical.probability, semiclassical.rho))
    parts = [(weight, rho) for weight, rho in parts if weight > 0.0]

    total = sum(weight for weight, _ in parts)
    if not parts or total < settings.p_tel_floor:
        raise NoTeleportationEventError(total, settings.p_tel_floor)

    layout = parts[0][1].layout
    elements = np.zeros((layout.dimension, layout.dimension), dtype=complex)
    for weight, rho in parts:
        elements += weight * rho.elements
    mixture = DensityMatrix(layout, elements / total)
    return BranchResult(loss_channel(mixture, params.eta_hd), total, MIXED)


def bob_ensemble(params, settings=DEFAULT_SETTINGS):
    """Bob's state as characterized by his homodyne detector.

    A branch whose weight is zero (M = 0 or M = 1) is not computed at all.
    """
    quantum = _attempt(quantum_branch, params, settings) if params.mode_match > 0.0 else None
    semiclassical = _attempt(semiclassical_branch, params, settings) if params.mode_match < 1.0 else None
    return combine_branches(params, quantum, semiclassical, settings)


def unconditioned_bob(params, settings=DEFAULT_SETTINGS):
    """Bob's mode with Alice's detectors ignored, after homodyne loss."""
    reduced = partial_trace(three_mode_state(params, settings), keep=[2])
    return loss_channel(normalize(reduced), params.eta_hd)
