import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from fock_core import DensityMatrix, FockState, PureEnsemble
from utils.helpers import ConfigurationError, TruncationError, DEFAULT_SETTINGS, check_unit_interval


@dataclass(frozen=True)
class BeamSplitterSpec:
    """Two-mode beam splitter acting on `mode_a` and `mode_b`.

    Creation operators transform as
        a+ -> sqrt(T) a+ + sqrt(1-T) b+
        b+ -> -sqrt(1-T) a+ + sqrt(T) b+
    which for T = 0.5 is the symmetric splitter with the (-1)^k phase on the
    photons entering through `mode_b`.
    """

    mode_a: int
    mode_b: int
    transmissivity: float = 0.5

    def __post_init__(self):
        if self.mode_a == self.mode_b:
            raise ConfigurationError("beam splitter needs two distinct modes")
        object.__setattr__(self, 'transmissivity', check_unit_interval(self.transmissivity, 'transmissivity'))

    def inverse(self):
        return BeamSplitterSpec(self.mode_b, self.mode_a, self.transmissivity)


@lru_cache(maxsize=64)
def _rotation_matrix(transmissivity, cutoff):
    d = cutoff + 1
    t = math.sqrt(transmissivity)
    r = math.sqrt(1.0 - transmissivity)
    matrix = np.zeros((d * d, d * d))

    for m in range(d):
        for n in range(d):
            for j in range(m + 1):
                for k in range(n + 1):
                    p = j + k
                    q = m + n - p
                    if p > cutoff or q > cutoff:
                        continue
                    weight = math.sqrt(
                        math.factorial(p) * math.factorial(q) / (math.factorial(m) * math.factorial(n))
                    )
                    matrix[p * d + q, m * d + n] += (
                        math.comb(m, j) * math.comb(n, k) * (-1) ** k
                        * t ** (j + n - k) * r ** (m - j + k) * weight
                    )
    matrix.setflags(write=False)
    return matrix


def beam_splitter_matrix(spec, layout):
    """Operator on the two-mode basis |m,n> (m in mode_a, slowest index).

    Photon-number conserving; unitary on every block with m + n <= cutoff.
    """
    if layout.cutoff < 1:
        raise ConfigurationError("beam splitter needs cutoff >= 1")
    return _rotation_matrix(spec.transmissivity, layout.cutoff)


def _pair_populations(state, spec):
    layout = state.layout
    if isinstance(state, DensityMatrix):
        populations = state.diagonal().reshape(layout.shape)
    else:
        populations = np.zeros(layout.shape)
        for weight, psi in state.tensors():
            populations += weight * np.abs(psi) ** 2
    other = tuple(m for m in range(layout.mode_count) if m not in (spec.mode_a, spec.mode_b))
    pair = populations.sum(axis=other) if other else populations
    if spec.mode_a > spec.mode_b:
        pair = pair.T
    return pair


def _check_photon_budget(state, spec, settings):
    pair = _pair_populations(state, spec)
    d = state.layout.local_dim
    totals = np.add.outer(np.arange(d), np.arange(d))
    overflow = float(pair[totals > state.layout.cutoff].sum())
    if overflow > settings.tail_bound:
        raise TruncationError(
            f"beam splitter input has weight {overflow:.3e} on photon numbers above the cutoff "
            f"{state.layout.cutoff}"
        )


def _apply_pair(tensor, op4, axis_a, axis_b):
    moved = np.tensordot(op4, tensor, axes=([2, 3], [axis_a, axis_b]))
    return np.moveaxis(moved, [0, 1], [axis_a, axis_b])


def beam_splitter_apply(state, spec, settings=DEFAULT_SETTINGS):
    """Conjugate `state` by the beam splitter embedded on its two target modes."""
    layout = state.layout
    layout.check_mode(spec.mode_a)
    layout.check_mode(spec.mode_b)
    _check_photon_budget(state, spec, settings)

    d = layout.local_dim
    op4 = beam_splitter_matrix(spec, layout).reshape(d, d, d, d)

    if isinstance(state, FockState):
        psi = _apply_pair(state.as_tensor(), op4, spec.mode_a, spec.mode_b)
        return FockState(layout, psi.reshape(-1), tail_mass=state.tail_mass)

    if isinstance(state, PureEnsemble):
        components = tuple(
            _apply_pair(vector.reshape(layout.shape), op4, spec.mode_a, spec.mode_b).reshape(-1)
            for vector in state.components
        )
        return PureEnsemble(layout, state.weights, components)

    count = layout.mode_count
    rho = _apply_pair(state.as_tensor(), op4, spec.mode_a, spec.mode_b)
    rho = _apply_pair(rho, op4.conj(), count + spec.mode_a, count + spec.mode_b)
    dim = layout.dimension
    return DensityMatrix(layout, rho.reshape(dim, dim), state.settings)
