"""
Fock-space algebra shared by the optics, detection, protocol and homodyne
packages: coherent and number states, tensor products, partial traces,
normalization and fidelities.
"""

import string

import numpy as np
from scipy import linalg
from scipy.stats import poisson

from utils.helpers import ConfigurationError, TruncationError, DEFAULT_SETTINGS
from .layout import ModeLayout
from .states import FockState, DensityMatrix, PureEnsemble, hermitize


def poisson_tail(mean_photons, cutoff):
    """P(n > cutoff) for a Poisson distribution with the given mean."""
    if mean_photons == 0:
        return 0.0
    return float(poisson.sf(cutoff, mean_photons))


def required_cutoff(alpha, tail_bound=DEFAULT_SETTINGS.tail_bound):
    """Smallest cutoff N whose coherent-state tail mass beyond N is below the bound."""
    mean_photons = abs(complex(alpha)) ** 2
    cutoff = 1
    while poisson_tail(mean_photons, cutoff) >= tail_bound:
        cutoff += 1
    return cutoff


def coherent_state(alpha, layout, settings=DEFAULT_SETTINGS):
    """|alpha> truncated at the layout cutoff; the dropped mass is kept as `tail_mass`."""
    layout.require_modes(1)
    alpha = complex(alpha)
    tail = poisson_tail(abs(alpha) ** 2, layout.cutoff)
    if tail > settings.tail_bound:
        raise TruncationError(
            f"|alpha|={abs(alpha):.4g} leaves tail mass {tail:.3e} beyond cutoff {layout.cutoff} "
            f"(bound {settings.tail_bound:.1e})"
        )

    amplitudes = np.zeros(layout.local_dim, dtype=complex)
    amplitudes[0] = np.exp(-abs(alpha) ** 2 / 2)
    for n in range(1, layout.local_dim):
        amplitudes[n] = amplitudes[n - 1] * alpha / np.sqrt(n)
    return FockState(layout, amplitudes, tail_mass=tail)


def number_state(n, layout):
    layout.require_modes(1)
    if not 0 <= n <= layout.cutoff:
        raise ConfigurationError(f"photon number {n} outside 0..{layout.cutoff}")
    amplitudes = np.zeros(layout.local_dim, dtype=complex)
    amplitudes[n] = 1.0
    return FockState(layout, amplitudes)


def tensor(a, b):
    """Kronecker composition; the modes of `a` come first."""
    layout = a.layout.combine(b.layout)

    if isinstance(a, FockState) and isinstance(b, FockState):
        tail = 1.0 - (1.0 - a.tail_mass) * (1.0 - b.tail_mass)
        return FockState(layout, np.kron(a.amplitudes, b.amplitudes), tail_mass=tail)

    if isinstance(a, DensityMatrix) or isinstance(b, DensityMatrix):
        settings = a.settings if isinstance(a, DensityMatrix) else b.settings
        left = _as_density(a).elements
        right = _as_density(b).elements
        return DensityMatrix(layout, np.kron(left, right), settings)

    left = _as_ensemble(a)
    right = _as_ensemble(b)
    weights, components = [], []
    for wa, va in zip(left.weights, left.components):
        for wb, vb in zip(right.weights, right.components):
            weights.append(wa * wb)
            components.append(np.kron(va, vb))
    return PureEnsemble(layout, tuple(weights), tuple(components))


def _as_density(state):
    if isinstance(state, DensityMatrix):
        return state
    return state.to_density_matrix()


def _as_ensemble(state):
    if isinstance(state, PureEnsemble):
        return state
    return PureEnsemble.from_state(state)


def _check_keep(layout, keep):
    keep = sorted(set(keep))
    if not keep:
        raise ConfigurationError("partial trace needs at least one mode to keep")
    for mode in keep:
        layout.check_mode(mode)
    return keep


def partial_trace(rho, keep):
    """Reduced state on the modes in `keep` (returned in ascending mode order)."""
    keep = _check_keep(rho.layout, keep)
    reduced_layout = rho.layout.subset(len(keep))
    traced = [m for m in range(rho.layout.mode_count) if m not in keep]

    if isinstance(rho, FockState):
        rho = PureEnsemble.from_state(rho)

    if isinstance(rho, PureEnsemble):
        kept_dim = reduced_layout.dimension
        elements = np.zeros((kept_dim, kept_dim), dtype=complex)
        for weight, psi in rho.tensors():
            matrix = np.transpose(psi, keep + traced).reshape(kept_dim, -1)
            elements += weight * matrix @ matrix.conj().T
        return DensityMatrix(reduced_layout, hermitize(elements))

    count = rho.layout.mode_count
    letters = string.ascii_letters
    ket = [letters[i] for i in range(count)]
    bra = [letters[count + i] if i in keep else letters[i] for i in range(count)]
    out = [letters[i] for i in keep] + [letters[count + i] for i in keep]
    expression = f"{''.join(ket)}{''.join(bra)}->{''.join(out)}"
    reduced = np.einsum(expression, rho.as_tensor())
    dim = reduced_layout.dimension
    return DensityMatrix(reduced_layout, hermitize(reduced.reshape(dim, dim)), rho.settings)


def normalize(state):
    """Unit-norm / unit-trace copy. A zero state cannot be normalized."""
    if isinstance(state, FockState):
        norm = state.norm_squared
        if norm == 0.0:
            raise ConfigurationError("cannot normalize the zero vector")
        return FockState(state.layout, state.amplitudes / np.sqrt(norm))

    if isinstance(state, PureEnsemble):
        state = state.to_density_matrix()

    trace = state.trace
    if not np.any(state.elements) or trace == 0.0:
        raise ConfigurationError("cannot normalize a zero-trace density matrix")
    return DensityMatrix(state.layout, state.elements / trace, state.settings)


def _check_normalized(rho, settings):
    if abs(rho.trace - 1.0) > settings.trace_tol:
        raise ConfigurationError(f"state is not normalized (trace {rho.trace:.12g})")


def fidelity_pure(rho, psi, settings=DEFAULT_SETTINGS):
    """<psi|rho|psi> for a normalized rho; tiny imaginary residue is discarded."""
    if isinstance(rho, PureEnsemble):
        rho = rho.to_density_matrix()
    if rho.layout != psi.layout:
        raise ConfigurationError("fidelity needs states on the same layout")
    _check_normalized(rho, settings)
    value = np.vdot(psi.amplitudes, rho.elements @ psi.amplitudes).real
    return float(min(1.0, max(0.0, value)))


def fidelity_mixed(rho, sigma, settings=DEFAULT_SETTINGS):
    """Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 of two density matrices.

    Both inputs are renormalized first; negative eigenvalues (noisy estimates)
    are clipped at zero inside the square roots.
    """
    if rho.layout != sigma.layout:
        raise ConfigurationError("fidelity needs states on the same layout")
    rho = normalize(rho)
    sigma = normalize(sigma)

    values, vectors = linalg.eigh(rho.elements)
    sqrt_rho = (vectors * np.sqrt(np.clip(values, 0.0, None))) @ vectors.conj().T
    inner = hermitize(sqrt_rho @ sigma.elements @ sqrt_rho)
    inner_values = linalg.eigvalsh(inner)
    value = float(np.sum(np.sqrt(np.clip(inner_values, 0.0, None))) ** 2)
    return min(1.0, max(0.0, value))


def single_mode_layout(cutoff):
    return ModeLayout(1, cutoff)
