"""
Quadrature statistics of a single-mode state for the quadrature
x_theta = (a e^{-i theta} + a^dagger e^{i theta}) / sqrt(2).
"""

import numpy as np
from scipy.integrate import cumulative_trapezoid

from utils.helpers import ConfigurationError
from .wavefunctions import oscillator_wavefunctions


def _single_mode(rho):
    if rho.layout.mode_count != 1:
        raise ConfigurationError(f"quadrature statistics need a single-mode state, got {rho.layout.mode_count} modes")
    return rho.elements


def quadrature_pdf(rho, theta, x):
    """pr(x|theta) = sum_mn rho_mn e^{i(n-m)theta} psi_m(x) psi_n(x)."""
    elements = _single_mode(rho)
    cutoff = rho.layout.cutoff
    phased = oscillator_wavefunctions(cutoff, x) * np.exp(1j * theta * np.arange(cutoff + 1))[:, None]
    density = np.einsum('mx,mn,nx->x', phased.conj(), elements, phased).real
    return density if np.ndim(x) else float(density[0])


def _lowering(dim):
    return np.diag(np.sqrt(np.arange(1, dim)), k=1)


def quadrature_moments(rho, theta):
    """(mean, second moment, variance) of x_theta, computed from rho directly."""
    elements = _single_mode(rho)
    dim = elements.shape[0]
    # one extra level so a^dagger a^dagger is exact on the truncated support
    padded = np.zeros((dim + 1, dim + 1), dtype=complex)
    padded[:dim, :dim] = elements
    a = _lowering(dim + 1)
    rotated = a * np.exp(-1j * theta)
    quadrature = (rotated + rotated.conj().T) / np.sqrt(2.0)

    mean = float(np.trace(padded @ quadrature).real)
    second = float(np.trace(padded @ quadrature @ quadrature).real)
    return mean, second, second - mean ** 2


def mean_photon_number(rho):
    _single_mode(rho)
    return float(np.dot(np.arange(rho.layout.local_dim), rho.diagonal()))


def quadrature_histogram(rho, theta, edges, resolution=1e-3):
    """Probability of x_theta falling in each bin [edges[i], edges[i+1])."""
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
        raise ConfigurationError("histogram edges must be a strictly increasing sequence of at least two values")
    points = int(np.ceil((edges[-1] - edges[0]) / resolution)) + 1
    grid = np.linspace(edges[0], edges[-1], points)
    cdf = cumulative_trapezoid(quadrature_pdf(rho, theta, grid), grid, initial=0.0)
    return np.diff(np.interp(edges, grid, cdf))
