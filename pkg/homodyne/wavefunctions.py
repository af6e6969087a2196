"""
Harmonic-oscillator eigenfunctions in the vacuum-variance-1/2 convention,
evaluated by three-term recurrences:

    psi_0 = pi^(-1/4) exp(-x^2/2)
    psi_{n+1} = (sqrt(2) x psi_n - sqrt(n) psi_{n-1}) / sqrt(n+1)

The irregular (non-normalizable) solutions phi_n of the same equation satisfy
the same recurrence from n = 1 on; phi_0 and phi_1 are written with the Dawson
function so that the Wronskian psi_n phi_n' - psi_n' phi_n equals 2.
"""

import numpy as np
from scipy.special import dawsn

_PI_QUARTER = np.pi ** 0.25


def _grid(x):
    return np.atleast_1d(np.asarray(x, dtype=float))


def _recur(first, second, x, max_n):
    values = np.empty((max_n + 1, x.size))
    values[0] = first
    if max_n >= 1:
        values[1] = second
    for n in range(1, max_n):
        values[n + 1] = (np.sqrt(2.0) * x * values[n] - np.sqrt(n) * values[n - 1]) / np.sqrt(n + 1)
    return values


def oscillator_wavefunctions(max_n, x):
    """psi_0..psi_max_n at the points x; shape (max_n + 1, len(x))."""
    x = _grid(x)
    ground = np.exp(-x ** 2 / 2) / _PI_QUARTER
    return _recur(ground, np.sqrt(2.0) * x * ground, x, max_n)


def irregular_wavefunctions(max_n, x):
    """phi_0..phi_max_n at the points x; they grow like exp(x^2/2)."""
    x = _grid(x)
    envelope = _PI_QUARTER * np.exp(x ** 2 / 2)
    dawson = dawsn(x)
    first = 2.0 * envelope * dawson
    second = np.sqrt(2.0) * envelope * (2.0 * x * dawson - 1.0)
    return _recur(first, second, x, max_n)


def _ladder_derivative(values):
    # u_n' = (sqrt(n) u_{n-1} - sqrt(n+1) u_{n+1}) / sqrt(2), n = 0..len-2
    top = values.shape[0] - 1
    n = np.arange(top)[:, None]
    lower = np.zeros_like(values[:top])
    lower[1:] = values[:top - 1]
    return (np.sqrt(n) * lower - np.sqrt(n + 1) * values[1:top + 1]) / np.sqrt(2.0)


def oscillator_derivatives(max_n, x):
    return _ladder_derivative(oscillator_wavefunctions(max_n + 1, x))


def irregular_derivatives(max_n, x):
    """phi_n' for n = 0..max_n.

    phi_0 is not annihilated by the lowering operator, so its derivative is
    written out: phi_0' = 2 pi^(1/4) exp(x^2/2) (1 - x D(x)).
    """
    x = _grid(x)
    derivatives = _ladder_derivative(irregular_wavefunctions(max_n + 1, x))
    derivatives[0] = 2.0 * _PI_QUARTER * np.exp(x ** 2 / 2) * (1.0 - x * dawsn(x))
    return derivatives
