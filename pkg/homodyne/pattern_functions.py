from functools import lru_cache

import numpy as np

from utils.helpers import ConfigurationError, check_positive_int
from .wavefunctions import (
    oscillator_wavefunctions,
    oscillator_derivatives,
    irregular_wavefunctions,
    irregular_derivatives,
)


def pattern_functions(cutoff, x):
    """f_mn(x) for m, n <= cutoff; shape (cutoff+1, cutoff+1, len(x)).

    f_mn = d/dx (psi_m phi_n) for m >= n, with f_nm = f_mn. Averaging
    f_mn(x) e^{i(m-n)theta} over pr(x|theta) and theta in [0, pi) gives rho_mn.
    """
    check_positive_int(cutoff, 'cutoff', allow_zero=True)
    psi = oscillator_wavefunctions(cutoff, x)
    dpsi = oscillator_derivatives(cutoff, x)
    phi = irregular_wavefunctions(cutoff, x)
    dphi = irregular_derivatives(cutoff, x)

    d = cutoff + 1
    values = np.empty((d, d, psi.shape[1]))
    for m in range(d):
        for n in range(m + 1):
            values[m, n] = dpsi[m] * phi[n] + psi[m] * dphi[n]
            values[n, m] = values[m, n]
    return values


class PatternFunctionTable:
    """Pattern functions tabulated on a uniform grid and linearly interpolated.

    Points outside the grid are evaluated directly.
    """

    def __init__(self, cutoff, x_min=-6.0, x_max=6.0, step=1e-3):
        if not x_max > x_min or not step > 0:
            raise ConfigurationError("pattern-function grid needs x_max > x_min and step > 0")
        self.cutoff = cutoff
        self.x_min = float(x_min)
        self.step = float(step)
        points = int(round((x_max - x_min) / step)) + 1
        self.grid = self.x_min + self.step * np.arange(points)
        self.x_max = float(self.grid[-1])
        self.values = pattern_functions(cutoff, self.grid)

    @classmethod
    def for_cutoff(cls, cutoff):
        return _default_table(cutoff)

    def evaluate(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        d = self.cutoff + 1
        result = np.empty((d, d, x.size))

        inside = (x >= self.x_min) & (x <= self.x_max)
        if np.any(inside):
            position = (x[inside] - self.x_min) / self.step
            index = np.minimum(position.astype(int), self.grid.size - 2)
            fraction = position - index
            result[:, :, inside] = (
                self.values[:, :, index] * (1.0 - fraction) + self.values[:, :, index + 1] * fraction
            )
        if not np.all(inside):
            result[:, :, ~inside] = pattern_functions(self.cutoff, x[~inside])
        return result


@lru_cache(maxsize=8)
def _default_table(cutoff):
    return PatternFunctionTable(cutoff)
