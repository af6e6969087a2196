"""
Generalized Bernoulli transformation: photon loss modelled as a beam splitter
with an empty second input, written directly as its binomial element map

    rho'_{m,n} = sum_k sqrt(C(m+k,k) C(n+k,k)) eta^{(m+n)/2} (1-eta)^k rho_{m+k,n+k}
"""

import math

import numpy as np

from fock_core import DensityMatrix, PureEnsemble
from utils.helpers import check_unit_interval


def binomial_element_map(rho, mode, amplitude, shift):
    """Element map with coefficients sqrt(C(m+k,k) C(n+k,k)) amplitude^(m+n) shift^k.

    amplitude = sqrt(eta), shift = 1 - eta gives the loss channel; the inverse
    channel uses amplitude = 1/sqrt(eta), shift = 1 - 1/eta.
    """
    layout = rho.layout
    layout.check_mode(mode)
    d = layout.local_dim
    count = layout.mode_count

    moved = np.moveaxis(rho.as_tensor(), [mode, count + mode], [0, 1])
    result = np.zeros_like(moved)
    extra = (None,) * (moved.ndim - 2)

    for k in range(d):
        size = d - k
        rows = np.arange(size)
        binomials = np.sqrt(np.array([math.comb(m + k, k) for m in rows], dtype=float))
        powers = amplitude ** rows
        weights = np.outer(binomials * powers, binomials * powers) * shift ** k
        result[:size, :size] += weights[(...,) + extra] * moved[k:, k:]

    restored = np.moveaxis(result, [0, 1], [mode, count + mode])
    dim = layout.dimension
    return DensityMatrix(layout, restored.reshape(dim, dim), rho.settings)


def loss_channel(rho, eta, mode=0):
    """Trace-preserving photon loss with transmission `eta` on one mode."""
    eta = check_unit_interval(eta, 'eta')
    if isinstance(rho, PureEnsemble):
        rho = rho.to_density_matrix()
    if eta == 1.0:
        return rho
    return binomial_element_map(rho, mode, math.sqrt(eta), 1.0 - eta)
