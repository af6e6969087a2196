"""
Density-matrix reconstruction from homodyne data by averaging pattern
functions, and the inverse of the homodyne loss channel.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from fock_core import DensityMatrix, ModeLayout, hermitize
from optics import binomial_element_map
from utils.helpers import (
    TomographyError,
    LowSampleCountWarning,
    NonPhysicalStateWarning,
    DEFAULT_SETTINGS,
    check_positive_int,
    check_unit_interval,
)
from .pattern_functions import PatternFunctionTable

MIN_THETA_SPREAD = math.pi / 8
SAMPLES_PER_ELEMENT = 100
LOSS_CORRECTION_FLOOR = 0.3
NON_PHYSICAL_EIGENVALUE = -1e-3
CHUNK_SIZE = 8192


@dataclass(frozen=True, eq=False)
class ReconstructedState:
    rho_hat: DensityMatrix
    standard_errors: np.ndarray
    sample_count: int

    @property
    def trace_standard_error(self):
        return float(np.sqrt(np.sum(np.diagonal(self.standard_errors) ** 2)))


def theta_spread(thetas):
    """Length of the shortest arc of the half circle [0, pi) holding every phase."""
    folded = np.sort(np.mod(np.asarray(thetas, dtype=float), math.pi))
    if folded.size < 2:
        return 0.0
    gaps = np.append(np.diff(folded), folded[0] + math.pi - folded[-1])
    return float(math.pi - gaps.max())


def reconstruct(data, cutoff, table=None, correct_loss_eta=None, settings=DEFAULT_SETTINGS):
    """Estimate rho_mn (m, n <= cutoff) as the sample mean of f_mn(x) e^{i(m-n)theta}.

    Samples are processed in fixed-size chunks and summed in order. The
    standard error of each element is sqrt(var Re + var Im) / sqrt(N).
    """
    check_positive_int(cutoff, 'cutoff', allow_zero=True)
    count = len(data)
    if count == 0:
        raise TomographyError("cannot reconstruct from an empty dataset")
    if theta_spread(data.thetas) < MIN_THETA_SPREAD:
        raise TomographyError(
            "local-oscillator phases span less than pi/8; off-diagonal elements are not identifiable"
        )
    d = cutoff + 1
    if count < SAMPLES_PER_ELEMENT * d * d:
        warnings.warn(
            f"{count} samples for a {d}x{d} reconstruction; at least {SAMPLES_PER_ELEMENT * d * d} recommended",
            LowSampleCountWarning,
            stacklevel=2,
        )
    if table is None:
        table = PatternFunctionTable.for_cutoff(cutoff)
    elif table.cutoff != cutoff:
        raise TomographyError(f"pattern-function table is for cutoff {table.cutoff}, not {cutoff}")

    offsets = (np.arange(d)[:, None] - np.arange(d)[None, :])[:, :, None]
    total = np.zeros((d, d), dtype=complex)
    squares_re = np.zeros((d, d))
    squares_im = np.zeros((d, d))
    for start in range(0, count, CHUNK_SIZE):
        thetas = data.thetas[start:start + CHUNK_SIZE]
        kernel = table.evaluate(data.values[start:start + CHUNK_SIZE]) * np.exp(1j * offsets * thetas)
        total += kernel.sum(axis=2)
        squares_re += (kernel.real ** 2).sum(axis=2)
        squares_im += (kernel.imag ** 2).sum(axis=2)

    mean = total / count
    variance = squares_re / count - mean.real ** 2 + squares_im / count - mean.imag ** 2
    if count > 1:
        variance *= count / (count - 1)
    errors = np.sqrt(np.clip(variance, 0.0, None) / count)

    rho_hat = DensityMatrix(ModeLayout(1, cutoff), hermitize(mean), settings)
    if correct_loss_eta is not None:
        rho_hat = loss_correct(rho_hat, correct_loss_eta)
    return ReconstructedState(rho_hat, errors, count)


def loss_correct(rho_hat, eta, floor=LOSS_CORRECTION_FLOOR):
    """Undo a loss channel of transmission eta.

    The inverse map can leave negative eigenvalues on noisy input; they are
    reported with NonPhysicalStateWarning and kept.
    """
    eta = check_unit_interval(eta, 'eta')
    if eta < floor:
        raise TomographyError(f"loss correction below eta={floor} is ill-conditioned (got {eta})")
    if eta == 1.0:
        return rho_hat
    corrected = binomial_element_map(rho_hat, 0, 1.0 / math.sqrt(eta), 1.0 - 1.0 / eta)
    lowest = corrected.min_eigenvalue()
    if lowest < NON_PHYSICAL_EIGENVALUE:
        warnings.warn(
            f"loss-corrected state has eigenvalue {lowest:.3e}",
            NonPhysicalStateWarning,
            stacklevel=2,
        )
    return corrected
