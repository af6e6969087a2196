"""
Parameter sweeps over the source amplitude: fidelity curves against |alpha|
and Bob's state as the source phase turns.

Grid points are independent; they run on a thread pool and come back in grid
order.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from fock_core import DensityMatrix, coherent_state, fidelity_pure
from optics import loss_channel
from utils.helpers import ConfigurationError, ScissorsError, DEFAULT_SETTINGS
from .branches import quantum_branch, quantum_branch_ideal, semiclassical_branch
from .ensemble import bob_ensemble, combine_branches


@dataclass(frozen=True)
class SweepResult:
    alpha: complex
    f_mixed: float
    f_ideal: float
    f_semiclassical: float
    p_tel: float
    p_tel_sc: float
    error: Optional[str] = None

    @property
    def ok(self):
        return self.error is None


@dataclass(frozen=True)
class PhasePoint:
    phi: float
    rho_bob: DensityMatrix


@dataclass(frozen=True)
class QuadratureFit:
    """means ~ amplitude * cos(phi + phase_offset)."""

    amplitude: float
    phase_offset: float
    relative_residual: float


def source_fidelity(rho, alpha, settings=DEFAULT_SETTINGS):
    """Overlap with the coherent state |alpha>, padded to rho's cutoff."""
    return fidelity_pure(rho, coherent_state(alpha, rho.layout, settings), settings)


def _evaluate(compute, errors, label):
    try:
        return compute()
    except ScissorsError as exc:
        errors.append(f"{label}: {exc}")
        return None


def fidelity_point(template, alpha, settings=DEFAULT_SETTINGS):
    """All three fidelities and both heralding probabilities at one alpha.

    Failures are recorded in `error` and leave NaN in the affected columns.
    """
    params = template.with_alpha(alpha)
    errors = []
    nan = float('nan')

    quantum = _evaluate(lambda: quantum_branch(params, settings), errors, 'quantum')
    semiclassical = _evaluate(lambda: semiclassical_branch(params, settings), errors, 'semiclassical')
    ideal = _evaluate(lambda: quantum_branch_ideal(params, settings), errors, 'ideal')

    mixed = None
    if quantum is not None or semiclassical is not None:
        mixed = _evaluate(lambda: combine_branches(params, quantum, semiclassical, settings), errors, 'mixed')

    def fidelity_of(rho):
        if rho is None:
            return nan
        value = _evaluate(lambda: source_fidelity(rho, params.alpha, settings), errors, 'fidelity')
        return nan if value is None else value

    return SweepResult(
        alpha=params.alpha,
        f_mixed=fidelity_of(mixed.rho if mixed else None),
        f_ideal=fidelity_of(ideal.rho if ideal else None),
        f_semiclassical=fidelity_of(loss_channel(semiclassical.rho, params.eta_hd) if semiclassical else None),
        p_tel=quantum.probability if quantum else nan,
        p_tel_sc=semiclassical.probability if semiclassical else nan,
        error='; '.join(errors) or None,
    )


def _run_ordered(task, grid, max_workers):
    if max_workers is not None and max_workers < 1:
        raise ConfigurationError(f"max_workers must be positive, got {max_workers}")
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(task, grid))


def fidelity_vs_alpha(template, alpha_grid, settings=DEFAULT_SETTINGS, max_workers=None):
    grid = [complex(alpha) for alpha in alpha_grid]
    if not grid:
        raise ConfigurationError("alpha grid is empty")
    return _run_ordered(lambda alpha: fidelity_point(template, alpha, settings), grid, max_workers)


def phase_sweep(template, phi_grid, settings=DEFAULT_SETTINGS, max_workers=None):
    """Bob's state for source amplitude |alpha| e^{i phi} at each phi."""
    grid = [float(phi) for phi in phi_grid]
    if not grid:
        raise ConfigurationError("phase grid is empty")
    magnitude = abs(template.alpha)

    def point(phi):
        params = template.with_alpha(magnitude * complex(math.cos(phi), math.sin(phi)))
        return PhasePoint(phi, bob_ensemble(params, settings).rho)

    return _run_ordered(point, grid, max_workers)


def mean_quadrature_fit(phis, means):
    """Least-squares fit of A cos(phi + phi0) with A >= 0.

    The residual is the largest absolute deviation divided by A (inf when
    A is zero and the data are not).
    """
    phis = np.asarray(phis, dtype=float)
    means = np.asarray(means, dtype=float)
    if phis.shape != means.shape or phis.size < 2:
        raise ConfigurationError("need at least two (phi, mean) pairs of equal length")

    design = np.column_stack([np.cos(phis), np.sin(phis)])
    (c, s), *_ = np.linalg.lstsq(design, means, rcond=None)
    amplitude = float(math.hypot(c, s))
    offset = float(math.atan2(-s, c))
    worst = float(np.max(np.abs(design @ np.array([c, s]) - means)))

    if amplitude > 0.0:
        residual = worst / amplitude
    else:
        residual = 0.0 if worst == 0.0 else math.inf
    return QuadratureFit(amplitude, offset, residual)
