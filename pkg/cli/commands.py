"""
The four commands of the front end. Each one computes its table, writes it
through ResultWriter and returns the output path; progress goes to `echo`.
"""

import math
import os

import numpy as np

from fock_core import DensityMatrix, ModeLayout, fidelity_mixed, normalize
from homodyne import (
    default_theta_schedule,
    mean_photon_number,
    quadrature_histogram,
    quadrature_moments,
    reconstruct,
    sample_quadratures,
    split_samples,
)
from protocol import (
    bob_ensemble,
    fidelity_point,
    fidelity_vs_alpha,
    mean_quadrature_fit,
    phase_sweep,
    semiclassical_statistics,
    source_fidelity,
    working_cutoff,
)
from utils.helpers import ConfigurationError, check_positive_int
from .writers import ResultTable, ResultWriter

THREADS_ENV = 'SCISSORS_SIM_THREADS'
HISTOGRAM_RANGE = 6.0


def _silent(*_args, **_kwargs):
    pass


def resolve_worker_count(environ=None):
    """Worker threads for sweeps: SCISSORS_SIM_THREADS, else the CPU count."""
    environ = os.environ if environ is None else environ
    raw = environ.get(THREADS_ENV, '').strip()
    if not raw:
        return os.cpu_count() or 1
    try:
        count = int(raw)
    except ValueError:
        raise ConfigurationError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return check_positive_int(count, THREADS_ENV)


def _write(config, table, echo):
    path = ResultWriter(config.output_path, config.output_format).write(table)
    echo(f"📝 Results saved: {path}")
    return path


def run_fidelity_sweep(config, echo=_silent):
    template = config.params
    settings = config.settings
    magnitudes = config.grid.values()
    grid = [magnitude * complex(math.cos(config.alpha_phase), math.sin(config.alpha_phase)) for magnitude in magnitudes]

    echo(f"📊 Fidelity sweep over {len(grid)} amplitudes in [{magnitudes[0]}, {magnitudes[-1]}]")
    results = fidelity_vs_alpha(template, grid, settings, max_workers=resolve_worker_count())

    table = ResultTable(
        command=config.command,
        columns=[
            ('alpha_magnitude', '|alpha| of the coherent source'),
            ('alpha_phase', 'phase of alpha in radians'),
            ('f_mixed', 'fidelity of the mode-matched mixture after homodyne loss'),
            ('f_ideal', 'fidelity with a perfect photon source and number-resolving detectors'),
            ('f_semiclassical', 'fidelity of the particle model after homodyne loss'),
            ('p_tel', 'heralding probability of the quantum branch'),
            ('p_tel_sc', 'heralding probability of the particle model'),
            ('error', 'empty, or why a point produced nan'),
        ],
        config=config.to_mapping(),
    )
    for magnitude, result in zip(magnitudes, results):
        table.add_row(
            magnitude, config.alpha_phase, result.f_mixed, result.f_ideal,
            result.f_semiclassical, result.p_tel, result.p_tel_sc, result.error or '',
        )

    failures = [result for result in results if not result.ok]
    for result in failures:
        echo(f"❌ |alpha|={abs(result.alpha):.4g}: {result.error}")
    gaps = [r.f_mixed - r.f_semiclassical for r in results if r.ok and abs(r.alpha) > 0]
    table.summary = {
        'points': len(results),
        'failed_points': len(failures),
        'max_working_cutoff': max(working_cutoff(template.with_alpha(a), settings) for a in grid),
        'min_quantum_advantage': min(gaps) if gaps else float('nan'),
    }
    echo(f"✅ {len(results) - len(failures)}/{len(results)} points computed")
    return _write(config, table, echo)


def run_phase_sweep(config, echo=_silent):
    template = config.params
    phis = [2.0 * math.pi * k / config.phi_steps for k in range(config.phi_steps)]
    edges = np.linspace(-HISTOGRAM_RANGE, HISTOGRAM_RANGE, config.histogram_bins + 1)

    echo(f"📊 Phase sweep at |alpha|={config.alpha} over {len(phis)} source phases")
    points = phase_sweep(template, phis, config.settings, max_workers=resolve_worker_count())

    bins = [(f"p_bin_{k}", f"P({edges[k]:.6g} <= x < {edges[k + 1]:.6g}) at LO phase 0")
            for k in range(config.histogram_bins)]
    table = ResultTable(
        command=config.command,
        columns=[
            ('phi', 'source phase in radians'),
            ('mean_x', 'mean of x at LO phase 0'),
            ('second_moment_x', '<x^2> at LO phase 0'),
            ('var_x', 'variance of x at LO phase 0'),
            ('mean_photon_number', '<n> of Bob\'s state'),
        ] + bins,
        config=config.to_mapping(),
    )
    means = []
    for point in points:
        mean, second, variance = quadrature_moments(point.rho_bob, 0.0)
        histogram = quadrature_histogram(point.rho_bob, 0.0, edges)
        means.append(mean)
        table.add_row(point.phi, mean, second, variance, mean_photon_number(point.rho_bob), *histogram)

    fit = mean_quadrature_fit(phis, means)
    table.summary = {
        'fit_amplitude': fit.amplitude,
        'fit_phase_offset': fit.phase_offset,
        'fit_relative_residual': fit.relative_residual,
    }
    echo(f"✅ Mean quadrature follows A cos(phi + phi0) with A={fit.amplitude:.6g}")
    return _write(config, table, echo)


def resize(rho, cutoff):
    """Single-mode state cut down or zero-padded to a new cutoff."""
    d = min(rho.layout.local_dim, cutoff + 1)
    elements = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    elements[:d, :d] = rho.elements[:d, :d]
    return DensityMatrix(ModeLayout(1, cutoff), elements, rho.settings)


def run_tomography_roundtrip(config, echo=_silent):
    params = config.params
    settings = config.settings
    counts = split_samples(config.samples, config.theta_steps)

    rho_bob = bob_ensemble(params, settings).rho
    echo(f"📊 Sampling {config.samples} quadratures at {config.theta_steps} LO phases")
    data = sample_quadratures(rho_bob, default_theta_schedule(config.theta_steps), counts, config.seed)
    estimate = reconstruct(data, config.tomography_cutoff, settings=settings)

    truth = resize(rho_bob, config.tomography_cutoff)
    f_true = source_fidelity(rho_bob, params.alpha, settings)
    f_reconstructed = source_fidelity(normalize(resize(estimate.rho_hat, rho_bob.layout.cutoff)), params.alpha, settings)

    table = ResultTable(
        command=config.command,
        columns=[
            ('m', 'row index'),
            ('n', 'column index'),
            ('true_re', 'Re rho_mn of the simulated state'),
            ('true_im', 'Im rho_mn of the simulated state'),
            ('est_re', 'Re of the reconstructed element'),
            ('est_im', 'Im of the reconstructed element'),
            ('std_err', 'standard error of the estimate'),
            ('abs_error', '|estimate - true|'),
        ],
        config=config.to_mapping(),
    )
    d = config.tomography_cutoff + 1
    for m in range(d):
        for n in range(d):
            true_value = truth.elements[m, n]
            estimate_value = estimate.rho_hat.elements[m, n]
            table.add_row(
                m, n, true_value.real, true_value.imag, estimate_value.real, estimate_value.imag,
                estimate.standard_errors[m, n], abs(estimate_value - true_value),
            )

    table.summary = {
        'sample_count': estimate.sample_count,
        'state_fidelity': fidelity_mixed(estimate.rho_hat, truth),
        'source_fidelity_true': f_true,
        'source_fidelity_reconstructed': f_reconstructed,
        'source_fidelity_difference': abs(f_reconstructed - f_true),
        'trace_estimate': estimate.rho_hat.trace,
        'trace_standard_error': estimate.trace_standard_error,
    }
    echo(f"✅ Reconstruction fidelity {table.summary['state_fidelity']:.6f}")
    return _write(config, table, echo)


def run_single_shot(config, echo=_silent):
    params = config.params
    settings = config.settings
    echo(f"📊 Single run at alpha={params.alpha:.6g}")

    point = fidelity_point(params, params.alpha, settings)
    mixed = bob_ensemble(params, settings)
    stats = semiclassical_statistics(params, settings)

    table = ResultTable(
        command=config.command,
        columns=[
            ('m', 'row index'),
            ('n', 'column index'),
            ('re', 'Re rho_mn of Bob\'s state after homodyne loss'),
            ('im', 'Im rho_mn of Bob\'s state after homodyne loss'),
        ],
        config=config.to_mapping(),
    )
    d = mixed.rho.layout.local_dim
    for m in range(d):
        for n in range(d):
            value = mixed.rho.elements[m, n]
            table.add_row(m, n, value.real, value.imag)

    table.summary = {
        'working_cutoff': mixed.rho.layout.cutoff,
        'p_tel': point.p_tel,
        'p_tel_sc': point.p_tel_sc,
        'p_out_sc': stats.p_out,
        'p_mixed': mixed.probability,
        'f_mixed': point.f_mixed,
        'f_ideal': point.f_ideal,
        'f_semiclassical': point.f_semiclassical,
    }
    echo(f"✅ F_mixed={point.f_mixed:.6f}, p_tel={point.p_tel:.3e}")
    return _write(config, table, echo)


COMMAND_RUNNERS = {
    'fidelity-sweep': run_fidelity_sweep,
    'phase-sweep': run_phase_sweep,
    'tomography-roundtrip': run_tomography_roundtrip,
    'single-shot': run_single_shot,
}
