import unittest
import sys
import os
import math
from dataclasses import replace

import numpy as np

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..'))

from fock_core import required_cutoff
from optics import loss_channel
from protocol import (
    ProtocolParams,
    working_cutoff,
    quantum_branch,
    quantum_branch_ideal,
    semiclassical_statistics,
    semiclassical_branch,
    combine_branches,
    bob_ensemble,
    unconditioned_bob,
    fidelity_point,
    fidelity_vs_alpha,
    phase_sweep,
    mean_quadrature_fit,
    source_fidelity,
)
from utils.helpers import ConfigurationError, TruncationError, SimulationSettings

FITTED = ProtocolParams(alpha=0.5, eta_one=0.9, eta_spd=0.5, eta_hd=0.54, mode_match=0.56)


def closed_form_quantum(params):
    """Unnormalized Bob state (rho00, rho01, rho11) for click/no-click detectors."""
    alpha = params.alpha
    b = abs(alpha) ** 2 / 2
    eta1 = params.eta_one
    eta = params.eta_spd
    x = 1 - eta
    e = math.exp(-eta * b)
    rho11 = (eta1 / 2) * (1 - e) * e
    rho01 = eta1 * eta * alpha.conjugate() * e / 4
    rho00 = (1 - eta1) * (1 - e) * e + (eta1 / 4) * (e * (1 + x + b * eta ** 2) - 2 * x * e ** 2)
    return rho00, rho01, rho11


class TestProtocolParams(unittest.TestCase):

    def test_defaults_are_fitted_values(self):
        params = ProtocolParams()
        self.assertEqual((params.eta_one, params.eta_spd, params.eta_hd, params.mode_match), (0.9, 0.5, 0.54, 0.56))

    def test_ranges_enforced(self):
        with self.assertRaises(ConfigurationError):
            ProtocolParams(eta_hd=1.2)
        with self.assertRaises(ConfigurationError):
            ProtocolParams(mode_match=-0.1)
        with self.assertRaises(ConfigurationError):
            ProtocolParams(alpha=complex('nan'))

    def test_from_polar(self):
        params = ProtocolParams.from_polar(0.5, math.pi / 2)
        self.assertAlmostEqual(params.alpha, 0.5j, places=15)
        with self.assertRaises(ConfigurationError):
            ProtocolParams.from_polar(-1.0)

    def test_working_cutoff(self):
        self.assertEqual(working_cutoff(FITTED), 12)
        large = FITTED.with_alpha(2.0)
        self.assertEqual(working_cutoff(large), required_cutoff(2.0, 1e-10) + 1)
        with self.assertRaises(TruncationError):
            working_cutoff(large, SimulationSettings(auto_cutoff=False))


class TestQuantumBranch(unittest.TestCase):

    def test_vacuum_source_is_teleported_exactly(self):
        for params in (FITTED.with_alpha(0), ProtocolParams(alpha=0, eta_one=0.3, eta_spd=0.8)):
            result = quantum_branch(params)
            self.assertEqual(result.branch_tag, 'quantum')
            self.assertAlmostEqual(result.rho.elements[0, 0].real, 1.0, places=12)
            self.assertAlmostEqual(np.abs(result.rho.elements).sum(), 1.0, places=12)
            self.assertAlmostEqual(result.probability, params.eta_one * params.eta_spd / 4, places=12)

    def test_matches_closed_form(self):
        for alpha in (0.5, 0.3 + 0.4j, 0.6j):
            params = FITTED.with_alpha(alpha)
            result = quantum_branch(params)
            rho = result.rho.elements * result.probability
            rho00, rho01, rho11 = closed_form_quantum(params)
            self.assertAlmostEqual(rho[0, 0].real, rho00, places=12)
            self.assertAlmostEqual(rho[1, 1].real, rho11, places=12)
            self.assertAlmostEqual(rho[0, 1], rho01, places=12)
            self.assertAlmostEqual(result.probability, rho00 + rho11, places=12)
            self.assertLess(np.abs(rho[2:, :]).max(), 1e-12)

    def test_ideal_branch_fidelity(self):
        result = quantum_branch_ideal(FITTED.with_alpha(1.0))
        self.assertAlmostEqual(source_fidelity(result.rho, 1.0), 2 * math.exp(-1), places=9)
        self.assertAlmostEqual(result.rho.elements[1, 1].real, 0.5, places=12)

    def test_ideal_branch_single_photon_fraction(self):
        for alpha in (0.2, 0.7, 1.5):
            rho = quantum_branch_ideal(FITTED.with_alpha(alpha)).rho
            lam = alpha ** 2
            self.assertAlmostEqual(rho.elements[1, 1].real, lam / (1 + lam), places=12)
            self.assertLess(rho.diagonal()[2:].sum(), 1e-12)


class TestSemiclassicalBranch(unittest.TestCase):

    def test_vacuum_source_with_perfect_devices(self):
        stats = semiclassical_statistics(ProtocolParams(alpha=0, eta_one=1.0, eta_spd=1.0))
        self.assertAlmostEqual(stats.p_tel, 0.25, places=15)
        self.assertEqual(stats.p_out, 0.0)

    def test_no_epr_photon(self):
        stats = semiclassical_statistics(ProtocolParams(alpha=0.5, eta_one=0.0, eta_spd=0.5))
        self.assertEqual(stats.p_out, 0.0)
        self.assertGreater(stats.p_tel, 0.0)

    def test_poisson_closed_form(self):
        """Sums over the Poisson distribution are exponentials."""
        for alpha, eta1, eta in ((0.5, 0.9, 0.5), (1.3, 0.7, 0.8), (2.0, 1.0, 0.2)):
            params = ProtocolParams(alpha=alpha, eta_one=eta1, eta_spd=eta)
            lam = alpha ** 2
            herald = math.exp(-lam * eta / 2) - math.exp(-lam * eta)
            herald_extra = (1 - eta / 2) * math.exp(-lam * eta / 2) - (1 - eta) * math.exp(-lam * eta)
            p_tel = (1 - eta1 / 2) * herald + (eta1 / 2) * herald_extra
            stats = semiclassical_statistics(params)
            self.assertAlmostEqual(stats.p_tel, p_tel, delta=1e-10)
            self.assertAlmostEqual(stats.p_out, (eta1 / 2) * herald / p_tel, delta=1e-9)

    def test_branch_is_diagonal(self):
        result = semiclassical_branch(FITTED)
        stats = semiclassical_statistics(FITTED)
        self.assertEqual(result.branch_tag, 'semiclassical')
        self.assertEqual(result.rho.layout.cutoff, working_cutoff(FITTED))
        np.testing.assert_allclose(result.rho.elements, np.diag(result.rho.diagonal()))
        self.assertAlmostEqual(result.rho.elements[1, 1].real, stats.p_out, places=15)

    def test_phase_independent(self):
        first = semiclassical_branch(FITTED.with_alpha(0.5))
        second = semiclassical_branch(FITTED.with_alpha(0.5j))
        np.testing.assert_allclose(first.rho.elements, second.rho.elements, atol=1e-15)


class TestBobEnsemble(unittest.TestCase):

    def test_full_mode_matching_is_quantum_branch(self):
        params = replace(FITTED, mode_match=1.0)
        expected = loss_channel(quantum_branch(params).rho, params.eta_hd)
        np.testing.assert_allclose(bob_ensemble(params).rho.elements, expected.elements, atol=1e-12)

    def test_no_mode_matching_is_semiclassical_branch(self):
        params = replace(FITTED, mode_match=0.0)
        expected = loss_channel(semiclassical_branch(params).rho, params.eta_hd)
        np.testing.assert_allclose(bob_ensemble(params).rho.elements, expected.elements, atol=1e-12)

    def test_loss_commutes_with_mixing(self):
        quantum = quantum_branch(FITTED)
        classical = semiclassical_branch(FITTED)
        mixed = combine_branches(FITTED, quantum, classical)
        w_q = FITTED.mode_match * quantum.probability
        w_sc = (1 - FITTED.mode_match) * classical.probability
        per_branch = (
            w_q * loss_channel(quantum.rho, FITTED.eta_hd).elements
            + w_sc * loss_channel(classical.rho, FITTED.eta_hd).elements
        ) / (w_q + w_sc)
        np.testing.assert_allclose(mixed.rho.elements, per_branch, atol=1e-12)
        self.assertAlmostEqual(mixed.probability, w_q + w_sc, places=15)
        self.assertEqual(mixed.branch_tag, 'mixed')

    def test_unit_trace(self):
        self.assertAlmostEqual(bob_ensemble(FITTED).rho.trace, 1.0, places=12)

    def test_unconditioned_single_photon_fraction(self):
        for eta_one, eta_hd in ((1.0, 1.0), (0.9, 0.54), (0.7, 0.7), (0.0, 0.54)):
            rho = unconditioned_bob(replace(FITTED, eta_one=eta_one, eta_hd=eta_hd))
            self.assertAlmostEqual(rho.elements[1, 1].real, eta_one * eta_hd / 2, places=12)
            self.assertAlmostEqual(rho.elements[0, 0].real, 1 - eta_one * eta_hd / 2, places=12)
            self.assertLess(np.abs(rho.elements - np.diag(rho.diagonal())).max(), 1e-12)


class TestSweeps(unittest.TestCase):

    def test_vacuum_row(self):
        row = fidelity_point(FITTED, 0.0)
        self.assertTrue(row.ok)
        for value in (row.f_mixed, row.f_ideal, row.f_semiclassical):
            self.assertAlmostEqual(value, 1.0, places=9)

    def test_results_in_grid_order(self):
        grid = [0.0, 0.3, 0.6, 0.9]
        results = fidelity_vs_alpha(FITTED, grid, max_workers=3)
        self.assertEqual([r.alpha for r in results], [complex(a) for a in grid])
        ideal = [r.f_ideal for r in results]
        self.assertEqual(ideal, sorted(ideal, reverse=True))

    def test_empty_grid(self):
        with self.assertRaises(ConfigurationError):
            fidelity_vs_alpha(FITTED, [])

    def test_failed_point_is_recorded(self):
        params = replace(FITTED, eta_one=0.0, mode_match=1.0)
        row = fidelity_point(params, 0.0)
        self.assertFalse(row.ok)
        self.assertIn('no valid teleportation branch', row.error)
        self.assertTrue(math.isnan(row.p_tel))
        self.assertAlmostEqual(row.f_ideal, 1.0, places=12)

    def test_phase_periodicity(self):
        first, second = phase_sweep(FITTED, [0.7, 0.7 + 2 * math.pi])
        np.testing.assert_allclose(first.rho_bob.elements, second.rho_bob.elements, atol=1e-12)

    def test_quadrature_fit(self):
        phis = np.linspace(0, 2 * np.pi, 13)[:-1]
        fit = mean_quadrature_fit(phis, 0.3 * np.cos(phis + 0.4))
        self.assertAlmostEqual(fit.amplitude, 0.3, places=12)
        self.assertAlmostEqual(fit.phase_offset, 0.4, places=12)
        self.assertLess(fit.relative_residual, 1e-12)

        flat = mean_quadrature_fit(phis, np.zeros_like(phis))
        self.assertEqual(flat.amplitude, 0.0)
        self.assertEqual(flat.relative_residual, 0.0)


if __name__ == '__main__':
    unittest.main()
