import unittest
import sys
import os
import io
import math
import tempfile
import shutil
from contextlib import redirect_stderr
from dataclasses import replace

import numpy as np

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..'))

from fock_core import ModeLayout, DensityMatrix, coherent_state, number_state
from homodyne import QuadratureDataset, reconstruct, loss_correct, PatternFunctionTable
from protocol import (
    ProtocolParams,
    BranchResult,
    working_cutoff,
    quantum_branch,
    semiclassical_statistics,
    combine_branches,
    bob_ensemble,
    fidelity_vs_alpha,
    mean_quadrature_fit,
)
from cli.run_config import build_run_config
from cli.commands import run_fidelity_sweep
from main import main, EXIT_CONFIG
from utils.helpers import (
    ScissorsError,
    ConfigurationError,
    TruncationError,
    NoTeleportationEventError,
    TomographyError,
    SimulationSettings,
)

FITTED = ProtocolParams(alpha=0.5, eta_one=0.9, eta_spd=0.5, eta_hd=0.54, mode_match=0.56)


class TestErrorHierarchy(unittest.TestCase):

    def test_all_errors_share_a_base(self):
        for error in (ConfigurationError, TruncationError, NoTeleportationEventError, TomographyError):
            self.assertTrue(issubclass(error, ScissorsError))

    def test_no_teleportation_error_carries_probability(self):
        error = NoTeleportationEventError(1e-20, 1e-15)
        self.assertEqual(error.probability, 1e-20)
        self.assertIn('no valid teleportation branch', str(error))


class TestProtocolBoundaries(unittest.TestCase):

    def test_blind_detectors(self):
        params = replace(FITTED, eta_spd=0.0)
        with self.assertRaises(NoTeleportationEventError):
            quantum_branch(params)
        with self.assertRaises(NoTeleportationEventError):
            semiclassical_statistics(params)
        with self.assertRaises(NoTeleportationEventError):
            bob_ensemble(params)

    def test_missing_branches(self):
        with self.assertRaises(NoTeleportationEventError):
            combine_branches(FITTED, None, None)

    def test_zero_weight_branch_is_dropped(self):
        quantum = quantum_branch(FITTED)
        mixed = combine_branches(replace(FITTED, mode_match=1.0), quantum, None)
        self.assertAlmostEqual(mixed.probability, quantum.probability, places=15)

    def test_unknown_branch_tag(self):
        rho = number_state(0, ModeLayout(1, 1)).to_density_matrix()
        with self.assertRaises(ConfigurationError):
            BranchResult(rho, 0.5, 'classical')

    def test_fixed_cutoff_too_small(self):
        settings = SimulationSettings(cutoff=4, auto_cutoff=False)
        with self.assertRaises(TruncationError):
            working_cutoff(FITTED.with_alpha(1.5), settings)
        with self.assertRaises(TruncationError):
            coherent_state(1.5, ModeLayout(1, 4))

    def test_largest_amplitude_is_supported(self):
        params = FITTED.with_alpha(2.0)
        self.assertGreater(working_cutoff(params), 12)
        self.assertAlmostEqual(bob_ensemble(params).rho.trace, 1.0, places=12)

    def test_perfect_mode_matching_without_photon_source(self):
        results = fidelity_vs_alpha(replace(FITTED, eta_one=0.0, mode_match=1.0), [0.0, 0.5])
        self.assertFalse(results[0].ok)
        self.assertTrue(math.isnan(results[0].f_mixed))
        self.assertTrue(results[1].ok)

    def test_fit_needs_points(self):
        with self.assertRaises(ConfigurationError):
            mean_quadrature_fit([0.0], [1.0])
        with self.assertRaises(ConfigurationError):
            mean_quadrature_fit([0.0, 1.0], [1.0])

    def test_invalid_amplitudes(self):
        with self.assertRaises(ConfigurationError):
            ProtocolParams(alpha=complex('inf'))
        with self.assertRaises(ConfigurationError):
            FITTED.with_alpha(float('nan'))


class TestTomographyBoundaries(unittest.TestCase):

    def test_single_phase_dataset(self):
        data = QuadratureDataset([0.0] * 500, np.linspace(-1, 1, 500), 1)
        with self.assertRaises(TomographyError):
            reconstruct(data, 1)

    def test_table_cutoff_mismatch(self):
        data = QuadratureDataset([0.0, 1.0, 2.0], [0.1, 0.2, 0.3], 1)
        with self.assertRaises(TomographyError):
            reconstruct(data, 2, table=PatternFunctionTable(1))

    def test_loss_correction_range(self):
        rho = number_state(0, ModeLayout(1, 2)).to_density_matrix()
        with self.assertRaises(TomographyError):
            loss_correct(rho, 0.29)
        with self.assertRaises(ConfigurationError):
            loss_correct(rho, 1.5)
        self.assertIs(loss_correct(rho, 1.0), rho)

    def test_non_hermitian_estimate_rejected(self):
        with self.assertRaises(ConfigurationError):
            DensityMatrix(ModeLayout(1, 1), np.array([[1.0, 0.5], [0.0, 0.0]]))


class TestCommandLineBoundaries(unittest.TestCase):

    def setUp(self):
        self.test_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.test_dir)

    def run_main(self, *args):
        with redirect_stderr(io.StringIO()):
            return main(list(args) + ['--quiet'])

    def test_out_of_range_flags(self):
        out = os.path.join(self.test_dir, 'never.csv')
        for flags in (
            ['--eta-one', '1.5'],
            ['--mode-match', '-0.2'],
            ['--alpha-step', '0'],
            ['--alpha-start', '1', '--alpha-stop', '0.5'],
            ['--theta-steps', '0'],
            ['--command', 'tomography-roundtrip', '--theta-steps', '1', '--samples', '100'],
        ):
            self.assertEqual(self.run_main(*flags, '--out', out), EXIT_CONFIG, flags)
        self.assertFalse(os.path.exists(out))

    def test_unknown_key_in_config_file(self):
        path = os.path.join(self.test_dir, 'extra.conf')
        with open(path, 'w', encoding='utf-8') as f:
            f.write("alpha = 0.5\nwavelength = 790e-9\n")
        self.assertEqual(self.run_main('--config', path), EXIT_CONFIG)

    def test_failed_points_are_kept_in_the_table(self):
        out = os.path.join(self.test_dir, 'dark.csv')
        config = build_run_config(
            {'eta_one': 0.0, 'mode_match': 1.0, 'alpha_start': 0.0, 'alpha_stop': 0.0, 'out': out}, base_path=None
        )
        run_fidelity_sweep(config)
        with open(out, encoding='utf-8') as f:
            lines = f.read().splitlines()
        self.assertIn('# summary: failed_points = 1', lines)
        row = lines[-1].split(',')
        self.assertEqual(row[2], 'nan')
        self.assertIn('no valid teleportation branch', lines[-1])


if __name__ == '__main__':
    unittest.main()
