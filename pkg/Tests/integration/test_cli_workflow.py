import unittest
import sys
import os
import io
import csv
import json
import math
import tempfile
import shutil
from contextlib import redirect_stderr

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..'))

from main import main, EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_IO


def read_csv_result(path):
    """(summary dict, header, rows) of a CSV result file."""
    summary, data = {}, []
    with open(path, encoding='utf-8') as f:
        for line in f:
            if line.startswith('# summary:'):
                key, value = line[len('# summary:'):].split('=', 1)
                summary[key.strip()] = value.strip()
            elif not line.startswith('#'):
                data.append(line)
    rows = list(csv.reader(data))
    return summary, rows[0], rows[1:]


class TestCommandLineWorkflow(unittest.TestCase):

    def setUp(self):
        self.test_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.test_dir)

    def path(self, name):
        return os.path.join(self.test_dir, name)

    def run_main(self, *args):
        errors = io.StringIO()
        with redirect_stderr(errors):
            code = main(list(args) + ['--quiet'])
        return code, errors.getvalue()

    def read(self, name):
        with open(self.path(name), 'rb') as f:
            return f.read()

    def test_single_shot_ideal_fidelity(self):
        code, _ = self.run_main('--command', 'single-shot', '--alpha', '1', '--out', self.path('one.csv'))
        self.assertEqual(code, EXIT_OK)
        summary, header, rows = read_csv_result(self.path('one.csv'))
        self.assertAlmostEqual(float(summary['f_ideal']), 0.735759, delta=1e-6)
        self.assertEqual(header, ['m', 'n', 're', 'im'])
        size = int(summary['working_cutoff']) + 1
        self.assertEqual(len(rows), size * size)
        trace = sum(float(re) for m, n, re, _ in rows if m == n)
        self.assertAlmostEqual(trace, 1.0, places=12)

    def test_reruns_are_byte_identical(self):
        sweep = ['--command', 'fidelity-sweep', '--alpha-start', '0', '--alpha-stop', '0.3', '--alpha-step', '0.1']
        self.assertEqual(self.run_main(*sweep, '--out', self.path('first.csv'))[0], EXIT_OK)
        self.assertEqual(self.run_main(*sweep, '--out', self.path('second.csv'))[0], EXIT_OK)
        self.assertEqual(self.read('first.csv'), self.read('second.csv'))

        code, _ = self.run_main('--config', self.path('first.csv'), '--out', self.path('from_header.csv'))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(self.read('first.csv'), self.read('from_header.csv'))

        self.assertEqual(self.run_main(*sweep, '--format', 'json', '--out', self.path('first.json'))[0], EXIT_OK)
        code, _ = self.run_main('--config', self.path('first.json'), '--out', self.path('from_json.json'))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(self.read('first.json'), self.read('from_json.json'))

    def test_sweep_rows(self):
        sweep = ['--command', 'fidelity-sweep', '--alpha-start', '0', '--alpha-stop', '0.3', '--alpha-step', '0.1']
        self.run_main(*sweep, '--out', self.path('sweep.csv'))
        summary, header, rows = read_csv_result(self.path('sweep.csv'))
        self.assertEqual(header[:3], ['alpha_magnitude', 'alpha_phase', 'f_mixed'])
        self.assertEqual([float(row[0]) for row in rows], [0.0, 0.1, 0.2, 0.3])
        self.assertEqual(summary['failed_points'], '0')
        self.assertTrue(all(row[-1] == '' for row in rows))
        self.assertGreater(float(summary['min_quantum_advantage']), 0.0)

    def test_csv_and_json_agree(self):
        common = ['--command', 'single-shot', '--alpha', '0.5', '--alpha-phase', '0.3']
        self.run_main(*common, '--out', self.path('shot.csv'))
        self.run_main(*common, '--format', 'json', '--out', self.path('shot.json'))

        summary, header, rows = read_csv_result(self.path('shot.csv'))
        with open(self.path('shot.json'), encoding='utf-8') as f:
            document = json.load(f)

        self.assertEqual(header, [column['name'] for column in document['columns']])
        self.assertEqual(len(rows), len(document['rows']))
        for csv_row, json_row in zip(rows, document['rows']):
            self.assertEqual([float(value) for value in csv_row], [float(value) for value in json_row])
        for key, value in document['summary'].items():
            self.assertEqual(float(summary[key]), float(value))

    def test_phase_sweep_command(self):
        code, _ = self.run_main(
            '--command', 'phase-sweep', '--phi-steps', '8', '--histogram-bins', '10', '--out', self.path('phase.csv')
        )
        self.assertEqual(code, EXIT_OK)
        summary, header, rows = read_csv_result(self.path('phase.csv'))
        self.assertEqual(len(rows), 8)
        self.assertEqual(header[-1], 'p_bin_9')
        self.assertLess(float(summary['fit_relative_residual']), 1e-6)
        self.assertGreater(float(summary['fit_amplitude']), 0.0)
        for row in rows:
            self.assertAlmostEqual(sum(float(value) for value in row[5:]), 1.0, places=5)

    def test_tomography_command(self):
        code, _ = self.run_main(
            '--command', 'tomography-roundtrip', '--samples', '2400', '--seed', '3', '--format', 'json',
            '--out', self.path('tomo.json'),
        )
        self.assertEqual(code, EXIT_OK)
        with open(self.path('tomo.json'), encoding='utf-8') as f:
            document = json.load(f)
        self.assertEqual(document['summary']['sample_count'], 2400)
        self.assertEqual(len(document['rows']), 4)
        self.assertEqual(document['config']['tomography_cutoff'], 1)
        self.assertNotIn('out', document['config'])

    def test_tomography_uses_every_requested_sample(self):
        code, _ = self.run_main(
            '--command', 'tomography-roundtrip', '--samples', '1201', '--seed', '3', '--format', 'json',
            '--out', self.path('uneven.json'),
        )
        self.assertEqual(code, EXIT_OK)
        with open(self.path('uneven.json'), encoding='utf-8') as f:
            document = json.load(f)
        self.assertEqual(document['summary']['sample_count'], 1201)

    def test_zero_samples_is_a_configuration_error(self):
        code, errors = self.run_main('--command', 'tomography-roundtrip', '--samples', '0', '--out', self.path('x.csv'))
        self.assertEqual(code, EXIT_CONFIG)
        self.assertIn('❌', errors)
        self.assertFalse(os.path.exists(self.path('x.csv')))

    def test_unwritable_output(self):
        with open(self.path('blocker'), 'w', encoding='utf-8') as f:
            f.write('not a directory')
        code, errors = self.run_main('--command', 'single-shot', '--out', self.path(os.path.join('blocker', 'out.csv')))
        self.assertEqual(code, EXIT_IO)
        self.assertIn('Cannot write output', errors)

    def test_no_heralding_events(self):
        code, errors = self.run_main('--command', 'single-shot', '--eta-spd', '0', '--out', self.path('dark.csv'))
        self.assertEqual(code, EXIT_NUMERICAL)
        self.assertIn('no valid teleportation branch', errors)
        self.assertFalse(os.path.exists(self.path('dark.csv')))

    def test_cutoff_is_raised_for_large_amplitudes(self):
        code, _ = self.run_main('--command', 'single-shot', '--alpha', '2', '--cutoff', '4', '--out', self.path('big.csv'))
        self.assertEqual(code, EXIT_OK)
        summary, _, _ = read_csv_result(self.path('big.csv'))
        self.assertGreater(int(summary['working_cutoff']), 12)
        self.assertFalse(math.isnan(float(summary['f_mixed'])))


if __name__ == '__main__':
    unittest.main()
