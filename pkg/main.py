#!/usr/bin/env python3
"""
Quantum-scissors teleportation simulator - main application.
Runs fidelity sweeps, source-phase sweeps, tomography round trips and single
runs, and writes plot-ready CSV or JSON tables.
"""

import argparse
import sys

from cli import TOOL_NAME, __version__
from cli.commands import COMMAND_RUNNERS
from cli.run_config import COMMANDS, FORMATS, build_run_config
from utils.helpers import (
    ConfigurationError,
    NoTeleportationEventError,
    TomographyError,
    TruncationError,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

FLAG_KEYS = (
    'command', 'alpha', 'alpha_phase', 'alpha_start', 'alpha_stop', 'alpha_step', 'phi_steps',
    'eta_one', 'eta_spd', 'eta_hd', 'mode_match', 'cutoff', 'seed', 'samples', 'theta_steps',
    'tomography_cutoff', 'histogram_bins', 'out', 'format',
)


class ScissorsSimulator:
    """Main application class: loads the configuration and runs one command."""

    def __init__(self, quiet=False):
        self.quiet = quiet
        self.config = None

    def echo(self, message):
        if not self.quiet:
            print(message)

    def configure(self, overrides, config_path=None):
        self.echo("⚙️  Loading configuration...")
        self.config = build_run_config(overrides, config_path=config_path)
        params = self.config.params
        self.echo(
            f"✅ {self.config.command}: eta_one={params.eta_one}, eta_spd={params.eta_spd}, "
            f"eta_hd={params.eta_hd}, M={params.mode_match}, cutoff>={self.config.cutoff}"
        )
        return self.config

    def run(self):
        if not self.config:
            raise ConfigurationError("simulator is not configured")
        self.echo(f"\n🚀 Running {self.config.command}...")
        return COMMAND_RUNNERS[self.config.command](self.config, echo=self.echo)


def build_parser():
    parser = argparse.ArgumentParser(
        description=f"{TOOL_NAME} {__version__} - quantum-scissors teleportation simulator",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Fidelity against |alpha| with the fitted parameters
  python main.py --command fidelity-sweep --alpha-start 0 --alpha-stop 2 --alpha-step 0.05

  # Bob's quadrature statistics as the source phase turns
  python main.py --command phase-sweep --alpha 0.5 --phi-steps 36 --format json

  # Synthetic homodyne tomography at 20000 samples
  python main.py --command tomography-roundtrip --samples 20000 --seed 7

  # Re-run a previous result from its header
  python main.py --config results/fidelity_sweep.csv --out rerun.csv
        """
    )

    parser.add_argument('--command', choices=COMMANDS, help='What to run (default: fidelity-sweep)')
    parser.add_argument('--config', metavar='PATH', help='Extra configuration file (.json or key = value)')

    source = parser.add_argument_group('source')
    source.add_argument('--alpha', type=float, help='|alpha| for single-amplitude commands')
    source.add_argument('--alpha-phase', type=float, help='Phase of alpha in radians')
    source.add_argument('--alpha-start', type=float, help='First |alpha| of the sweep grid')
    source.add_argument('--alpha-stop', type=float, help='Last |alpha| of the sweep grid')
    source.add_argument('--alpha-step', type=float, help='Grid spacing in |alpha|')
    source.add_argument('--phi-steps', type=int, help='Source phases over [0, 2pi) for phase-sweep')

    setup = parser.add_argument_group('setup')
    setup.add_argument('--eta-one', type=float, help='Single-photon preparation efficiency')
    setup.add_argument('--eta-spd', type=float, help='Single-photon detector efficiency')
    setup.add_argument('--eta-hd', type=float, help='Homodyne detection efficiency')
    setup.add_argument('--mode-match', type=float, help='Mode matching factor M')
    setup.add_argument('--cutoff', type=int, help='Fock cutoff floor (raised automatically for large |alpha|)')

    tomography = parser.add_argument_group('tomography')
    tomography.add_argument('--seed', type=int, help='Random seed for quadrature sampling')
    tomography.add_argument('--samples', type=int, help='Total number of quadrature samples')
    tomography.add_argument('--theta-steps', type=int, help='Local-oscillator phases over [0, pi)')
    tomography.add_argument('--tomography-cutoff', type=int, help='Cutoff of the reconstructed matrix')
    tomography.add_argument('--histogram-bins', type=int, help='Quadrature histogram bins for phase-sweep')

    output = parser.add_argument_group('output')
    output.add_argument('--out', metavar='PATH', help='Output file (default: results/<command>.<format>)')
    output.add_argument('--format', choices=FORMATS, help='Output format (default: csv)')
    output.add_argument('--quiet', action='store_true', help='Suppress progress messages')
    return parser


def main(argv=None):
    """Command line entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)
    overrides = {key: getattr(args, key) for key in FLAG_KEYS}
    simulator = ScissorsSimulator(quiet=args.quiet)

    try:
        simulator.configure(overrides, config_path=args.config)
        path = simulator.run()
    except (ConfigurationError, TomographyError) as exc:
        print(f"❌ Configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NoTeleportationEventError, TruncationError) as exc:
        print(f"❌ Numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"❌ Cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO

    simulator.echo(f"\n✅ Done: {path}")
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
