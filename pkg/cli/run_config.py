"""
Run configuration: built-in defaults, the root config.json, an optional extra
file and command-line overrides, merged in that order and validated once.

Extra files are JSON objects (`.json`) or flat `key = value` text. A result
file written by this tool can be passed back as a config file: its
`# config:` header lines (CSV) or its "config" object (JSON) are read.
"""

import json
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from protocol import ProtocolParams
from utils.helpers import ConfigurationError, SimulationSettings, check_positive_int, check_unit_interval

COMMANDS = ('fidelity-sweep', 'phase-sweep', 'tomography-roundtrip', 'single-shot')
FORMATS = ('csv', 'json')
PROJECT_ROOT = Path(__file__).resolve().parent.parent
DEFAULT_CONFIG_PATH = PROJECT_ROOT / 'config.json'
CONFIG_PREFIX = '# config:'

DEFAULTS = {
    'command': 'fidelity-sweep',
    'alpha': 0.5,
    'alpha_phase': 0.0,
    'alpha_start': 0.0,
    'alpha_stop': 2.0,
    'alpha_step': 0.05,
    'phi_steps': 24,
    'eta_one': 0.9,
    'eta_spd': 0.5,
    'eta_hd': 0.54,
    'mode_match': 0.56,
    'cutoff': 12,
    'seed': 20000,
    'samples': 20000,
    'theta_steps': 12,
    'tomography_cutoff': 1,
    'histogram_bins': 60,
    'out': '',
    'format': 'csv',
}

FIELD_TYPES = {key: type(value) for key, value in DEFAULTS.items()}


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    step: float

    def __post_init__(self):
        for name in ('start', 'stop', 'step'):
            if not math.isfinite(getattr(self, name)):
                raise ConfigurationError(f"alpha grid {name} must be finite")
        if self.step <= 0:
            raise ConfigurationError(f"alpha grid step must be positive, got {self.step}")
        if self.start < 0:
            raise ConfigurationError(f"alpha grid start is a magnitude and must be >= 0, got {self.start}")
        if self.stop < self.start:
            raise ConfigurationError(f"alpha grid stop {self.stop} lies below start {self.start}")

    def values(self):
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [round(self.start + k * self.step, 12) for k in range(count)]


@dataclass(frozen=True)
class RunConfig:
    command: str
    alpha: float
    alpha_phase: float
    grid: GridSpec
    phi_steps: int
    eta_one: float
    eta_spd: float
    eta_hd: float
    mode_match: float
    cutoff: int
    seed: int
    samples: int
    theta_steps: int
    tomography_cutoff: int
    histogram_bins: int
    out: Optional[str]
    output_format: str

    @property
    def params(self):
        """Protocol parameters at the configured single alpha."""
        return ProtocolParams.from_polar(
            self.alpha,
            self.alpha_phase,
            eta_one=self.eta_one,
            eta_spd=self.eta_spd,
            eta_hd=self.eta_hd,
            mode_match=self.mode_match,
        )

    @property
    def settings(self):
        return SimulationSettings(cutoff=self.cutoff)

    @property
    def output_path(self):
        if self.out:
            return self.out
        return os.path.join('results', f"{self.command.replace('-', '_')}.{self.output_format}")

    def to_mapping(self):
        """Every setting except the output path, in a fixed order."""
        mapping = {}
        for key in DEFAULTS:
            if key == 'out':
                continue
            if key == 'format':
                mapping[key] = self.output_format
            elif key.startswith('alpha_') and key != 'alpha_phase':
                mapping[key] = getattr(self.grid, key[len('alpha_'):])
            else:
                mapping[key] = getattr(self, key)
        return mapping


def _coerce(key, value, source):
    if key not in FIELD_TYPES:
        raise ConfigurationError(f"{source}: unknown configuration key '{key}'")
    expected = FIELD_TYPES[key]
    if isinstance(value, bool):
        raise ConfigurationError(f"{source}: '{key}' must be {expected.__name__}, got a boolean")
    try:
        if expected is str:
            return '' if value is None else str(value)
        if expected is int:
            if isinstance(value, float) and not value.is_integer():
                raise ValueError(value)
            return int(value) if not isinstance(value, str) else int(value.strip())
        return float(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{source}: '{key}' must be {expected.__name__}, got {value!r}")


def _parse_flat(text, source, header_only=False):
    mapping = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith(CONFIG_PREFIX):
            line = line[len(CONFIG_PREFIX):].strip()
        elif header_only or not line or line.startswith('#'):
            continue
        if '=' not in line:
            raise ConfigurationError(f"{source}:{number}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split('=', 1))
        mapping[key] = value
    return mapping


def read_config_file(path):
    """Raw key/value mapping from a JSON or flat text configuration file."""
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as exc:
        raise ConfigurationError(f"cannot read configuration file {path}: {exc}")

    if path.suffix.lower() == '.json':
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"{path}: invalid JSON ({exc})")
        if isinstance(data, dict) and isinstance(data.get('config'), dict) and 'rows' in data:
            data = data['config']
        if not isinstance(data, dict):
            raise ConfigurationError(f"{path}: expected a JSON object")
        return data
    return _parse_flat(text, str(path), header_only=path.suffix.lower() == '.csv')


def _merge(target, mapping, source):
    for key, value in mapping.items():
        target[key] = _coerce(key, value, source)


def build_run_config(overrides=None, config_path=None, base_path=DEFAULT_CONFIG_PATH):
    """Defaults < base file (when present) < config_path < overrides."""
    merged = dict(DEFAULTS)
    if base_path is not None and Path(base_path).exists():
        _merge(merged, read_config_file(base_path), str(base_path))
    if config_path is not None:
        _merge(merged, read_config_file(config_path), str(config_path))
    _merge(merged, {k: v for k, v in (overrides or {}).items() if v is not None}, 'command line')
    return validate(merged)


def validate(values):
    if values['command'] not in COMMANDS:
        raise ConfigurationError(f"unknown command {values['command']!r}; choose one of {', '.join(COMMANDS)}")
    if values['format'] not in FORMATS:
        raise ConfigurationError(f"unknown output format {values['format']!r}; choose csv or json")
    if not math.isfinite(values['alpha']) or values['alpha'] < 0:
        raise ConfigurationError(f"alpha is a magnitude and must be finite and >= 0, got {values['alpha']}")
    if not math.isfinite(values['alpha_phase']):
        raise ConfigurationError("alpha_phase must be finite")
    for key in ('phi_steps', 'cutoff', 'theta_steps', 'histogram_bins'):
        check_positive_int(values[key], key)
    for key in ('samples', 'tomography_cutoff', 'seed'):
        check_positive_int(values[key], key, allow_zero=True)
    for key in ('eta_one', 'eta_spd', 'eta_hd', 'mode_match'):
        check_unit_interval(values[key], key)

    grid = GridSpec(values['alpha_start'], values['alpha_stop'], values['alpha_step'])
    return RunConfig(
        command=values['command'],
        alpha=values['alpha'],
        alpha_phase=values['alpha_phase'],
        grid=grid,
        phi_steps=values['phi_steps'],
        eta_one=values['eta_one'],
        eta_spd=values['eta_spd'],
        eta_hd=values['eta_hd'],
        mode_match=values['mode_match'],
        cutoff=values['cutoff'],
        seed=values['seed'],
        samples=values['samples'],
        theta_steps=values['theta_steps'],
        tomography_cutoff=values['tomography_cutoff'],
        histogram_bins=values['histogram_bins'],
        out=values['out'] or None,
        output_format=values['format'],
    )
