"""
Synthetic homodyne data: inverse-CDF sampling of pr(x|theta) on a dense grid,
plus the two-column text format the datasets are stored in.
"""

import csv
import math
import re
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid

from utils.helpers import ConfigurationError, check_positive_int
from .quadratures import quadrature_pdf

CONVENTION = 'vacuum-variance-1/2'
_HEADER = re.compile(r'^#\s*seed=(?P<seed>-?\d+)\s+convention=(?P<convention>\S+)\s*$')


@dataclass(frozen=True, eq=False)
class QuadratureDataset:
    """Homodyne samples: one LO phase (radians, in [0, 2pi)) and one x value each."""

    thetas: np.ndarray
    values: np.ndarray
    source_seed: int
    convention: str = CONVENTION

    def __post_init__(self):
        thetas = np.asarray(self.thetas, dtype=float).reshape(-1)
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if thetas.shape != values.shape:
            raise ConfigurationError("dataset needs one theta per quadrature value")
        if not (np.all(np.isfinite(thetas)) and np.all(np.isfinite(values))):
            raise ConfigurationError("dataset contains non-finite values")
        if np.any(thetas < 0.0) or np.any(thetas >= 2.0 * math.pi):
            raise ConfigurationError("dataset phases must lie in [0, 2pi)")
        if self.convention != CONVENTION:
            raise ConfigurationError(f"unsupported quadrature convention {self.convention!r}")
        thetas.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, 'thetas', thetas)
        object.__setattr__(self, 'values', values)

    @property
    def samples(self):
        return list(zip(self.thetas.tolist(), self.values.tolist()))

    def shifted(self, delta):
        """Same quadrature values with every phase moved by delta (mod 2pi)."""
        thetas = np.mod(self.thetas + delta, 2.0 * math.pi)
        thetas[thetas >= 2.0 * math.pi] = 0.0
        return QuadratureDataset(thetas, self.values, self.source_seed)

    def __len__(self):
        return self.values.size


def default_theta_schedule(steps=12):
    check_positive_int(steps, 'theta steps')
    return [math.pi * k / steps for k in range(steps)]


def split_samples(total, steps):
    """Per-phase counts summing to `total`; the first total % steps phases take one extra draw."""
    check_positive_int(total, 'samples')
    check_positive_int(steps, 'theta steps')
    if total < steps:
        raise ConfigurationError(f"{total} samples cannot cover {steps} LO phases")
    base, extra = divmod(total, steps)
    return [base + 1] * extra + [base] * (steps - extra)


def sample_quadratures(rho, theta_schedule, n_per_theta, seed, x_range=7.0, step=1e-3):
    """Draws from pr(x|theta) for every theta of the schedule.

    `n_per_theta` is one count for all phases or a sequence with one count per phase.
    """
    schedule = [float(theta) for theta in theta_schedule]
    if not schedule:
        raise ConfigurationError("theta schedule is empty")
    if isinstance(n_per_theta, (int, np.integer)) and not isinstance(n_per_theta, bool):
        counts = [int(n_per_theta)] * len(schedule)
    else:
        counts = list(n_per_theta)
        if len(counts) != len(schedule):
            raise ConfigurationError(f"{len(counts)} sample counts for {len(schedule)} LO phases")
    for count in counts:
        check_positive_int(count, 'n_per_theta')

    rng = np.random.default_rng(seed)
    points = int(round(2.0 * x_range / step)) + 1
    grid = np.linspace(-x_range, x_range, points)

    thetas, values = [], []
    for theta, count in zip(schedule, counts):
        density = np.clip(quadrature_pdf(rho, theta, grid), 0.0, None)
        cdf = cumulative_trapezoid(density, grid, initial=0.0)
        cdf /= cdf[-1]
        values.append(np.interp(rng.random(count), cdf, grid))
        thetas.append(np.full(count, theta % (2.0 * math.pi)))
    return QuadratureDataset(np.concatenate(thetas), np.concatenate(values), seed)


def write_dataset(dataset, path):
    with open(path, 'w', newline='', encoding='utf-8') as handle:
        handle.write(f"# seed={dataset.source_seed} convention={dataset.convention}\n")
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(['theta_radians', 'x'])
        for theta, x in zip(dataset.thetas, dataset.values):
            writer.writerow([repr(float(theta)), repr(float(x))])


def read_dataset(path):
    with open(path, 'r', encoding='utf-8') as handle:
        match = _HEADER.match(handle.readline().strip())
        if not match:
            raise ConfigurationError(f"{path}: missing '# seed=... convention=...' header")
        reader = csv.reader(handle)
        columns = next(reader, None)
        if columns != ['theta_radians', 'x']:
            raise ConfigurationError(f"{path}: expected columns theta_radians,x, got {columns}")
        try:
            rows = [(float(theta), float(x)) for theta, x in reader]
        except ValueError as exc:
            raise ConfigurationError(f"{path}: malformed row ({exc})")

    thetas = [theta for theta, _ in rows]
    values = [x for _, x in rows]
    return QuadratureDataset(thetas, values, int(match.group('seed')), match.group('convention'))
