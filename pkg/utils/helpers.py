"""
Shared helpers: simulation settings, range checks and the exception hierarchy
used by every package of the simulator.
"""

import math
from dataclasses import dataclass, replace


class ScissorsError(Exception):
    """Base class for every error raised by the simulator."""


class ConfigurationError(ScissorsError):
    """Invalid parameter, layout, grid or configuration file."""


class TruncationError(ScissorsError):
    """A state does not fit inside the Fock cutoff within the tail bound."""


class NoTeleportationEventError(ScissorsError):
    """The heralding probability fell below the configured floor."""

    def __init__(self, probability, floor):
        super().__init__(
            f"no valid teleportation branch: probability {probability:.3e} below floor {floor:.1e}"
        )
        self.probability = probability
        self.floor = floor


class TomographyError(ScissorsError):
    """Empty or degenerate homodyne data, or an ill-conditioned loss inversion."""


class LowSampleCountWarning(UserWarning):
    pass


class NonPhysicalStateWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SimulationSettings:
    cutoff: int = 12
    auto_cutoff: bool = True
    tail_bound: float = 1e-10
    p_tel_floor: float = 1e-15
    hermitian_tol: float = 1e-12
    trace_tol: float = 1e-9

    def with_cutoff(self, cutoff):
        return replace(self, cutoff=cutoff)


DEFAULT_SETTINGS = SimulationSettings()


def check_unit_interval(value, name):
    """Raise ConfigurationError unless 0 <= value <= 1."""
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{name} must be a real number, got {value!r}")
    if math.isnan(number) or number < 0.0 or number > 1.0:
        raise ConfigurationError(f"{name} must lie in [0, 1], got {value!r}")
    return number


def check_positive_int(value, name, allow_zero=False):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigurationError(f"{name} must be an integer, got {value!r}")
    if value < 0 or (value == 0 and not allow_zero):
        raise ConfigurationError(f"{name} must be positive, got {value}")
    return value
