import cmath
import math
from dataclasses import dataclass, replace

from fock_core import required_cutoff
from utils.helpers import ConfigurationError, TruncationError, DEFAULT_SETTINGS, check_unit_interval

QUANTUM = 'quantum'
SEMICLASSICAL = 'semiclassical'
MIXED = 'mixed'
BRANCH_TAGS = (QUANTUM, SEMICLASSICAL, MIXED)


@dataclass(frozen=True)
class ProtocolParams:
    """Source amplitude plus the four efficiencies of the setup.

    Defaults are the fitted values: eta_hd=0.54, eta_one=0.9, mode_match=0.56,
    eta_spd=0.5.
    """

    alpha: complex = 0j
    eta_one: float = 0.9
    eta_spd: float = 0.5
    eta_hd: float = 0.54
    mode_match: float = 0.56

    def __post_init__(self):
        try:
            alpha = complex(self.alpha)
        except (TypeError, ValueError):
            raise ConfigurationError(f"alpha must be a complex number, got {self.alpha!r}")
        if not cmath.isfinite(alpha):
            raise ConfigurationError(f"alpha must be finite, got {self.alpha!r}")
        object.__setattr__(self, 'alpha', alpha)
        for name in ('eta_one', 'eta_spd', 'eta_hd', 'mode_match'):
            object.__setattr__(self, name, check_unit_interval(getattr(self, name), name))

    @classmethod
    def from_polar(cls, magnitude, phase=0.0, **efficiencies):
        if magnitude < 0 or not math.isfinite(magnitude):
            raise ConfigurationError(f"|alpha| must be a finite non-negative number, got {magnitude!r}")
        return cls(alpha=cmath.rect(magnitude, phase), **efficiencies)

    @property
    def mean_photons(self):
        return abs(self.alpha) ** 2

    def with_alpha(self, alpha):
        return replace(self, alpha=alpha)


def working_cutoff(params, settings=DEFAULT_SETTINGS):
    """Cutoff used for one run: the configured floor, raised for large |alpha|.

    One level above the coherent-state requirement leaves room for the EPR
    photon that joins the source at Alice's splitter.
    """
    needed = required_cutoff(params.alpha, settings.tail_bound) + 1
    if needed <= settings.cutoff:
        return settings.cutoff
    if settings.auto_cutoff:
        return needed
    raise TruncationError(
        f"cutoff {settings.cutoff} too small for |alpha|={abs(params.alpha):.4g}; "
        f"need at least {needed} for tail bound {settings.tail_bound:.1e}"
    )
