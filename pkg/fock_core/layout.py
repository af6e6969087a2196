from dataclasses import dataclass

from utils.helpers import ConfigurationError, check_positive_int


@dataclass(frozen=True)
class ModeLayout:
    """Truncated Fock basis of `mode_count` modes, each holding 0..cutoff photons.

    Basis vectors are ordered row-major with mode 0 as the slowest index.
    """

    mode_count: int
    cutoff: int

    def __post_init__(self):
        check_positive_int(self.mode_count, 'mode_count')
        check_positive_int(self.cutoff, 'cutoff')

    @property
    def local_dim(self):
        return self.cutoff + 1

    @property
    def dimension(self):
        return self.local_dim ** self.mode_count

    @property
    def shape(self):
        return (self.local_dim,) * self.mode_count

    def check_mode(self, mode):
        if isinstance(mode, bool) or not isinstance(mode, int) or not 0 <= mode < self.mode_count:
            raise ConfigurationError(
                f"mode index {mode!r} out of range for a {self.mode_count}-mode layout"
            )
        return mode

    def require_modes(self, count):
        if self.mode_count != count:
            raise ConfigurationError(f"expected a {count}-mode layout, got {self.mode_count} modes")
        return self

    def combine(self, other):
        if self.cutoff != other.cutoff:
            raise ConfigurationError(
                f"cutoff mismatch: {self.cutoff} vs {other.cutoff}"
            )
        return ModeLayout(self.mode_count + other.mode_count, self.cutoff)

    def subset(self, count):
        return ModeLayout(count, self.cutoff)
