from dataclasses import dataclass, field

import numpy as np

from utils.helpers import ConfigurationError, DEFAULT_SETTINGS
from .layout import ModeLayout


def _frozen(array):
    array.setflags(write=False)
    return array


def hermitize(matrix):
    return 0.5 * (matrix + matrix.conj().T)


@dataclass(frozen=True, eq=False)
class FockState:
    """Pure state: complex amplitudes over the layout's number basis.

    `tail_mass` records the probability lost to truncation (coherent states).
    """

    layout: ModeLayout
    amplitudes: np.ndarray
    tail_mass: float = 0.0

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amplitudes.size != self.layout.dimension:
            raise ConfigurationError(
                f"amplitude vector has {amplitudes.size} entries, layout needs {self.layout.dimension}"
            )
        object.__setattr__(self, 'amplitudes', _frozen(amplitudes))

    @property
    def norm_squared(self):
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def as_tensor(self):
        return self.amplitudes.reshape(self.layout.shape)

    def to_density_matrix(self):
        return DensityMatrix(self.layout, np.outer(self.amplitudes, self.amplitudes.conj()))

    def __repr__(self):
        return f"FockState(modes={self.layout.mode_count}, cutoff={self.layout.cutoff}, norm²={self.norm_squared:.12f})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Dense density matrix over a multi-mode truncated Fock basis."""

    layout: ModeLayout
    elements: np.ndarray
    settings: object = field(default=DEFAULT_SETTINGS, repr=False)

    def __post_init__(self):
        elements = np.array(self.elements, dtype=complex)
        dim = self.layout.dimension
        if elements.shape != (dim, dim):
            raise ConfigurationError(
                f"density matrix has shape {elements.shape}, layout needs {(dim, dim)}"
            )
        scale = max(1.0, float(np.max(np.abs(elements))) if elements.size else 1.0)
        if np.max(np.abs(elements - elements.conj().T)) > self.settings.hermitian_tol * scale:
            raise ConfigurationError("density matrix is not Hermitian")
        object.__setattr__(self, 'elements', _frozen(hermitize(elements)))

    @property
    def trace(self):
        return float(np.trace(self.elements).real)

    def diagonal(self):
        return np.diagonal(self.elements).real.copy()

    def as_tensor(self):
        return self.elements.reshape(self.layout.shape + self.layout.shape)

    def min_eigenvalue(self):
        return float(np.linalg.eigvalsh(self.elements)[0])

    def __repr__(self):
        return f"DensityMatrix(modes={self.layout.mode_count}, cutoff={self.layout.cutoff}, trace={self.trace:.12f})"


@dataclass(frozen=True, eq=False)
class PureEnsemble:
    """Convex mixture sum_k w_k |psi_k><psi_k| kept as its pure components.

    Lets three-mode pipelines carry (N+1)^3 amplitudes per component instead
    of an (N+1)^6 density matrix.
    """

    layout: ModeLayout
    weights: tuple
    components: tuple

    def __post_init__(self):
        if len(self.weights) != len(self.components):
            raise ConfigurationError("ensemble needs one weight per component")
        components = []
        for component in self.components:
            if isinstance(component, FockState):
                component = component.amplitudes
            vector = np.array(component, dtype=complex).reshape(-1)
            if vector.size != self.layout.dimension:
                raise ConfigurationError("ensemble component does not match the layout")
            components.append(_frozen(vector))
        weights = tuple(float(w) for w in self.weights)
        if any(w < 0 for w in weights):
            raise ConfigurationError("ensemble weights must be non-negative")
        object.__setattr__(self, 'weights', weights)
        object.__setattr__(self, 'components', tuple(components))

    @classmethod
    def from_state(cls, state):
        return cls(state.layout, (1.0,), (state.amplitudes,))

    @classmethod
    def from_density_matrix(cls, rho, cutoff_weight=1e-15):
        values, vectors = np.linalg.eigh(rho.elements)
        weights, components = [], []
        for value, vector in zip(values, vectors.T):
            if value > cutoff_weight:
                weights.append(value)
                components.append(vector)
        return cls(rho.layout, tuple(weights), tuple(components))

    @property
    def trace(self):
        return float(sum(w * np.vdot(v, v).real for w, v in zip(self.weights, self.components)))

    def tensors(self):
        for weight, vector in zip(self.weights, self.components):
            yield weight, vector.reshape(self.layout.shape)

    def to_density_matrix(self):
        elements = np.zeros((self.layout.dimension, self.layout.dimension), dtype=complex)
        for weight, vector in zip(self.weights, self.components):
            elements += weight * np.outer(vector, vector.conj())
        return DensityMatrix(self.layout, elements)

    def __len__(self):
        return len(self.components)
