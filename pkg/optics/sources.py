from dataclasses import dataclass

import numpy as np

from fock_core import DensityMatrix, tensor
from utils.helpers import DEFAULT_SETTINGS, check_unit_interval
from .beam_splitter import BeamSplitterSpec, beam_splitter_apply


@dataclass(frozen=True)
class SourceSpec:
    """Heralded single-photon source with preparation efficiency eta_one."""

    eta_one: float

    def __post_init__(self):
        object.__setattr__(self, 'eta_one', check_unit_interval(self.eta_one, 'eta_one'))


def prepare_heralded_photon(spec, layout):
    """eta_one |1><1| + (1 - eta_one) |0><0|."""
    layout.require_modes(1)
    populations = np.zeros(layout.local_dim)
    populations[0] = 1.0 - spec.eta_one
    populations[1] = spec.eta_one
    return DensityMatrix(layout, np.diag(populations).astype(complex))


def vacuum(layout):
    layout.require_modes(1)
    populations = np.zeros(layout.local_dim)
    populations[0] = 1.0
    return DensityMatrix(layout, np.diag(populations).astype(complex))


def make_epr(spec, layout, settings=DEFAULT_SETTINGS):
    """Nonlocal single photon: the heralded photon enters mode 1 of a symmetric
    splitter whose mode 0 carries vacuum.

    For eta_one = 1 the result is (|0,1> - |1,0>)/sqrt(2).
    """
    layout.require_modes(2)
    single = layout.subset(1)
    incident = tensor(vacuum(single), prepare_heralded_photon(spec, single))
    return beam_splitter_apply(incident, BeamSplitterSpec(0, 1), settings)
