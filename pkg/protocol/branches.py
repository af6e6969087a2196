"""
The two branches of the teleportation model.

quantum: coherent source and nonlocal single photon mixed on Alice's splitter,
then collapsed on "D1 clicks, D2 dark".
semiclassical: photons treated as classical particles routed at random through
the same optics; only photon-number statistics survive.
"""

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np
from scipy.stats import poisson

from fock_core import (
    DensityMatrix,
    ModeLayout,
    PureEnsemble,
    coherent_state,
    normalize,
    tensor,
)
from optics import BeamSplitterSpec, SourceSpec, beam_splitter_apply, make_epr
from detection import DetectorSpec, condition_on_bell
from utils.helpers import ConfigurationError, NoTeleportationEventError, DEFAULT_SETTINGS
from .params import QUANTUM, SEMICLASSICAL, BRANCH_TAGS, working_cutoff


@dataclass(frozen=True)
class BranchResult:
    """Normalized single-mode output with its heralding probability."""

    rho: DensityMatrix
    probability: float
    branch_tag: str

    def __post_init__(self):
        if self.branch_tag not in BRANCH_TAGS:
            raise ConfigurationError(f"unknown branch tag {self.branch_tag!r}")
        object.__setattr__(self, 'probability', float(min(1.0, max(0.0, self.probability))))


@dataclass(frozen=True)
class SemiclassicalStatistics:
    p_tel: float
    p_out: float


@lru_cache(maxsize=32)
def _epr_ensemble(eta_one, cutoff, settings):
    epr = make_epr(SourceSpec(eta_one), ModeLayout(2, cutoff), settings)
    return PureEnsemble.from_density_matrix(epr)


def three_mode_state(params, settings=DEFAULT_SETTINGS, cutoff=None):
    """Source (mode 0) and EPR pair (modes 1, 2) after Alice's splitter on modes 0 and 1.

    Kept as a PureEnsemble: one component per eigenvector of the EPR state.
    """
    cutoff = working_cutoff(params, settings) if cutoff is None else cutoff
    single = ModeLayout(1, cutoff)
    incident = tensor(coherent_state(params.alpha, single, settings), _epr_ensemble(params.eta_one, cutoff, settings))
    return beam_splitter_apply(incident, BeamSplitterSpec(0, 1), settings)


def _conditioned(params, detector, settings, tag):
    outcome = condition_on_bell(three_mode_state(params, settings), detector, detector, settings)
    return BranchResult(normalize(outcome.rho_out), outcome.p_tel, tag)


def quantum_branch(params, settings=DEFAULT_SETTINGS):
    """Conditioned output for click/no-click detectors of efficiency eta_spd."""
    return _conditioned(params, DetectorSpec(params.eta_spd), settings, QUANTUM)


def quantum_branch_ideal(params, settings=DEFAULT_SETTINGS):
    """Perfect photon source and number-resolving detectors.

    Only eta_one is overridden (to 1); the output is a0|0> + a1|1> normalized.
    """
    ideal = replace(params, eta_one=1.0)
    return _conditioned(ideal, DetectorSpec(1.0, discriminating=True), settings, QUANTUM)


def _herald_probability(photons, eta_spd):
    # k photons split evenly: P(at least one detected at D1 and none at D2)
    return (1.0 - eta_spd / 2.0) ** photons - (1.0 - eta_spd) ** photons


def semiclassical_statistics(params, settings=DEFAULT_SETTINGS):
    """Exact p_tel and p_out of the particle model.

    The source photon number is Poisson distributed, truncated where the tail
    drops below the tail bound. The EPR photon is absent (1 - eta_one), at Bob
    (eta_one/2) or at Alice's splitter (eta_one/2).
    """
    photons = np.arange(working_cutoff(params, settings) + 1)
    weights = poisson.pmf(photons, params.mean_photons)

    herald_source = float(np.dot(weights, _herald_probability(photons, params.eta_spd)))
    herald_with_epr = float(np.dot(weights, _herald_probability(photons + 1, params.eta_spd)))

    at_bob = 0.5 * params.eta_one * herald_source
    p_tel = (1.0 - params.eta_one) * herald_source + at_bob + 0.5 * params.eta_one * herald_with_epr
    if p_tel < settings.p_tel_floor:
        raise NoTeleportationEventError(p_tel, settings.p_tel_floor)
    return SemiclassicalStatistics(p_tel=p_tel, p_out=at_bob / p_tel)


def semiclassical_branch(params, settings=DEFAULT_SETTINGS):
    """diag(1 - p_out, p_out) padded to the working cutoff, with p_tel^sc."""
    stats = semiclassical_statistics(params, settings)
    layout = ModeLayout(1, working_cutoff(params, settings))
    populations = np.zeros(layout.local_dim)
    populations[0] = 1.0 - stats.p_out
    populations[1] = stats.p_out
    return BranchResult(DensityMatrix(layout, np.diag(populations)), stats.p_tel, SEMICLASSICAL)
