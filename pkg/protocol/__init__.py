from .params import QUANTUM, SEMICLASSICAL, MIXED, ProtocolParams, working_cutoff
from .branches import (
    BranchResult,
    SemiclassicalStatistics,
    three_mode_state,
    quantum_branch,
    quantum_branch_ideal,
    semiclassical_statistics,
    semiclassical_branch,
)
from .ensemble import combine_branches, bob_ensemble, unconditioned_bob
from .sweeps import (
    SweepResult,
    PhasePoint,
    QuadratureFit,
    source_fidelity,
    fidelity_point,
    fidelity_vs_alpha,
    phase_sweep,
    mean_quadrature_fit,
)
