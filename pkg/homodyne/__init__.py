from .wavefunctions import (
    oscillator_wavefunctions,
    oscillator_derivatives,
    irregular_wavefunctions,
    irregular_derivatives,
)
from .quadratures import quadrature_pdf, quadrature_moments, quadrature_histogram, mean_photon_number
from .sampling import (
    CONVENTION,
    QuadratureDataset,
    default_theta_schedule,
    split_samples,
    sample_quadratures,
    write_dataset,
    read_dataset,
)
from .pattern_functions import PatternFunctionTable, pattern_functions
from .reconstruction import ReconstructedState, theta_spread, reconstruct, loss_correct
