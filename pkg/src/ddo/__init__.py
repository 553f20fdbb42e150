"""Dirac oscillator with minimal-length deformed commutators: exact spectra,
momentum-space wavefunctions and independent numerical verification."""
from .errors import (BoundaryUnphysical, ConfigurationError, ConsistencyError,
                     DivergenceSuspected, DomainError, EigenSolverError, NoBoundState)
from .model import (Channel, DeformationParams, Regime, SpectrumEntry, SpectrumTable,
                    classify, derive_channel, energy_squared, nondeformed_reference,
                    spectrum_table)
from .specfun import JacobiParams, jacobi_eval, log_gamma
from .wavefunctions import GridMap, RadialState, normalization_coeff, p_to_z, z_to_p
from .operators import H0Coeffs, LadderCoeffs, apply_ladder, h0_matrix_free, refactorize, si_step
from .quadrature import QuadratureSpec, inner_product, p2_expectation, tail_exponent
from .oracle import GridSpec, discretize_h0, lowest_eigenvalues, verify_spectrum
from .angular import SpinSphericalHarmonic, cg_coefficient, sigma_p_matrix, verify_angular_identities
from .report import VerificationReport

__all__ = [
    "BoundaryUnphysical", "ConfigurationError", "ConsistencyError", "DivergenceSuspected",
    "DomainError", "EigenSolverError", "NoBoundState",
    "Channel", "DeformationParams", "Regime", "SpectrumEntry", "SpectrumTable", "classify",
    "derive_channel", "energy_squared", "nondeformed_reference", "spectrum_table",
    "JacobiParams", "jacobi_eval", "log_gamma",
    "GridMap", "RadialState", "normalization_coeff", "p_to_z", "z_to_p",
    "H0Coeffs", "LadderCoeffs", "apply_ladder", "h0_matrix_free", "refactorize", "si_step",
    "QuadratureSpec", "inner_product", "p2_expectation", "tail_exponent",
    "GridSpec", "discretize_h0", "lowest_eigenvalues", "verify_spectrum",
    "SpinSphericalHarmonic", "cg_coefficient", "sigma_p_matrix", "verify_angular_identities",
    "VerificationReport",
]
