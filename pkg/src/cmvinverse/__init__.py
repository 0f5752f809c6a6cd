"""Finite CMV matrices: assembly, spectral data and inverse problems."""

from .cmv import VerblunskyData, assemble, szego_forward, szego_inverse
from .errors import CMVError, NumericalDegeneracy, ValidationError, VerificationError
from .interlace import interlaces, omega_values
from .inverse import (
    CMVPair,
    from_measure,
    from_two_spectra,
    truncation_regular,
    truncation_singular,
    uniqueness_audit,
)
from .spectral import SpectralMeasure, eigenvalues, make_measure, rotate, spectral_measure, weyl_eval
from .truncation import TruncationReport, compute_A, compute_B, truncate, truncate_direct

__all__ = [
    "CMVError",
    "CMVPair",
    "NumericalDegeneracy",
    "SpectralMeasure",
    "TruncationReport",
    "ValidationError",
    "VerblunskyData",
    "VerificationError",
    "assemble",
    "compute_A",
    "compute_B",
    "eigenvalues",
    "from_measure",
    "from_two_spectra",
    "interlaces",
    "make_measure",
    "omega_values",
    "rotate",
    "spectral_measure",
    "szego_forward",
    "szego_inverse",
    "truncate",
    "truncate_direct",
    "truncation_regular",
    "truncation_singular",
    "uniqueness_audit",
    "weyl_eval",
]
