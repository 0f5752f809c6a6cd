"""A CMV matrix and its truncation: pivot B, coefficient A and the
regular/singular dichotomy of the two spectra.

The truncation of ``C(alpha_0, ..., alpha_{n-2}; beta1)`` is
``C(alpha_0, ..., alpha_{n-3}; beta2)``, of order n - 1.
"""

import enum
from dataclasses import dataclass

import numpy as np

from . import poly
from .cmv import DISK_TOL, UNIMODULAR_TOL, VerblunskyData, szego_forward, validate
from .errors import (
    AlphaOutOfDisk,
    BetaNotUnimodular,
    CMVError,
    DichotomyViolation,
    LengthMismatch,
    NonPositiveMass,
)
from .interlace import cross_distances, interlaces
from .spectral import angle_of, chordal, eigenvalues, unit_points, wrap_angle


class Classification(str, enum.Enum):
    REGULAR = "regular"
    SINGULAR = "singular"


def _check_params(alpha_last, beta1, beta2):
    alpha_last, beta1, beta2 = complex(alpha_last), complex(beta1), complex(beta2)
    if not np.isfinite(alpha_last) or abs(alpha_last) >= 1 - DISK_TOL:
        raise AlphaOutOfDisk(f"|alpha| = {abs(alpha_last)!r}")
    for b in (beta1, beta2):
        if not np.isfinite(b) or abs(abs(b) - 1) >= UNIMODULAR_TOL:
            raise BetaNotUnimodular(f"|beta| = {abs(b)!r}")
    return alpha_last, beta1, beta2


def compute_B(alpha_last, beta1, beta2):
    a, b1, b2 = _check_params(alpha_last, beta1, beta2)
    return b1.conjugate() * b2 * (1 - b2.conjugate() * a) / (1 - b2 * a.conjugate())


def compute_A(alpha_last, beta1, beta2):
    a, b1, b2 = _check_params(alpha_last, beta1, beta2)
    return b1.conjugate() * (1 - abs(a) ** 2) / (b2.conjugate() - a.conjugate())


def beta2_for_pivot(alpha_last, beta1, pivot):
    """The unique unimodular ``beta2`` with ``compute_B(alpha_last, beta1, beta2) == pivot``.

    B as a function of beta2 is the degree-one Blaschke factor
    ``conj(beta1) (z - alpha) / (1 - conj(alpha) z)``; this inverts it.
    """
    a, b1, w = _check_params(alpha_last, beta1, pivot)
    b1c = b1.conjugate()
    beta2 = (w + b1c * a) / (b1c + w * a.conjugate())
    if abs(abs(beta2) - 1) > 1e-12:
        raise BetaNotUnimodular(f"Möbius inverse gave |beta2| = {abs(beta2)!r}")
    return beta2 / abs(beta2)


@dataclass(frozen=True, eq=False)
class TruncationReport:
    B: complex
    A: complex
    classification: Classification
    spectrum_full: np.ndarray
    spectrum_trunc: np.ndarray
    shared_point: float = None
    shared_index: int = None
    interlace_witness: bool = False
    residue_error: float = 0.0
    data1: VerblunskyData = None
    data2: VerblunskyData = None

    @property
    def singular(self):
        return self.classification is Classification.SINGULAR


def truncate(data1, beta2):
    """Order n - 1 truncation of ``data1`` with boundary parameter ``beta2``."""
    validate(data1)
    if data1.n < 2:
        raise LengthMismatch("truncation needs a matrix of order at least 2")
    beta2 = complex(beta2)
    if abs(abs(beta2) - 1) >= UNIMODULAR_TOL:
        raise BetaNotUnimodular(f"|beta2| = {abs(beta2)!r}")
    return VerblunskyData(data1.alpha[:-1], beta2)


def _residue_identity_error(sys1, sys2, A, B):
    z = 2.0 * np.exp(1j * (0.3 + 2 * np.pi * np.arange(3) / 3))
    lhs = poly.peval(sys1.phi_last, z) * (z - B)
    rhs = poly.peval(sys1.phi_tilde, z) - A * poly.peval(sys2.phi_tilde, z)
    return float(np.max(np.abs(lhs - rhs) / np.maximum(np.abs(lhs), np.abs(rhs))))


def truncate_direct(data1, beta2):
    data2 = truncate(data1, beta2)
    n = data1.n
    sys1 = szego_forward(data1)
    sys2 = szego_forward(data2)
    s1 = eigenvalues(data1)
    s2 = eigenvalues(data2)
    alpha_last = data1.alpha[-1]
    B = compute_B(alpha_last, data1.beta, data2.beta)
    A = compute_A(alpha_last, data1.beta, data2.beta)
    b_angle = angle_of(B)

    err = _residue_identity_error(sys1, sys2, A, B)
    if err >= 1e-8:
        raise DichotomyViolation(f"residue identity error {err:.3e}")

    eps = 1e-8 * n
    dist = cross_distances(s1, s2)
    flat = np.sort(dist, axis=None)
    try:
        if flat[0] < eps:
            if flat.size > 1 and flat[1] <= 10 * eps:
                raise DichotomyViolation("ambiguous shared point: two near-coincident pairs")
            i, _ = np.unravel_index(np.argmin(dist), dist.shape)
            shared = s1[i]
            if chordal(shared, b_angle) >= 1e-8:
                raise DichotomyViolation(f"shared point is not B (distance {chordal(shared, b_angle):.3e})")
            witness = interlaces(np.delete(s1, i), s2)
            cls, shared_index = Classification.SINGULAR, int(i)
        else:
            shared, shared_index = None, None
            witness = interlaces(s1, np.append(s2, b_angle))
            cls = Classification.REGULAR
    except DichotomyViolation:
        raise
    except CMVError as exc:
        raise DichotomyViolation(f"interlacing check failed: {exc}") from exc
    if not witness:
        raise DichotomyViolation(f"{cls.value} case spectra do not interlace")

    return TruncationReport(
        B=complex(B),
        A=complex(A),
        classification=cls,
        spectrum_full=s1,
        spectrum_trunc=s2,
        shared_point=None if shared is None else float(shared),
        shared_index=shared_index,
        interlace_witness=witness,
        residue_error=err,
        data1=data1,
        data2=data2,
    )


def masses_from_truncation(report, phi_tilde_n, phi_tilde_nm1):
    """Masses of the n-th spectral measure of the full matrix, from the
    two characteristic polynomials and the pivot data.
    """
    z = unit_points(report.spectrum_full)
    A, B = report.A, report.B
    dpn = poly.derivative(phi_tilde_n)
    masses = np.empty(z.size, dtype=complex)
    rest = np.ones(z.size, dtype=bool)
    if report.singular:
        s = report.shared_index
        zs = z[s]
        masses[s] = 1 - A * poly.peval(poly.derivative(phi_tilde_nm1), zs) / poly.peval(dpn, zs)
        rest[s] = False
    zr = z[rest]
    masses[rest] = -A * poly.peval(phi_tilde_nm1, zr) / ((zr - B) * poly.peval(dpn, zr))
    if np.max(np.abs(masses.imag)) >= 1e-8:
        raise NonPositiveMass(f"masses have imaginary part {np.max(np.abs(masses.imag)):.3e}")
    masses = masses.real
    if np.min(masses) <= 0:
        raise NonPositiveMass(f"computed mass {np.min(masses)!r}")
    if abs(masses.sum() - 1) >= 1e-8:
        raise DichotomyViolation(f"truncation masses sum to {masses.sum()!r}")
    return masses


def singular_partner(data1, index):
    """A truncation parameter ``beta2`` that puts the pair in the singular
    case, sharing the ``index``-th eigenvalue of ``data1``.
    """
    s1 = eigenvalues(data1)
    zeta = unit_points(wrap_angle(s1[index]))
    return beta2_for_pivot(data1.alpha[-1], data1.beta, zeta)
