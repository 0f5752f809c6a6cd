"""Inverse spectral problems for finite CMV matrices.

* ``from_measure``: the matrix from its n-th spectral measure.
* ``from_two_spectra``: two matrices sharing all Verblunsky coefficients
  but with different boundary parameters, from their spectra.
* ``truncation_regular`` / ``truncation_singular``: a matrix and its
  truncation from the two spectra (plus the pivot point, or a free mass
  parameter in the singular case).
* ``uniqueness_audit``: checks that singular-case solutions with equal
  last Verblunsky coefficient coincide.
"""

from dataclasses import dataclass

import numpy as np

from . import poly
from .cmv import VerblunskyData, beta_from_spectrum, szego_inverse
from .errors import (
    CMVError,
    CommonPointPresent,
    DegenerateP,
    MixedSigns,
    NotInterlacing,
    NotSingularPattern,
    NumericalDegeneracy,
    PZeroInDisk,
    ReconstructionMismatch,
    RootsLeakDisk,
    SizeMismatch,
    SpectraMismatch,
    SumNotZero,
    TOutOfRange,
    ZetaOffArc,
)
from .interlace import cross_distances, interlaces, sort_circular
from .spectral import (
    DISTINCT_TOL,
    TWO_PI,
    SpectralMeasure,
    chordal,
    eigenvalues,
    make_measure,
    spectral_measure,
    unit_points,
    wrap_angle,
)
from .truncation import beta2_for_pivot, compute_B

VERIFY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class CMVPair:
    """Two CMV matrices sharing a Verblunsky prefix.

    ``same_order`` pairs (two boundary conditions) share the full alpha;
    otherwise ``data2`` is the truncation of ``data1``.
    """

    data1: VerblunskyData
    data2: VerblunskyData
    same_order: bool = False

    @property
    def shared_alpha(self):
        return self.data2.alpha


def max_spectrum_distance(a, b):
    """Largest chordal distance between matched points of two sorted angle sets."""
    a = np.sort(wrap_angle(a))
    b = np.sort(wrap_angle(b))
    if a.size != b.size:
        return np.inf
    if a.size == 0:
        return 0.0
    # sorted sets can be off by a cyclic shift when a point sits near angle 0
    return float(min(np.max(chordal(a, np.roll(b, s))) for s in (-1, 0, 1)))


def _check_spectrum(data, target, what):
    got = eigenvalues(data)
    err = max_spectrum_distance(got, target)
    if err >= VERIFY_TOL:
        raise ReconstructionMismatch(f"{what} spectrum reproduced only to {err:.3e}")
    return err


def _measure_polynomial(points, masses):
    """``sum_j masses[j] * prod_{k != j} (z - points[k])`` by synthetic division."""
    pn = poly.from_roots(points)
    acc = np.zeros(points.size, dtype=complex)
    for xi, nu in zip(points, masses):
        q, _ = poly.synthetic_division(pn, xi)
        acc += nu * q
    return pn, acc


def from_measure(measure, verify=True):
    if not isinstance(measure, SpectralMeasure):
        raise TypeError("expected a SpectralMeasure")
    measure = make_measure(measure.angles, measure.masses)
    xi = measure.points
    n = xi.size
    _, p_last = _measure_polynomial(xi, measure.masses)
    p_last, _ = poly.monic(p_last, n - 1)
    try:
        alpha, _ = szego_inverse(p_last)
    except NumericalDegeneracy as exc:
        raise RootsLeakDisk(f"measure polynomial has roots outside the open disk: {exc}") from exc
    data = VerblunskyData(alpha, beta_from_spectrum(xi))

    if verify:
        back = spectral_measure(data)
        perr = max_spectrum_distance(back.angles, measure.angles)
        merr = float(np.max(np.abs(back.masses - measure.masses))) if perr < VERIFY_TOL else np.inf
        if perr >= VERIFY_TOL or merr >= VERIFY_TOL:
            raise ReconstructionMismatch(f"measure round trip error: points {perr:.3e}, masses {merr:.3e}")
    return data


def from_two_spectra(s1, s2, verify=True):
    x1 = sort_circular(s1)
    x2 = sort_circular(s2)
    if x1.size != x2.size:
        raise SizeMismatch(f"{x1.size} vs {x2.size} points")
    n = x1.size
    z1, z2 = unit_points(x1), unit_points(x2)
    p = poly.from_roots(z1) - poly.from_roots(z2)
    if np.max(np.abs(p)) < 1e-14:
        raise DegenerateP("the two spectra coincide")
    try:
        ok = interlaces(x1, x2)
    except CMVError as exc:
        raise NotInterlacing(str(exc)) from exc
    if not ok:
        raise NotInterlacing("the two spectra do not interlace")

    p0 = p[0]
    phi_last = poly.reversed_poly(p[:n], n - 1) / np.conj(p0)
    try:
        alpha, _ = szego_inverse(phi_last)
    except NumericalDegeneracy as exc:
        raise PZeroInDisk(f"difference polynomial vanishes in the closed disk: {exc}") from exc
    data1 = VerblunskyData(alpha, beta_from_spectrum(z1))
    data2 = VerblunskyData(alpha, beta_from_spectrum(z2))
    if verify:
        _check_spectrum(data1, x1, "first")
        _check_spectrum(data2, x2, "second")
    return CMVPair(data1, data2, same_order=True)


def _truncation_sets(z1, z2):
    x1 = sort_circular(z1)
    x2 = sort_circular(z2)
    if x1.size < 2 or x2.size != x1.size - 1:
        raise SizeMismatch(f"need n >= 2 and n - 1 points, got {x1.size} and {x2.size}")
    return x1, x2


def admissible_arc(z1, z2):
    """The arc of admissible pivots in the regular case.

    Returns ``(start, end)`` angles with ``end > start`` (``end`` may
    exceed 2*pi): the gap between consecutive points of ``z1`` that holds
    no point of ``z2``.  Raises MixedSigns if there is no unique such gap.
    """
    x1, x2 = _truncation_sets(z1, z2)
    gaps_start = x1
    gaps_end = np.append(x1[1:], x1[0] + TWO_PI)
    counts = np.array([
        np.count_nonzero(wrap_angle(x2 - s) < (e - s)) for s, e in zip(gaps_start, gaps_end)
    ])
    empty = np.flatnonzero(counts == 0)
    if empty.size != 1 or np.any(counts > 1):
        raise MixedSigns("point sets are not interlaced in the truncation pattern")
    k = int(empty[0])
    return float(gaps_start[k]), float(gaps_end[k])


def _positive_weights(a, what):
    total = a.sum()
    nu = a / total
    if np.any(nu.real <= 0) or np.max(np.abs(nu.imag)) > 1e-8 * np.max(np.abs(nu)):
        raise MixedSigns(f"{what} weights do not share a common argument")
    return nu.real / nu.real.sum()


def truncation_regular(z1, z2, zeta, verify=True):
    """Unique (matrix, truncation) pair with spectra ``z1``, ``z2`` and pivot angle ``zeta``."""
    x1, x2 = _truncation_sets(z1, z2)
    n = x1.size
    if np.min(cross_distances(x1, x2)) < 1e-8 * n:
        raise CommonPointPresent("spectra share a point; use the singular solver")
    zeta = float(wrap_angle(zeta))
    if min(np.min(chordal(x1, zeta)), np.min(chordal(x2, zeta))) <= DISTINCT_TOL:
        raise ZetaOffArc("pivot coincides with a spectral point")
    k = int(np.searchsorted(x1, zeta) - 1) % n
    start = x1[k]
    width = x1[(k + 1) % n] - start + (TWO_PI if k == n - 1 else 0.0)
    if np.any(wrap_angle(x2 - start) < width):
        raise ZetaOffArc("pivot is not on the arc free of truncation eigenvalues")

    w = np.exp(1j * zeta)
    p1 = poly.from_roots(unit_points(x1))
    p2 = poly.from_roots(unit_points(x2))
    pts = unit_points(x1)
    a = poly.peval(p2, pts) / ((pts - w) * poly.peval(poly.derivative(p1), pts))
    masses = _positive_weights(a, "pivot")
    data1 = from_measure(make_measure(x1, masses), verify=verify)
    beta2 = beta2_for_pivot(data1.alpha[-1], data1.beta, w)
    data2 = VerblunskyData(data1.alpha[:-1], beta2)
    if verify:
        _check_spectrum(data2, x2, "truncation")
        berr = abs(compute_B(data1.alpha[-1], data1.beta, beta2) - w)
        if berr >= 1e-9:
            raise ReconstructionMismatch(f"pivot reproduced only to {berr:.3e}")
    return CMVPair(data1, data2)


def truncation_singular(z1, z2, t=0.5, verify=True):
    """One member of the singular-case solution family.

    ``t`` in (0, 1) is the mass taken away from the shared point: the
    reconstructed spectral measure puts ``1 - t`` there.
    """
    t = float(t)
    if not 0.0 < t < 1.0:
        raise TOutOfRange(f"t = {t!r} must lie in (0, 1)")
    x1, x2 = _truncation_sets(z1, z2)
    n = x1.size
    dist = cross_distances(x1, x2)
    close = np.argwhere(dist < 1e-8 * n)
    if close.shape[0] != 1:
        raise NotSingularPattern(f"expected exactly one common point, found {close.shape[0]}")
    i1, i2 = close[0]
    shared = x1[i1]
    others = np.delete(x1, i1)
    x2 = x2.copy()
    x2[i2] = shared

    w = np.exp(1j * shared)
    pts = unit_points(others)
    p1 = poly.from_roots(np.append(pts, w))
    p2 = poly.from_roots(unit_points(x2))
    dp1 = poly.derivative(p1)
    a = poly.peval(p2, pts) / ((pts - w) * poly.peval(dp1, pts))
    a_n = poly.peval(poly.derivative(p2), w) / poly.peval(dp1, w)
    scale = max(np.max(np.abs(a)), abs(a_n))
    if abs(a.sum() + a_n) >= 1e-9 * scale:
        raise SumNotZero(f"weights sum to {abs(a.sum() + a_n):.3e}")

    mu = (t / -a_n) * a
    if np.any(mu.real <= 0) or np.max(np.abs(mu.imag)) > 1e-8 * np.max(np.abs(mu)):
        raise MixedSigns("singular weights do not share a common argument")
    mu = mu.real * (t / mu.real.sum())
    measure = make_measure(np.append(others, shared), np.append(mu, 1.0 - t))
    data1 = from_measure(measure, verify=verify)
    beta2 = beta2_for_pivot(data1.alpha[-1], data1.beta, w)
    data2 = VerblunskyData(data1.alpha[:-1], beta2)
    if verify:
        _check_spectrum(data1, x1, "full")
        _check_spectrum(data2, sort_circular(z2), "truncation")
    return CMVPair(data1, data2)


def _pair_params(pair):
    return np.concatenate([pair.data1.alpha, [pair.data1.beta, pair.data2.beta]])


def uniqueness_audit(pair1, pair2, tol=1e-10, spectra_tol=None):
    """False only if two singular-case solutions with equal last Verblunsky
    coefficient differ somewhere (which should never happen).
    """
    spectra_tol = tol if spectra_tol is None else spectra_tol
    if pair1.data1.n != pair2.data1.n or pair1.data2.n != pair2.data2.n:
        raise SpectraMismatch("pairs have different orders")
    for first, second in ((pair1.data1, pair2.data1), (pair1.data2, pair2.data2)):
        err = max_spectrum_distance(eigenvalues(first), eigenvalues(second))
        if err >= spectra_tol:
            raise SpectraMismatch(f"spectra differ by {err:.3e}")
    if abs(pair1.data1.alpha[-1] - pair2.data1.alpha[-1]) >= tol:
        return True
    return bool(np.max(np.abs(_pair_params(pair1) - _pair_params(pair2))) < 10 * tol)
