"""Direct spectral problem: eigenvalues, Weyl function and the n-th spectral measure.

Points on the unit circle are handled as arrays of angles in ``[0, 2*pi)``;
``unit_points`` turns them into complex values.
"""

import logging
from dataclasses import dataclass

import numpy as np

from . import poly
from .cmv import VerblunskyData, szego_forward, validate
from .errors import (
    DuplicatePoints,
    InvalidMeasure,
    NonPositiveMass,
    NumericalDegeneracy,
    PhaseMonotonicityViolated,
    PoleProximity,
    RootCountMismatch,
    TauNotUnimodular,
)

log = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi
DISTINCT_TOL = 1e-10


def wrap_angle(x):
    """Map angles into ``[0, 2*pi)``."""
    x = np.mod(np.asarray(x, dtype=float), TWO_PI)
    x = np.where(x >= TWO_PI, 0.0, x)
    return x if x.ndim else float(x)


def angle_of(z):
    return wrap_angle(np.angle(z))


def unit_points(angles):
    return np.exp(1j * np.asarray(angles, dtype=float))


def chordal(x, y):
    """Chord length between the unit points at angles ``x`` and ``y``."""
    return 2.0 * np.abs(np.sin((np.asarray(x) - np.asarray(y)) / 2.0))


def angle_diff(x, y):
    """Signed angular difference ``x - y`` folded into ``(-pi, pi]``."""
    d = np.mod(np.asarray(x, dtype=float) - np.asarray(y, dtype=float) + np.pi, TWO_PI) - np.pi
    return d


def min_gap(angles):
    """Smallest chordal distance between distinct entries (circularly)."""
    a = np.sort(np.asarray(angles, dtype=float))
    if a.size < 2:
        return np.inf
    gaps = np.diff(np.concatenate([a, [a[0] + TWO_PI]]))
    return float(np.min(2.0 * np.sin(np.minimum(gaps, np.pi) / 2.0)))


@dataclass(frozen=True, eq=False)
class SpectralMeasure:
    angles: np.ndarray
    masses: np.ndarray
    defect: float = 0.0

    @property
    def points(self):
        return unit_points(self.angles)

    @property
    def n(self):
        return self.angles.size


def make_measure(angles, masses, sum_tol=1e-10):
    """Validated measure, sorted by angle."""
    angles = wrap_angle(np.atleast_1d(np.asarray(angles, dtype=float)))
    masses = np.atleast_1d(np.asarray(masses, dtype=float))
    if angles.shape != masses.shape or angles.ndim != 1 or angles.size == 0:
        raise InvalidMeasure("points and masses must be nonempty and of equal length")
    if not (np.all(np.isfinite(angles)) and np.all(np.isfinite(masses))):
        raise InvalidMeasure("non-finite points or masses")
    if np.any(masses <= 0):
        raise InvalidMeasure("masses must be positive")
    if abs(masses.sum() - 1.0) > sum_tol:
        raise InvalidMeasure(f"masses sum to {masses.sum()!r}")
    if min_gap(angles) <= DISTINCT_TOL:
        raise DuplicatePoints("measure points are not distinct")
    order = np.argsort(angles, kind="stable")
    return SpectralMeasure(angles[order], masses[order])


# ---------------------------------------------------------------------------
# eigenvalues via the Blaschke phase
#
# On the circle b(e^{it}) = e^{it} Phi(e^{it}) / Phi*(e^{it}) has the
# continuous phase psi(t) = (2 - n) t + 2 arg Phi(e^{it}), Phi = Phi_{n-1}.
# arg Phi is increasing (roots inside the disk) and psi gains exactly
# 2*pi*n per turn.  Eigenvalues are the solutions of psi(t) = -arg(beta)
# modulo 2*pi.
# ---------------------------------------------------------------------------

_MAX_STEP = np.pi / 2
_MIN_WIDTH = 1e-13


def _phase_grid(phi, n):
    theta = np.linspace(0.0, TWO_PI, 16 * n + 1)
    vals = poly.peval(phi, np.exp(1j * theta))
    for _ in range(64):
        d = np.angle(vals[1:] / vals[:-1])
        bad = (d > _MAX_STEP) | (d < 0)
        if not bad.any():
            break
        widths = np.diff(theta)
        if np.any(widths[bad] < _MIN_WIDTH):
            raise PhaseMonotonicityViolated("phase of Phi_{n-1} not monotone on the circle")
        idx = np.flatnonzero(bad)
        mids = 0.5 * (theta[idx] + theta[idx + 1])
        theta = np.insert(theta, idx + 1, mids)
        vals = np.insert(vals, idx + 1, poly.peval(phi, np.exp(1j * mids)))
    else:
        raise PhaseMonotonicityViolated("phase refinement did not settle")
    d = np.angle(vals[1:] / vals[:-1])
    steps = (2 - n) * np.diff(theta) + 2.0 * d
    if np.any(steps <= 0):
        raise PhaseMonotonicityViolated("Blaschke phase is not strictly increasing")
    psi = np.concatenate([[2.0 * np.angle(vals[0])], 2.0 * np.angle(vals[0]) + np.cumsum(steps)])
    if abs(psi[-1] - psi[0] - TWO_PI * n) > 1e-6:
        raise PhaseMonotonicityViolated(
            f"total phase increase {psi[-1] - psi[0]!r} differs from 2*pi*{n}"
        )
    return theta, vals, psi


def eigenvalues(data, tol_angle=1e-12):
    """Sorted eigenvalue angles of the CMV matrix built from ``data``."""
    if not 0 < tol_angle <= 1e-6:
        raise ValueError("tol_angle must lie in (0, 1e-6]")
    system = szego_forward(data)
    n = data.n
    if n == 1:
        return np.array([angle_of(data.beta.conjugate())])
    phi = system.phi_last
    theta, vals, psi = _phase_grid(phi, n)

    target0 = -np.angle(data.beta)
    m0 = np.ceil((psi[0] - target0) / TWO_PI)
    targets = target0 + TWO_PI * (m0 + np.arange(n))
    # a root at angle 0 puts a target on the seam psi[0] ~ psi[-1] - 2 pi n;
    # roundoff may push it past either end, so fold it into the first bracket
    targets = np.where(targets >= psi[-1], targets - TWO_PI * n, targets)
    idx = np.clip(np.searchsorted(psi, targets, side="right") - 1, 0, theta.size - 2)
    if np.unique(idx).size != n:
        raise RootCountMismatch(f"expected {n} phase brackets")

    lo = theta[idx].copy()
    hi = theta[idx + 1].copy()
    psi_lo = psi[idx].copy()
    phi_lo = vals[idx].copy()
    while np.max(hi - lo) > tol_angle:
        mid = 0.5 * (lo + hi)
        phi_mid = poly.peval(phi, np.exp(1j * mid))
        psi_mid = psi_lo + (2 - n) * (mid - lo) + 2.0 * np.angle(phi_mid / phi_lo)
        below = psi_mid <= targets
        lo = np.where(below, mid, lo)
        psi_lo = np.where(below, psi_mid, psi_lo)
        phi_lo = np.where(below, phi_mid, phi_lo)
        hi = np.where(below, hi, mid)
    t = 0.5 * (lo + hi)

    # one Newton step for Phi~_n along the circle
    pt = system.phi_tilde
    z = np.exp(1j * t)
    f = poly.peval(pt, z)
    fp = poly.peval(poly.derivative(pt), z)
    step = np.real(f / (1j * z * fp))
    t = t - np.where(np.abs(step) < 10 * tol_angle + 1e-10, step, 0.0)
    return np.sort(wrap_angle(t))


def weyl_eval(data, z):
    """``Phi_{n-1}(z) / Phi~_n(z)``, the (n, n) entry of the resolvent."""
    z = complex(z)
    system = szego_forward(data)
    if abs(abs(z) - 1) <= DISTINCT_TOL:
        eig = eigenvalues(data)
        if np.min(np.abs(unit_points(eig) - z)) <= DISTINCT_TOL:
            raise PoleProximity(f"z = {z!r} is at an eigenvalue")
    return poly.peval(system.phi_last, z) / poly.peval(system.phi_tilde, z)


def residue_masses(phi_last, phi_tilde, angles):
    """Raw residues ``Phi_{n-1}(zeta) / Phi~_n'(zeta)`` at the given points."""
    z = unit_points(angles)
    return poly.peval(phi_last, z) / poly.peval(poly.derivative(phi_tilde), z)


def spectral_measure(data, tol_angle=1e-12):
    system = szego_forward(data)
    angles = eigenvalues(data, tol_angle)
    raw = np.atleast_1d(residue_masses(system.phi_last, system.phi_tilde, angles))
    if np.max(np.abs(raw.imag)) >= 1e-8:
        raise NumericalDegeneracy(f"residue imaginary part {np.max(np.abs(raw.imag))!r}")
    masses = raw.real
    if np.min(masses) <= 1e-12:
        raise NonPositiveMass(f"computed mass {np.min(masses)!r}")
    total = masses.sum()
    defect = float(abs(total - 1.0))
    if defect >= 1e-8:
        raise NumericalDegeneracy(f"masses sum to {total!r} before normalization")
    log.debug("mass normalization defect %.3e", defect)
    return SpectralMeasure(angles, masses / total, defect)


def rotate(data, tau):
    tau = complex(tau)
    if abs(abs(tau) - 1) > 1e-12:
        raise TauNotUnimodular(f"|tau| = {abs(tau)!r}")
    validate(data)
    powers = tau ** np.arange(1, data.n)
    return VerblunskyData(data.alpha * powers, data.beta * tau ** data.n)
