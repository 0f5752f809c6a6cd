"""Brute-force verifiers, independent of the recurrence-based main path."""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import poly
from .errors import BracketCountMismatch, IterationStalled, NumericalDegeneracy, SolveFailed
from .spectral import TWO_PI, wrap_angle


@dataclass(frozen=True)
class OracleConfig:
    grid_size: int = 4096
    inv_iter_steps: int = 50
    tol: float = 1e-10
    seed: int = 0


def dense_char_poly_at(C, z):
    """``det(z I - C)`` by LU with partial pivoting."""
    C = np.asarray(C, dtype=complex)
    return complex(np.linalg.det(z * np.eye(C.shape[0]) - C))


def resolvent_entry(C, z):
    """Last component of the solution of ``(z I - C) x = e_n``."""
    C = np.asarray(C, dtype=complex)
    n = C.shape[0]
    with warnings.catch_warnings():
        # an exactly singular system is reported below as SolveFailed
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(z * np.eye(n) - C, check_finite=True)
    if np.min(np.abs(np.diag(lu))) < 1e-14:
        raise SolveFailed("pivot below 1e-14")
    e = np.zeros(n, dtype=complex)
    e[-1] = 1.0
    return complex(scipy.linalg.lu_solve((lu, piv), e)[-1])


def eigvec_masses(C, eig_angles, cfg=OracleConfig()):
    """``|(h_j, e_n)|**2`` for each eigenvalue, eigenvectors by shifted inverse iteration."""
    C = np.asarray(C, dtype=complex)
    n = C.shape[0]
    rng = np.random.default_rng(cfg.seed)
    start = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    out = []
    for theta in np.atleast_1d(eig_angles):
        zeta = np.exp(1j * theta)
        shift = zeta * (1.0 + 1e-8)
        lu = scipy.linalg.lu_factor(C - shift * np.eye(n))
        h = start / np.linalg.norm(start)
        for _ in range(cfg.inv_iter_steps):
            h = scipy.linalg.lu_solve(lu, h)
            h /= np.linalg.norm(h)
            if np.linalg.norm(C @ h - zeta * h) < cfg.tol:
                break
        residual = np.linalg.norm(C @ h - zeta * h)
        if residual >= 10 * cfg.tol:
            raise IterationStalled(f"inverse iteration residual {residual:.3e}")
        out.append(abs(h[-1]) ** 2)
    return np.array(out)


def _aligned_real_part(p, theta):
    """Real-valued restriction of a self-inversive polynomial to the circle.

    For p = prod (z - e^{i phi_j}) of degree d,
    p(e^{it}) = (2i)^d e^{i (d t + sum phi) / 2} prod sin((t - phi_j) / 2);
    e^{i sum phi} is recovered from the constant coefficient.
    """
    d = p.size - 1
    c0 = (-1) ** d * p[0] / p[-1]
    half = np.exp(0.5j * np.angle(c0))
    align = np.conj((1j ** d) * half) / p[-1]
    vals = np.exp(-0.5j * d * theta) * poly.peval(p, np.exp(1j * theta)) * align
    return vals


def grid_root_scan(p, cfg=OracleConfig()):
    """Unit-circle roots of ``p`` by sign changes on a uniform grid plus bisection."""
    p = poly.trim(p)
    d = p.size - 1
    if d == 0:
        return np.array([])
    if cfg.grid_size < 16 * d:
        raise ValueError("grid_size must be at least 16 * degree")
    offset = -np.pi / cfg.grid_size / 3.0
    theta = offset + TWO_PI * np.arange(cfg.grid_size + 1) / cfg.grid_size
    vals = _aligned_real_part(p, theta)
    scale = np.max(np.abs(vals))
    if np.max(np.abs(vals.imag)) > 1e-6 * scale:
        raise NumericalDegeneracy("polynomial is not self-inversive on the circle")
    f = vals.real
    idx = np.flatnonzero(np.sign(f[:-1]) * np.sign(f[1:]) < 0)
    exact = np.flatnonzero(f[:-1] == 0)
    if idx.size + exact.size != d:
        raise BracketCountMismatch(f"found {idx.size + exact.size} sign changes, expected {d}")
    lo, hi = theta[idx], theta[idx + 1]
    flo = f[idx]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        fm = _aligned_real_part(p, mid).real
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
    roots = np.concatenate([0.5 * (lo + hi), theta[exact]])
    return np.sort(wrap_angle(roots))


def alternates(x1, x2):
    """Direct interlacing test: merge the two angle sets around the circle
    and check that membership strictly alternates.
    """
    x1 = wrap_angle(np.asarray(x1, dtype=float))
    x2 = wrap_angle(np.asarray(x2, dtype=float))
    if x1.size != x2.size:
        return False
    tags = np.concatenate([np.zeros(x1.size, int), np.ones(x2.size, int)])
    order = np.argsort(np.concatenate([x1, x2]), kind="stable")
    seq = tags[order]
    return bool(np.all(seq != np.roll(seq, 1)))
