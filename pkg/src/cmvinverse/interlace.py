"""Circular labeling of point sets and the sign test for interlacing.

All functions act on the last axis, so a stack of point sets of shape
``(..., m)`` is handled in one call.
"""

import numpy as np

from .errors import CommonPoint, DuplicatePoints, NumericalDegeneracy, SizeMismatch
from .spectral import DISTINCT_TOL, TWO_PI, chordal, wrap_angle

OMEGA_FLOOR = 1e-14


def sort_circular(angles):
    """Angles wrapped into ``[0, 2*pi)`` and sorted ascending."""
    a = np.sort(wrap_angle(np.atleast_1d(np.asarray(angles, dtype=float))), axis=-1)
    if a.shape[-1] > 1:
        gaps = np.diff(np.concatenate([a, a[..., :1] + TWO_PI], axis=-1), axis=-1)
        if np.min(2.0 * np.sin(np.minimum(gaps, np.pi) / 2.0)) <= DISTINCT_TOL:
            raise DuplicatePoints("points are not pairwise distinct")
    return a


def cross_distances(x, y):
    return chordal(np.asarray(x)[..., :, None], np.asarray(y)[..., None, :])


def omega_values(z1, z2):
    """For each point of ``z1``, the product of half-angle sines to ``z2``
    divided by the product of half-angle sines to the rest of ``z1``.
    """
    x1 = sort_circular(z1)
    x2 = sort_circular(z2)
    if x1.shape != x2.shape:
        raise SizeMismatch(f"{x1.shape[-1]} points vs {x2.shape[-1]} points")
    if np.min(cross_distances(x1, x2)) <= DISTINCT_TOL:
        raise CommonPoint("the two sets share a point")
    num = np.sin((x1[..., :, None] - x2[..., None, :]) / 2.0)
    den = np.sin((x1[..., :, None] - x1[..., None, :]) / 2.0)
    den = np.where(np.eye(x1.shape[-1], dtype=bool), 1.0, den)
    omega = np.prod(num, axis=-1) / np.prod(den, axis=-1)
    if np.min(np.abs(omega)) <= OMEGA_FLOOR:
        raise NumericalDegeneracy("omega value numerically zero")
    return omega


def interlaces(z1, z2):
    """True when all omega values share one sign; an array of flags for stacked input."""
    s = np.sign(omega_values(z1, z2))
    flags = np.all(s == s[..., :1], axis=-1)
    return bool(flags) if flags.ndim == 0 else flags
