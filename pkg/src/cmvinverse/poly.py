"""Dense complex polynomials.

A polynomial is a 1-D complex numpy array of coefficients stored low to
high: ``p[k]`` is the coefficient of ``z**k``.  The zero polynomial is
``array([0j])``; coefficient arrays are never empty.
"""

import numpy as np

from .errors import DegreeMismatch, NonMonic

MONIC_TOL = 1e-12


def as_poly(coeffs):
    p = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    if p.ndim != 1:
        raise ValueError("polynomial coefficients must be one-dimensional")
    if p.size == 0:
        return np.zeros(1, dtype=complex)
    if not np.all(np.isfinite(p)):
        raise ValueError("polynomial coefficients must be finite")
    return p


def degree(p, tol=0.0):
    """Index of the highest coefficient with modulus above ``tol``.

    The zero polynomial has degree 0 by convention.
    """
    nz = np.flatnonzero(np.abs(p) > tol)
    return int(nz[-1]) if nz.size else 0


def trim(p, tol=0.0):
    return as_poly(p)[: degree(p, tol) + 1].copy()


def peval(p, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    z = np.asarray(z, dtype=complex)
    acc = np.full(z.shape, p[-1], dtype=complex)
    for c in p[-2::-1]:
        acc = acc * z + c
    return acc if acc.ndim else complex(acc)


def reversed_poly(p, k):
    """The *-operation with respect to degree ``k``: ``z**k * conj(p(1/conj(z)))``."""
    p = as_poly(p)
    if degree(p) > k:
        raise DegreeMismatch(f"degree {degree(p)} exceeds reversal degree {k}")
    padded = np.zeros(k + 1, dtype=complex)
    m = min(p.size, k + 1)
    padded[:m] = p[:m]
    return np.conj(padded[::-1])


def from_roots(roots):
    """Monic polynomial with the given roots, one linear factor at a time."""
    p = np.ones(1, dtype=complex)
    for r in np.asarray(roots, dtype=complex).ravel():
        q = np.zeros(p.size + 1, dtype=complex)
        q[1:] = p
        q[:-1] -= r * p
        p = q
    return p


def derivative(p):
    p = as_poly(p)
    if p.size == 1:
        return np.zeros(1, dtype=complex)
    return p[1:] * np.arange(1, p.size)


def shift_up(p):
    """Multiply by ``z``."""
    return np.concatenate([[0j], p])


def padd(p, q):
    out = np.zeros(max(p.size, q.size), dtype=complex)
    out[: p.size] += p
    out[: q.size] += q
    return out


def synthetic_division(p, root):
    """Divide ``p`` by ``z - root``; returns ``(quotient, remainder)``."""
    p = as_poly(p)
    if p.size == 1:
        return np.zeros(1, dtype=complex), complex(p[0])
    q = np.zeros(p.size - 1, dtype=complex)
    acc = p[-1]
    for k in range(p.size - 2, -1, -1):
        q[k] = acc
        acc = p[k] + root * acc
    return q, complex(acc)


def monic(p, deg=None):
    """Renormalize ``p`` to be monic of degree ``deg``.

    Returns ``(monic_poly, defect)`` where ``defect`` is ``|lead - 1|``
    before renormalization.  Raises NonMonic when the leading coefficient
    vanishes.
    """
    p = as_poly(p)
    if deg is None:
        deg = degree(p)
    if p.size <= deg or p[deg] == 0:
        raise NonMonic(f"no coefficient at degree {deg}")
    if deg + 1 < p.size and np.max(np.abs(p[deg + 1:])) > MONIC_TOL:
        raise NonMonic(f"nonzero coefficients above degree {deg}")
    lead = p[deg]
    return p[: deg + 1] / lead, float(abs(lead - 1))


def check_monic(p, deg, tol=MONIC_TOL):
    p = trim(p)
    if p.size != deg + 1:
        raise NonMonic(f"expected degree {deg}, got {p.size - 1}")
    lead = p[deg]
    if abs(abs(lead) - 1) > tol or abs(np.angle(lead)) > tol:
        raise NonMonic(f"leading coefficient {lead} is not 1")
