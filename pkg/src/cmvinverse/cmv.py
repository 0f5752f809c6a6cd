"""Finite CMV matrices and their Szegő polynomials.

A finite CMV matrix of order ``n`` is parameterized by Verblunsky
coefficients ``alpha[0..n-2]`` in the open unit disk and a unimodular
boundary parameter ``beta``.
"""

from dataclasses import dataclass, field

import numpy as np

from . import poly
from .errors import (
    AlphaOutOfDisk,
    BetaNotUnimodular,
    LengthMismatch,
    NumericalDegeneracy,
    RootOffCircle,
)

DISK_TOL = 1e-12
UNIMODULAR_TOL = 1e-12


def _frozen(a):
    a = np.array(a, dtype=complex).ravel()
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class VerblunskyData:
    alpha: np.ndarray
    beta: complex
    n: int = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", _frozen(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if self.n is None:
            object.__setattr__(self, "n", self.alpha.size + 1)
        else:
            object.__setattr__(self, "n", int(self.n))

    @property
    def rho(self):
        return np.sqrt(1.0 - np.abs(self.alpha) ** 2)

    def __repr__(self):
        return f"VerblunskyData(alpha={self.alpha.tolist()!r}, beta={self.beta!r})"


@dataclass(frozen=True, eq=False)
class SzegoSystem:
    """Monic chain ``phi[0..n-1]`` plus the paraorthogonal ``phi_tilde`` of degree n."""

    phi: list = field(default_factory=list)
    phi_tilde: np.ndarray = None

    @property
    def n(self):
        return self.phi_tilde.size - 1

    @property
    def phi_last(self):
        return self.phi[-1]


def validate(data):
    if data.n != data.alpha.size + 1 or data.n < 1:
        raise LengthMismatch(f"n={data.n} but {data.alpha.size} Verblunsky coefficients given")
    if not (np.all(np.isfinite(data.alpha)) and np.isfinite(data.beta)):
        raise AlphaOutOfDisk("non-finite parameters")
    mods = np.abs(data.alpha)
    if mods.size and mods.max() >= 1 - DISK_TOL:
        j = int(mods.argmax())
        raise AlphaOutOfDisk(f"|alpha[{j}]| = {mods[j]!r} is not inside the unit disk")
    if abs(abs(data.beta) - 1) >= UNIMODULAR_TOL:
        raise BetaNotUnimodular(f"|beta| = {abs(data.beta)!r}")


def theta_block(alpha):
    alpha = complex(alpha)
    if not np.isfinite(alpha) or abs(alpha) >= 1 - DISK_TOL:
        raise AlphaOutOfDisk(f"|alpha| = {abs(alpha)!r}")
    rho = np.sqrt(1.0 - abs(alpha) ** 2)
    return np.array([[alpha.conjugate(), rho], [rho, -alpha]], dtype=complex)


def lm_factors(data):
    """The block-diagonal factors ``L`` and ``M`` with ``C = L @ M``.

    Theta(alpha_j) sits at rows/columns (j, j+1) of L for even j and of M
    for odd j; M starts with a 1x1 identity block, and whichever factor
    would need a block at position n-1 receives the 1x1 block conj(beta).
    """
    validate(data)
    n = data.n
    L = np.zeros((n, n), dtype=complex)
    M = np.zeros((n, n), dtype=complex)
    M[0, 0] = 1.0
    for j, a in enumerate(data.alpha):
        target = L if j % 2 == 0 else M
        target[j:j + 2, j:j + 2] = theta_block(a)
    last = L if (n - 1) % 2 == 0 else M
    last[n - 1, n - 1] = data.beta.conjugate()
    return L, M


def assemble(data):
    L, M = lm_factors(data)
    return L @ M


def structural_mask(n):
    """Boolean mask of entries of an order-n CMV matrix that are not structurally zero."""
    Ls = np.zeros((n, n), dtype=bool)
    Ms = np.zeros((n, n), dtype=bool)
    Ms[0, 0] = True
    for j in range(n - 1):
        target = Ls if j % 2 == 0 else Ms
        target[j:j + 2, j:j + 2] = True
    last = Ls if (n - 1) % 2 == 0 else Ms
    last[n - 1, n - 1] = True
    return (Ls.astype(int) @ Ms.astype(int)) > 0


def unitarity_defect(C):
    return float(np.max(np.abs(C @ C.conj().T - np.eye(C.shape[0]))))


def szego_step(p, a):
    """``z p(z) - conj(a) p*(z)`` with p* taken at degree ``deg p``."""
    k = p.size - 1
    return poly.padd(poly.shift_up(p), -np.conj(a) * poly.reversed_poly(p, k))


def szego_forward(data):
    validate(data)
    phi = [np.ones(1, dtype=complex)]
    for a in data.alpha:
        phi.append(szego_step(phi[-1], a))
    return SzegoSystem(phi=phi, phi_tilde=szego_step(phi[-1], data.beta))


def szego_inverse(phi_last, remainder_tol=1e-9):
    """Recover Verblunsky coefficients from the last orthogonal polynomial.

    Returns ``(alpha, phi)`` where ``phi`` is the chain Phi_0..Phi_{n-1}.
    Raises NumericalDegeneracy if some recovered coefficient reaches the
    unit circle, which happens exactly when ``phi_last`` has a root outside
    the open disk.
    """
    p = poly.trim(phi_last)
    poly.check_monic(p, p.size - 1)
    p = p / p[-1]
    chain = [p]
    alphas = []
    while p.size > 1:
        a = -np.conj(p[0])
        if abs(a) >= 1 - DISK_TOL:
            raise NumericalDegeneracy(
                f"|alpha[{p.size - 2}]| = {abs(a)!r}: polynomial has roots on or outside the circle"
            )
        q = p + np.conj(a) * poly.reversed_poly(p, p.size - 1)
        if abs(q[0]) > remainder_tol:
            raise NumericalDegeneracy(f"inverse Szegő remainder {abs(q[0])!r}")
        p = q[1:] / (1.0 - abs(a) ** 2)
        alphas.append(a)
        chain.append(p)
    return np.array(alphas[::-1], dtype=complex), chain[::-1]


def beta_from_spectrum(roots, tol=1e-8):
    z = np.asarray(roots, dtype=complex).ravel()
    mods = np.abs(z)
    if z.size == 0:
        raise RootOffCircle("empty spectrum")
    if np.max(np.abs(mods - 1)) > tol:
        raise RootOffCircle(f"root modulus {mods[np.argmax(np.abs(mods - 1))]!r}")
    z = z / mods
    n = z.size
    beta = (-1) ** (n + 1) * np.prod(np.conj(z))
    return complex(beta / abs(beta))
