import numpy as np
import pytest

from cmvinverse.cmv import VerblunskyData
from cmvinverse.harness import random_data, trial_rng


def zeros_data(n, beta=1.0):
    return VerblunskyData(np.zeros(n - 1), beta)


def explicit_cmv(data):
    """Entrywise CMV matrix from the closed-form pattern.

    Rows 2k and 2k+1 involve alpha_{2k-1}, alpha_{2k}, alpha_{2k+1}; the
    sequence is extended by alpha_{-1} = -1 and alpha_{n-1} = beta (so the
    matching rho values vanish) and the order-n principal block is kept.
    """
    n = data.n
    a = np.concatenate([[-1.0], data.alpha, [data.beta], np.zeros(3)]).astype(complex)
    r = np.sqrt(np.maximum(0.0, 1.0 - np.abs(a) ** 2))
    r[0] = 0.0
    r[n] = 0.0

    def A(j):
        return a[j + 1]

    def R(j):
        return r[j + 1]

    size = n + 1
    C = np.zeros((size, size), dtype=complex)
    for k in range(0, size // 2):
        i = 2 * k
        for row, vals in (
            (i, (np.conj(A(i)) * R(i - 1), -np.conj(A(i)) * A(i - 1), np.conj(A(i + 1)) * R(i), R(i + 1) * R(i))),
            (i + 1, (R(i) * R(i - 1), -R(i) * A(i - 1), -np.conj(A(i + 1)) * A(i), -R(i + 1) * A(i))),
        ):
            for off, v in zip(range(-1, 3), vals):
                col = i + off
                if 0 <= row < size and 0 <= col < size:
                    C[row, col] = v
    return C[:n, :n]


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def seeded_data(seed, n, radius=0.9):
    return random_data(trial_rng(seed, 0), n, radius)


def lattice_alternates(sel1, sel2, size):
    """Alternation for index selections on a ``size``-point lattice.

    Membership alternates around the circle iff the running count
    (#first - #second) never spreads over more than one value.
    """
    steps = np.zeros((sel1.shape[0], size), dtype=np.int8)
    rows = np.arange(sel1.shape[0])[:, None]
    steps[rows, sel1] = 1
    steps[rows, sel2] = -1
    walk = np.cumsum(steps, axis=1)
    return (walk.max(axis=1) - walk.min(axis=1)) <= 1
