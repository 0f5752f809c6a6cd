"""Seeded random instances and round-trip trials.

Randomness comes from numpy's PCG64 generator.  Trial ``k`` of a run
with seed ``s`` draws from ``default_rng([s, k])``, so each trial is
reproducible on its own and trials can run in any order.

Draw order inside an instance: for each Verblunsky coefficient a radius
``r * sqrt(u)`` then an angle ``2 pi v`` (uniform on the disk of radius
r); then the angle of beta (uniform on the circle).
"""

import numpy as np

from .cmv import VerblunskyData, szego_forward
from .interlace import interlaces
from .inverse import (
    from_measure,
    from_two_spectra,
    max_spectrum_distance,
    truncation_regular,
    truncation_singular,
)
from .spectral import angle_of, eigenvalues, spectral_measure
from .truncation import compute_B, masses_from_truncation, singular_partner, truncate_direct

MODES = ("measure", "two-spectra", "trunc-regular", "trunc-singular")
FAMILY_T = (0.25, 0.5, 0.75)


def trial_rng(seed, trial):
    return np.random.default_rng([seed, trial])


def random_unit(rng):
    return complex(np.exp(2j * np.pi * rng.random()))


def random_data(rng, n, radius=0.9):
    alpha = np.empty(n - 1, dtype=complex)
    for j in range(n - 1):
        r = radius * np.sqrt(rng.random())
        alpha[j] = r * np.exp(2j * np.pi * rng.random())
    return VerblunskyData(alpha, random_unit(rng))


def random_beta_pair(rng, min_sep=0.1):
    """Two boundary parameters at angular distance above ``min_sep``."""
    b1 = random_unit(rng)
    while True:
        b2 = random_unit(rng)
        if abs(np.angle(b2 / b1)) > min_sep:
            return b1, b2


def _alpha_err(a, b):
    return float(np.max(np.abs(a.alpha - b.alpha))) if a.alpha.size else 0.0


def singular_instance(rng, n, radius=0.9):
    """A data set and a ``beta2`` whose truncation shares exactly one eigenvalue."""
    data1 = random_data(rng, n, radius)
    index = int(rng.integers(n))
    return data1, singular_partner(data1, index)


def trial_measure(rng, n, radius=0.9):
    data = random_data(rng, n, radius)
    back = from_measure(spectral_measure(data))
    return {
        "n": n,
        "alpha_err": _alpha_err(back, data),
        "beta_err": abs(back.beta - data.beta),
    }


def trial_two_spectra(rng, n, radius=0.9):
    data = random_data(rng, n, radius)
    b1, b2 = random_beta_pair(rng)
    d1 = VerblunskyData(data.alpha, b1)
    d2 = VerblunskyData(data.alpha, b2)
    s1, s2 = eigenvalues(d1), eigenvalues(d2)
    pair = from_two_spectra(s1, s2)
    return {
        "n": n,
        "interlaces": interlaces(s1, s2),
        "alpha_err": _alpha_err(pair.data1, d1),
        "beta_err": max(abs(pair.data1.beta - b1), abs(pair.data2.beta - b2)),
    }


def trial_trunc_regular(rng, n, radius=0.9):
    data1 = random_data(rng, n, radius)
    report = truncate_direct(data1, random_unit(rng))
    if report.singular:
        return {"n": n, "skipped": True}
    pair = truncation_regular(report.spectrum_full, report.spectrum_trunc, angle_of(report.B))
    b_out = compute_B(pair.data1.alpha[-1], pair.data1.beta, pair.data2.beta)
    return {
        "n": n,
        "skipped": False,
        "data_err": max(
            _alpha_err(pair.data1, data1),
            abs(pair.data1.beta - data1.beta),
            abs(pair.data2.beta - report.data2.beta),
        ),
        "pivot_err": abs(b_out - report.B),
    }


def trial_trunc_singular(rng, n, radius=0.9):
    data1, beta2 = singular_instance(rng, n, radius)
    report = truncate_direct(data1, beta2)
    if not report.singular:
        return {"n": n, "skipped": True}
    s1, s2 = report.spectrum_full, report.spectrum_trunc
    measure = spectral_measure(data1)
    t_orig = 1.0 - measure.masses[report.shared_index]
    orig = truncation_singular(s1, s2, t_orig)
    family = [truncation_singular(s1, s2, t) for t in FAMILY_T]
    spec_err = max(
        max(max_spectrum_distance(eigenvalues(p.data1), s1),
            max_spectrum_distance(eigenvalues(p.data2), s2))
        for p in family
    )
    sep = min(
        _alpha_err(family[i].data1, family[j].data1) if n > 1 else 0.0
        for i in range(3) for j in range(i + 1, 3)
    )
    phi_t = szego_forward(data1).phi_tilde
    phi_t2 = szego_forward(report.data2).phi_tilde
    mass_err = float(np.max(np.abs(masses_from_truncation(report, phi_t, phi_t2) - measure.masses)))
    return {
        "n": n,
        "skipped": False,
        "orig_err": max(
            _alpha_err(orig.data1, data1),
            abs(orig.data1.beta - data1.beta),
            abs(orig.data2.beta - beta2),
        ),
        "family_spectra_err": spec_err,
        "family_min_separation": sep,
        "mass_err": mass_err,
    }


TRIALS = {
    "measure": trial_measure,
    "two-spectra": trial_two_spectra,
    "trunc-regular": trial_trunc_regular,
    "trunc-singular": trial_trunc_singular,
}


def run_roundtrip(mode, n, seed, trials, radius=0.9):
    fn = TRIALS[mode]
    if mode.startswith("trunc") and n < 2:
        raise ValueError("truncation modes need n >= 2")
    return [dict(trial=k, **fn(trial_rng(seed, k), n, radius)) for k in range(trials)]
