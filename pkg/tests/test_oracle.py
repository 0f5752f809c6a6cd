import numpy as np
import pytest
from conftest import seeded_data, zeros_data

from cmvinverse import oracle
from cmvinverse.cmv import assemble, szego_forward
from cmvinverse.errors import BracketCountMismatch, SolveFailed
from cmvinverse.spectral import eigenvalues, spectral_measure


def test_dense_char_poly_at():
    swap = np.array([[0, 1], [1, 0]])
    assert oracle.dense_char_poly_at(swap, 0) == pytest.approx(-1)
    shift = assemble(zeros_data(3))
    assert abs(oracle.dense_char_poly_at(shift, 1)) < 1e-15


def test_resolvent_entry():
    beta = np.exp(0.5j)
    assert oracle.resolvent_entry([[np.conj(beta)]], 2) == pytest.approx(1 / (2 - np.conj(beta)))
    assert oracle.resolvent_entry([[0, 1], [1, 0]], 2j) == pytest.approx(2j / -5)
    with pytest.raises(SolveFailed):
        oracle.resolvent_entry([[0, 1], [1, 0]], 1)


def test_eigvec_masses():
    for n in (1, 4, 7):
        C = assemble(zeros_data(n))
        got = oracle.eigvec_masses(C, eigenvalues(zeros_data(n)))
        np.testing.assert_allclose(got, np.full(n, 1 / n), atol=1e-9)


def test_eigvec_masses_is_deterministic():
    data = seeded_data(2, 6)
    C = assemble(data)
    e = eigenvalues(data)
    np.testing.assert_array_equal(oracle.eigvec_masses(C, e), oracle.eigvec_masses(C, e))
    assert np.max(np.abs(oracle.eigvec_masses(C, e) - spectral_measure(data).masses)) < 1e-7


def test_grid_root_scan():
    np.testing.assert_allclose(oracle.grid_root_scan(np.array([-1, 0, 1], complex)), [0, np.pi], atol=1e-12)
    got = oracle.grid_root_scan(np.array([-1, 0, 0, 0, 1], complex))
    np.testing.assert_allclose(got, np.arange(4) * np.pi / 2, atol=1e-12)


def test_grid_root_scan_count_guard():
    # two roots closer than the grid spacing produce no sign change between them
    p = np.array([1, -2 * np.cos(1e-4), 1], dtype=complex)
    with pytest.raises(BracketCountMismatch):
        oracle.grid_root_scan(p, oracle.OracleConfig(grid_size=64))


def test_grid_root_scan_matches_eigenvalues():
    for seed in range(20):
        data = seeded_data(seed, 2 + seed % 10)
        got = oracle.grid_root_scan(szego_forward(data).phi_tilde)
        np.testing.assert_allclose(got, eigenvalues(data), atol=1e-9)


def test_alternates():
    assert oracle.alternates([0, np.pi], [1, 4])
    assert not oracle.alternates([0, 0.5], [1, 4])
    assert not oracle.alternates([0], [1, 2])


def test_oracles_agree_with_primary_path_on_200_seeds():
    from cmvinverse import poly
    from cmvinverse.spectral import weyl_eval

    for seed in range(200):
        data = seeded_data(seed, 1 + seed % 12)
        C = assemble(data)
        system = szego_forward(data)
        e = eigenvalues(data)
        z = 2.0 * np.exp(0.7j * (seed + 1))
        ref = oracle.dense_char_poly_at(C, z)
        assert abs(poly.peval(system.phi_tilde, z) - ref) / abs(ref) < 1e-9
        w = oracle.resolvent_entry(C, z)
        assert abs(weyl_eval(data, z) - w) / abs(w) < 1e-8
        if data.n > 1:
            np.testing.assert_allclose(oracle.grid_root_scan(system.phi_tilde), e, atol=1e-9)
        assert np.max(np.abs(oracle.eigvec_masses(C, e) - spectral_measure(data).masses)) < 1e-7
