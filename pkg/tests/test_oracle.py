"""Dense eigensolver and spin-chain cross-checks."""

import numpy as np
import pytest
import scipy.linalg

from conftest import random_complex_config, random_real_config
from isingtop import (
    NoConvergence,
    TooLarge,
    bloch_matrix,
    crosscheck_energy_density,
    dense_eigenvalues,
    make_field_config,
    make_spin_chain_spec,
    spectral_factors,
    spectrum_match_distance,
    spin_hamiltonian,
)


def test_pauli_x_eigenvalues():
    eigs = dense_eigenvalues(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
    assert np.allclose(eigs, [-1.0, 1.0])


def test_diagonal_passthrough():
    d = np.diag([3.0 + 0j, -1.0, 2.0])
    eigs = dense_eigenvalues(d, hermitian=False)
    assert spectrum_match_distance(eigs, np.array([-1.0, 2.0, 3.0])) < 1e-12


def test_bloch_matches_closed_form():
    rng = np.random.default_rng(53)
    for _ in range(25):
        kind = "real" if rng.uniform() < 0.5 else "complex"
        c = random_real_config(rng) if kind == "real" else random_complex_config(rng)
        k = float(rng.uniform(0, 2 * np.pi))
        f = spectral_factors(c, k)
        expected = np.array([f.eps_plus, f.eps_minus, -f.eps_plus, -f.eps_minus])
        eigs = dense_eigenvalues(bloch_matrix(c, k).entries)
        assert spectrum_match_distance(eigs, expected) < 1e-9


def test_similarity_invariance():
    rng = np.random.default_rng(59)
    for _ in range(10):
        n = int(rng.integers(3, 9))
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        q, _ = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
        sim = q @ m @ q.conj().T
        assert spectrum_match_distance(
            dense_eigenvalues(m, hermitian=False),
            dense_eigenvalues(sim, hermitian=False)) < 1e-8


def test_hermitian_fast_path_real_output():
    rng = np.random.default_rng(61)
    a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    h = (a + a.conj().T) / 2
    eigs = dense_eigenvalues(h)
    assert np.max(np.abs(eigs.imag)) == 0.0
    assert np.allclose(np.sort(eigs.real), scipy.linalg.eigvalsh(h), atol=1e-10)


def test_forced_general_path_on_hermitian():
    rng = np.random.default_rng(67)
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    h = (a + a.conj().T) / 2
    eigs = dense_eigenvalues(h, hermitian=False)
    ref = scipy.linalg.eigvalsh(h).astype(complex)
    assert spectrum_match_distance(eigs, ref) < 1e-8


def test_scipy_crosscheck_general():
    rng = np.random.default_rng(71)
    for _ in range(20):
        m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        eigs = dense_eigenvalues(m, hermitian=False)
        ref = scipy.linalg.eigvals(m)
        assert spectrum_match_distance(eigs, ref) < 1e-8


def test_defective_jordan_block():
    # defective matrix: eigenvalue perturbation is O(sqrt(ulp)), not a failure
    m = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)
    eigs = dense_eigenvalues(m, hermitian=False)
    assert np.max(np.abs(eigs - 1.0)) < 1e-6


def test_dense_size_cap():
    with pytest.raises(TooLarge):
        dense_eigenvalues(np.zeros((5000, 5000), dtype=complex))


def test_spectrum_match_distance_conjugate_pairs():
    # positional lexicographic pairing would report 1.2 here
    a = np.array([0.5 + 0.6j, 0.5 - 0.6j])
    b = np.array([0.5 - 0.6j, 0.5 + 0.6j + 1e-15])
    assert spectrum_match_distance(a, b) < 1e-14
    with pytest.raises(ValueError):
        spectrum_match_distance(a, np.array([1.0 + 0j]))


def test_spin_hamiltonian_two_sites_free():
    # two-site ring, no transverse field: H = -2 sz sz, eigenvalues {-2, -2, 2, 2}
    spec = make_spin_chain_spec(make_field_config("real", 0.0, 0.0), 1)
    h = spin_hamiltonian(spec)
    eigs = dense_eigenvalues(h)
    assert np.allclose(np.sort(eigs.real), [-2.0, -2.0, 2.0, 2.0], atol=1e-12)


def test_spin_chain_size_caps():
    with pytest.raises(TooLarge):
        make_spin_chain_spec(make_field_config("real", 1.0, 1.0), 8)
    with pytest.raises(TooLarge):
        make_spin_chain_spec(make_field_config("complex", 1.0, 1.0), 5)


def test_crosscheck_real_config():
    report = crosscheck_energy_density(make_field_config("real", 1.3, 0.4), [2, 3, 4], 1001)
    assert report.monotone
    assert report.final_gap <= 0.15
    assert report.gaps[0] > report.gaps[-1] > 0


def test_crosscheck_complex_config():
    report = crosscheck_energy_density(make_field_config("complex", 0.5, 0.3), [2, 3, 4], 1001)
    assert report.monotone
    assert report.final_gap <= 0.15


def test_crosscheck_uniform_matches_known_density():
    # g1 = g2 = 2 deep in the disordered phase: finite-size gap is tiny
    report = crosscheck_energy_density(make_field_config("real", 2.0, 2.0), [2, 3, 4], 2001)
    assert report.final_gap <= 0.02
