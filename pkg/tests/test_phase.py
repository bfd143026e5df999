"""Energy scans, critical-point detection, phase classification."""

import numpy as np
import pytest

from conftest import random_complex_config, random_real_config
from isingtop import (
    SizeTooSmall,
    classify,
    ground_energy_density,
    make_field_config,
    scan_energy,
    spectral_factors,
)


def min_edge_gap(config):
    # the lower band can only close at the zone center or edge
    return min(abs(spectral_factors(config, 0.0).eps_minus),
               abs(spectral_factors(config, np.pi).eps_minus))


def test_classify_regions():
    table = [
        (("real", 0.5, 1.0), "I"),
        (("real", -0.5, 1.0), "I"),
        (("real", 2.0, 1.0), "II"),
        (("real", -2.0, 1.0), "II"),
        (("real", 1.0, 1.0), "Boundary"),
        (("complex", 0.5, 0.3), "I"),
        (("complex", 1.0, 1.0), "II"),
        (("complex", 0.6, 0.8), "Boundary"),
    ]
    for args, label in table:
        assert classify(make_field_config(*args)).label == label


def test_boundary_iff_gap_closes():
    rng = np.random.default_rng(73)
    configs = [random_real_config(rng) for _ in range(20)]
    configs += [random_complex_config(rng) for _ in range(20)]
    # exact boundary members of both families
    configs += [make_field_config("real", 0.8, 1.25),
                make_field_config("real", -2.0, -0.5),
                make_field_config("complex", 0.6, 0.8),
                make_field_config("complex", 1.0, 0.0)]
    for c in configs:
        on_boundary = classify(c).label == "Boundary"
        assert on_boundary == (min_edge_gap(c) < 1e-6)


def test_scan_detects_transverse_ray():
    s = scan_energy(make_field_config("real", 0.0, 1.0),
                    make_field_config("real", 3.0, 1.0),
                    samples=151, num_k=501)
    assert len(s.critical_indices) == 1
    a_star, b_star = s.criticals[0]
    spacing = 3.0 / 150
    assert abs(a_star - 1.0) <= spacing + 1e-12
    assert b_star == 1.0


def test_scan_detects_complex_radial_ray():
    end = 2.0 / np.sqrt(2.0)
    s = scan_energy(make_field_config("complex", 0.0, 0.0),
                    make_field_config("complex", end, end),
                    samples=151, num_k=501)
    assert len(s.critical_indices) == 1
    a_star, b_star = s.criticals[0]
    r = float(np.hypot(a_star, b_star))
    spacing = 2.0 / 150
    assert abs(r - 1.0) <= spacing + 1e-12


def test_scan_detects_uniform_ray():
    s = scan_energy(make_field_config("real", 0.0, 0.0),
                    make_field_config("real", 2.0, 2.0),
                    samples=151, num_k=501)
    assert len(s.critical_indices) == 1
    g_star = s.criticals[0][0]
    spacing = 2.0 / 150
    assert abs(g_star - 1.0) <= spacing + 1e-12


def test_scan_random_rays_within_one_spacing():
    # rays cross |p| = 1 exactly once; detection lands within one sample step
    rng = np.random.default_rng(79)
    for _ in range(5):
        b = float(rng.uniform(0.5, 1.5))
        a_end = float(rng.uniform(2.2, 3.0))
        samples = int(rng.integers(101, 201))
        s = scan_energy(make_field_config("real", 0.1, b),
                        make_field_config("real", a_end, b),
                        samples=samples, num_k=501)
        assert len(s.critical_indices) == 1
        spacing = (a_end - 0.1) / (samples - 1)
        assert abs(s.criticals[0][0] - 1.0 / b) <= spacing + 1e-12


def test_scan_no_crossing_no_criticals():
    s = scan_energy(make_field_config("real", 0.1, 0.5),
                    make_field_config("real", 1.2, 0.5),
                    samples=101, num_k=501)
    assert len(s.critical_indices) == 0


def test_energy_continuous_across_boundary():
    # the density is continuous at the transition; probe shrinking offsets
    e0 = ground_energy_density(make_field_config("real", 1.0, 1.0), 4001)
    for delta in (1e-2, 1e-3):
        lo = ground_energy_density(make_field_config("real", 1.0 - delta, 1.0), 4001)
        hi = ground_energy_density(make_field_config("real", 1.0 + delta, 1.0), 4001)
        assert abs(lo - e0) <= 3 * delta
        assert abs(hi - e0) <= 3 * delta


def test_scan_second_derivative_shape():
    s = scan_energy(make_field_config("real", 0.0, 1.0),
                    make_field_config("real", 3.0, 1.0),
                    samples=101, num_k=201)
    assert len(s.energies) == 101
    assert np.isnan(s.second_derivative[0]) and np.isnan(s.second_derivative[-1])
    assert np.all(np.isfinite(s.second_derivative[1:-1]))


def test_scan_threads_deterministic(monkeypatch):
    start = make_field_config("complex", 0.0, 0.0)
    end = make_field_config("complex", 1.4, 1.4)
    seq = scan_energy(start, end, samples=101, num_k=201)
    monkeypatch.setenv("ISINGTOP_THREADS", "4")
    par = scan_energy(start, end, samples=101, num_k=201)
    assert np.array_equal(seq.energies, par.energies)
    assert seq.critical_indices == par.critical_indices


def test_scan_validation():
    real = make_field_config("real", 0.0, 1.0)
    other = make_field_config("complex", 1.0, 1.0)
    with pytest.raises(ValueError):
        scan_energy(real, other, samples=101)
    with pytest.raises(SizeTooSmall):
        scan_energy(real, make_field_config("real", 3.0, 1.0), samples=32)
    with pytest.raises(ValueError):
        scan_energy(real, real, samples=101)
