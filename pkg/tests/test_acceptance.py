"""Acceptance gate: one test and one printed verdict line per criterion."""

import time

import numpy as np
import pytest

from conftest import random_gapped_config
from isingtop import (
    bloch_matrix,
    chern_analytic,
    chern_curvature,
    chern_plaquette,
    berry_connection,
    berry_curvature,
    crosscheck_energy_density,
    dense_eigenvalues,
    loop_trace,
    make_field_config,
    momentum_grid,
    realspace_matrix,
    scan_energy,
    spectral_factors,
    spectrum_match_distance,
)

REAL_TABLE = [((0.5, 1.0), 1.0), ((-0.5, 1.0), 1.0), ((2.0, 1.0), 0.0),
              ((-2.0, 1.0), 0.0), ((1.0, 1.0), 0.5)]
COMPLEX_TABLE = [((0.5, 0.3), 1.0), ((0.5, 0.5), 1.0), ((1.0, 1.0), 0.0),
                 ((0.6, 0.8), 0.5)]


def verdict(capsys, n, name, ok, detail):
    with capsys.disabled():
        print(f"criterion {n} ({name}): {'PASS' if ok else 'FAIL'} [{detail}]")
    assert ok, f"criterion {n} ({name}): {detail}"


def snap_half(x):
    return round(2.0 * x) / 2.0


def test_criterion_01_spectrum_identity(capsys):
    rng = np.random.default_rng(1001)
    ks = 2 * np.pi * (np.arange(64) + 0.37) / 64
    start = time.perf_counter()
    worst = 0.0
    for i in range(50):
        if i < 25:
            a, b = rng.uniform(-3, 3, size=2)
            c = make_field_config("real", float(a), float(b))
        else:
            a, b = rng.uniform(-2, 2, size=2)
            c = make_field_config("complex", float(a), float(b))
        for k in ks:
            f = spectral_factors(c, float(k))
            closed = np.array([-f.eps_plus, -f.eps_minus, f.eps_plus, f.eps_minus])
            dense = dense_eigenvalues(bloch_matrix(c, float(k)).entries)
            worst = max(worst, spectrum_match_distance(dense, closed))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-9 and elapsed < 2.0
    verdict(capsys, 1, "spectrum identity", ok,
            f"max diff {worst:.3e}, {elapsed:.2f}s for 50 configs x 64 k")


def test_criterion_02_real_chern_table(capsys):
    worst = 0.0
    ok = True
    for (a, b), expected in REAL_TABLE:
        c = make_field_config("real", a, b)
        for r in (chern_analytic(c, 512), chern_curvature(c, 512, 256)):
            residual = abs(r.raw - expected)
            worst = max(worst, residual)
            ok = ok and residual < 1e-3 and r.snapped == expected
    verdict(capsys, 2, "real Chern table", ok,
            f"both methods, 5 configs, max residual {worst:.3e}")


def test_criterion_03_complex_chern_table(capsys):
    worst = 0.0
    ok = True
    for (a, b), expected in COMPLEX_TABLE:
        c = make_field_config("complex", a, b)
        results = [chern_curvature(c, 512, 256)]
        if expected != 0.5:
            # lattice field strength over the same biorthonormal states
            results.append(chern_plaquette(c, 128, 64))
        results.append(chern_analytic(c, 512))
        for r in results:
            residual = abs(r.raw - expected)
            worst = max(worst, residual)
            ok = ok and residual < 1e-3 and r.snapped == expected
    verdict(capsys, 3, "complex Chern table", ok,
            f"biorthonormal pipeline, 4 configs, max residual {worst:.3e}")


def test_criterion_04_winding_equals_chern(capsys):
    ok = True
    checked = 0
    for kind, table in (("real", REAL_TABLE), ("complex", COMPLEX_TABLE)):
        for (a, b), expected in table:
            c = make_field_config(kind, a, b)
            w = snap_half(loop_trace(c, 2001).winding)
            ok = ok and w == chern_analytic(c, 512).snapped == expected
            checked += 1
    verdict(capsys, 4, "winding equals Chern", ok, f"{checked} configs")


def test_criterion_05_phase_boundary_scans(capsys):
    rays = [
        ("real", (0.0, 1.0), (3.0, 1.0), lambda a, b: a),
        ("complex", (0.0, 0.0), (2 / np.sqrt(2), 2 / np.sqrt(2)), np.hypot),
        ("real", (0.0, 0.0), (2.0, 2.0), lambda a, b: a),
    ]
    ok = True
    details = []
    for kind, start, end, param in rays:
        t0 = time.perf_counter()
        s = scan_energy(make_field_config(kind, *start), make_field_config(kind, *end))
        elapsed = time.perf_counter() - t0
        if len(s.critical_indices) != 1:
            ok = False
            details.append(f"{len(s.critical_indices)} criticals")
            continue
        value = float(param(*s.criticals[0]))
        ok = ok and abs(value - 1.0) <= 0.01 + 1e-12 and elapsed < 30.0
        details.append(f"{value:.4f} in {elapsed:.1f}s")
    verdict(capsys, 5, "phase boundary scans", ok, "; ".join(details))


def test_criterion_06_curvature_and_connection(capsys):
    rng = np.random.default_rng(2026)
    ks = 2 * np.pi * (np.arange(64) + 0.5) / 64
    phis = np.pi * np.arange(1, 65) / 65
    worst_curv, worst_conn, worst_aphi, worst_plain = 0.0, 0.0, 0.0, 0.0
    for kind in ("real", "complex"):
        for _ in range(5):
            c = random_gapped_config(rng, kind)
            for k in ks:
                for phi in phis:
                    wc = berry_curvature(c, float(k), float(phi), method="closed")
                    wp = berry_curvature(c, float(k), float(phi), method="plaquette")
                    ac, pc = berry_connection(c, float(k), float(phi), method="closed")
                    an, pn = berry_connection(c, float(k), float(phi), method="numeric")
                    worst_curv = max(worst_curv, abs(wc - wp) / (1 + abs(wc)))
                    worst_plain = max(worst_plain, abs(wc - wp) / max(abs(wc), 1e-300))
                    worst_conn = max(worst_conn, abs(ac - an) / (1 + abs(ac)))
                    worst_aphi = max(worst_aphi, abs(pn), abs(pc))
    ok = worst_curv < 1e-5 and worst_conn < 1e-5 and worst_aphi < 1e-8
    verdict(capsys, 6, "curvature and connection", ok,
            f"rel curv {worst_curv:.2e} (plain {worst_plain:.2e}), "
            f"rel conn {worst_conn:.2e}, |A_phi| {worst_aphi:.2e}")


def test_criterion_07_oracle_equivalence(capsys):
    start = time.perf_counter()
    configs = [make_field_config("real", 1.3, 0.4),
               make_field_config("real", 0.5, 1.0),
               make_field_config("complex", 0.5, 0.3),
               make_field_config("complex", 1.2, 0.7)]
    worst_union = 0.0
    for c in configs:
        for n_cells in (2, 4, 8):
            union = np.concatenate([
                dense_eigenvalues(bloch_matrix(c, float(k)).entries)
                for k in momentum_grid(n_cells)])
            rs = dense_eigenvalues(realspace_matrix(c, n_cells).entries)
            worst_union = max(worst_union, spectrum_match_distance(rs, union))

    monotone = True
    worst_gap = 0.0
    for c in (configs[0], configs[2]):
        report = crosscheck_energy_density(c, [2, 3, 4], 2001)
        monotone = monotone and report.monotone
        worst_gap = max(worst_gap, report.final_gap)

    worst_det = 0.0
    for c in configs:
        for m in range(16):
            k = 2 * np.pi * (m + 0.5) / 16
            h = bloch_matrix(c, k).entries
            f = spectral_factors(c, k)
            for eps in (f.eps_plus, f.eps_minus, -f.eps_plus, -f.eps_minus):
                worst_det = max(worst_det, abs(np.linalg.det(h - eps * np.eye(4))))
    elapsed = time.perf_counter() - start
    ok = (worst_union < 1e-9 and monotone and worst_gap <= 0.15
          and worst_det < 1e-6 and elapsed < 60.0)
    verdict(capsys, 7, "oracle equivalence", ok,
            f"union diff {worst_union:.2e}, final gap {worst_gap:.3f}, "
            f"det {worst_det:.2e}, {elapsed:.1f}s")


def test_criterion_08_dirac_biorthonormal_consistency(capsys):
    worst = 0.0
    for eta in (0.3, 0.9, 1.5):
        raw_c = chern_analytic(make_field_config("complex", eta, 0.0), 2001).raw
        raw_r = chern_analytic(make_field_config("real", eta, eta), 2001).raw
        worst = max(worst, abs(raw_c - raw_r))
    ok = worst < 1e-6
    verdict(capsys, 8, "Dirac/biorthonormal consistency", ok,
            f"max raw diff {worst:.2e} over eta in (0.3, 0.9, 1.5)")
