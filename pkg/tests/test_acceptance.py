"""
Acceptance suite: twelve criteria, each checked at its stated tolerance.

Every test records one ``CRITERION k: PASS|FAIL  detail`` line; the lines are
printed in the terminal summary (see conftest.py), and also when the file is
run directly with ``python3 tests/test_acceptance.py``.
"""

import math
import time

import gmpy2
import numpy as np

from qbaker.baker import (
    BakerFamilyParams,
    baker_apply,
    baker_dense,
    baker_dense_dyadic,
    baker_dense_position_rep,
    balazs_voros_dense,
    exact_propagator_grid,
)
from qbaker.classical import W_MIXED_DERIVATIVE, baker_step_complex, generating_W
from qbaker.coherent import PhasePoint, cell_centres, coherent_state, normalization_sq, theta0, theta_window
from qbaker.precise import exact_propagator_hp
from qbaker.semiclassical import (
    SemiclassicalRegime,
    classical_image,
    compare_exact_semiclassical,
    hump_catalog,
    is_singular_a2,
    psi_kappa_curve,
    stochastic_propagator,
    two_hump_weights,
    vanvleck_explicit,
    vanvleck_generic,
)
from qbaker.torus import StateVector, TorusSpace, fourier_matrix, partial_fourier_matrix

RESULTS = {}

# first extended-precision run of | |<b|B_1|a>|^2 - 4/5 | at N = 12, a = 0.3 + 0.7i
PINNED_THETA0_N12 = "9.1122449103777e-354"  # below the double range, kept as text


def record(k, ok, detail):
    RESULTS[k] = f"CRITERION {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[k])
    return ok


def random_state(space, rng):
    return StateVector.random(space, rng)


def test_criterion_01_unitarity():
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    worst_norm = 0.0
    for N in range(1, 11):
        space = TorusSpace.qubits(N)
        for n in range(1, N + 1):
            P = BakerFamilyParams(N, n)
            for _ in range(20):
                psi = random_state(space, rng)
                worst_norm = max(worst_norm, abs(baker_apply(psi, P).norm() - psi.norm()))
    worst_g = 0.0
    for N in range(1, 9):
        for n in range(N + 1):
            G = partial_fourier_matrix(N, n)
            worst_g = max(worst_g, np.abs(G.conj().T @ G - np.eye(2 ** N)).max())
    dt = time.perf_counter() - t0
    ok = worst_norm < 1e-12 and worst_g < 1e-10 and dt < 60
    assert record(1, ok, f"max|norm change| {worst_norm:.2e} (tol 1e-12), "
                         f"max|G^+G - I| {worst_g:.2e} (tol 1e-10), {dt:.1f}s (limit 60s)")


def test_criterion_02_limits():
    worst0 = worst_n = 0.0
    for N in range(1, 9):
        D = 2 ** N
        worst0 = max(worst0, np.abs(partial_fourier_matrix(N, 0) - fourier_matrix(TorusSpace(D))).max())
        worst_n = max(worst_n, np.abs(partial_fourier_matrix(N, N) - 1j * np.eye(D)).max())
    ok = worst0 < 1e-12 and worst_n < 1e-12
    assert record(2, ok, f"|G_0 - F_D| {worst0:.2e}, |G_N - i| {worst_n:.2e} (tol 1e-12)")


def test_criterion_03_balazs_voros():
    worst = max(np.abs(balazs_voros_dense(N) - baker_dense(BakerFamilyParams(N, 1))).max() for N in range(1, 9))
    assert record(3, worst < 1e-10, f"max|B_1 - F^-1 diag(F, F)| {worst:.2e} (tol 1e-10)")


def test_criterion_04_position_basis():
    # the composition G_{n-1} o G_n^{-1} maps the basis |.. . x_1 x_2..> to |.. x_1 . x_2..>;
    # as matrices that is G_{n-1} S_n G_n^dagger (S_n relabels the qubits), and the
    # basis-sum form is checked too
    worst_m = worst_d = 0.0
    for N in range(1, 7):
        for n in range(1, N + 1):
            P = BakerFamilyParams(N, n)
            pos = baker_dense_position_rep(P)
            worst_m = max(worst_m, np.abs(pos - baker_dense(P)).max())
            worst_d = max(worst_d, np.abs(pos - baker_dense_dyadic(P)).max())
    ok = worst_m < 1e-10 and worst_d < 1e-10
    assert record(4, ok, f"position form vs G_(n-1) S_n G_n^+ {worst_m:.2e}, "
                         f"vs basis-sum form {worst_d:.2e} (tol 1e-10)")


def test_criterion_05_matrix_free():
    rng = np.random.default_rng(5)
    worst = 0.0
    for N in range(1, 9):
        space = TorusSpace.qubits(N)
        for n in range(1, N + 1):
            P = BakerFamilyParams(N, n)
            for _ in range(3):
                psi = random_state(space, rng)
                worst = max(worst, np.abs(baker_apply(psi, P).amps - baker_dense(P) @ psi.amps).max())
    space = TorusSpace.qubits(20)
    psi = random_state(space, rng)
    slowest = 0.0
    for n in (1, 10, 20):
        t0 = time.perf_counter()
        baker_apply(psi, BakerFamilyParams(20, n))
        slowest = max(slowest, time.perf_counter() - t0)
    ok = worst < 1e-10 and slowest < 10
    assert record(5, ok, f"max|matrix-free - dense| {worst:.2e} (tol 1e-10), "
                         f"N=20 slowest application {slowest:.2f}s (limit 10s)")


def test_criterion_06_coherent():
    rng = np.random.default_rng(6)
    worst_qp = 0.0
    for D in (8, 16, 32, 64, 128):
        space = TorusSpace(D)
        for q, p in rng.uniform(0, 1, (10, 2)):
            a = coherent_state(space, PhasePoint(q, p)).amps
            b = coherent_state(space, PhasePoint(q + 1, p)).amps
            c = coherent_state(space, PhasePoint(q, p + 1)).amps
            worst_qp = max(worst_qp, np.abs(b + np.exp(1j * np.pi * D * p) * a).max(),
                           np.abs(c + np.exp(-1j * np.pi * D * q) * a).max())
    worst_n = 0.0
    for D in (16, 32, 64, 256, 1024, 4096):
        space = TorusSpace(D)
        for q, p in rng.uniform(0, 1, (10, 2)):
            pt = PhasePoint(q, p)
            worst_n = max(worst_n, abs(normalization_sq(space, pt) - 1),
                          abs(coherent_state(space, pt).norm() ** 2 - 1))
    worst_t = 0.0
    for tau in (1j, 8j, 0.5 + 2j, -0.3 + 0.7j):
        for z in rng.uniform(-2, 2, (10, 2)):
            z = complex(*z)
            M = theta_window(z, tau, 1e-14)
            worst_t = max(worst_t, abs(theta0(z, tau) - theta0(z, tau, window=2 * M)))
    ok = worst_qp < 1e-10 and worst_n < 1e-8 and worst_t < 1e-12
    assert record(6, ok, f"quasi-periodicity {worst_qp:.2e} (tol 1e-10), |N^2-1| {worst_n:.2e} (tol 1e-8), "
                         f"theta window doubling {worst_t:.2e} (tol 1e-12)")


def test_criterion_07_generating_function():
    rng = np.random.default_rng(7)
    h = 1e-6
    worst = 0.0
    count = 0
    for lo, hi in ((0.01, 0.49), (0.51, 0.99)):
        for _ in range(100):
            a = complex(rng.uniform(lo, hi), rng.uniform(0.01, 0.99))
            b = baker_step_complex(a)
            bs = np.conj(b)
            dWdbs = (generating_W(bs + h, a) - generating_W(bs - h, a)) / (2 * h)
            dWda = (generating_W(bs, a + h) - generating_W(bs, a - h)) / (2 * h)
            worst = max(worst, abs(dWdbs - b), abs(dWda - np.conj(a)))
            count += 1
    # W is quadratic, so the centred mixed difference is exact up to rounding
    a, bs, s = 0.2 + 0.4j, 0.6 - 0.3j, 0.01
    mixed = (generating_W(bs + s, a + s) - generating_W(bs + s, a - s)
             - generating_W(bs - s, a + s) + generating_W(bs - s, a - s)) / (4 * s * s)
    ok = worst < 1e-6 and abs(mixed - 0.8) < 1e-10 and W_MIXED_DERIVATIVE == 0.8
    assert record(7, ok, f"max FD residual {worst:.2e} at {count} points (tol 1e-6), "
                         f"d2W/da db* = {mixed.real:.12f} (4/5)")


def test_criterion_08_vanvleck():
    rng = np.random.default_rng(8)
    D = 64
    rel, phases = [], []
    for i in range(200):
        a1 = rng.uniform(0.02, 0.48) if i % 2 else rng.uniform(0.52, 0.98)
        a = complex(a1, rng.uniform(0.02, 0.98))
        if i < 100:
            b = classical_image(a) + complex(*rng.normal(0, 0.02, 2))
            b = complex(min(max(b.real, 0.01), 0.99), min(max(b.imag, 0.01), 0.99))
        else:
            b = complex(*rng.uniform(0.02, 0.98, 2))
        e = vanvleck_explicit(a, b, D)
        g = vanvleck_generic(a, b, D)
        rel.append(abs(abs(g) / abs(e) - 1))
        phases.append(np.angle(g / e))
    phases = np.array(phases)
    spread = np.abs(np.angle(np.exp(1j * (phases - phases[0])))).max()
    ok = max(rel) < 1e-12 and spread < 1e-12
    assert record(8, ok, f"max relative magnitude {max(rel):.2e}, phase spread {spread:.2e} "
                         f"(constant {phases[0]:+.2e}) (tol 1e-12)")


def test_criterion_09_on_hump_convergence():
    a = PhasePoint(0.3, 0.7)
    b = PhasePoint.from_complex(classical_image(a.a))
    t0 = time.perf_counter()
    errs = []
    for N in (6, 8, 10, 12):
        v = exact_propagator_hp(a, b, BakerFamilyParams(N, 1))
        with gmpy2.context(gmpy2.get_context(), precision=4000):
            errs.append(abs(gmpy2.norm(v) - gmpy2.mpfr(4) / 5))
    dt = time.perf_counter() - t0
    monotone = all(y < x for x, y in zip(errs, errs[1:]))
    ratio = float(errs[-1] / gmpy2.mpfr(PINNED_THETA0_N12))
    ok = monotone and abs(ratio - 1) <= 0.10 and dt < 120
    shown = ", ".join(f"{float(gmpy2.log10(e)):.1f}" for e in errs)
    assert record(9, ok, f"log10 errors N=6,8,10,12: {shown}; monotone={monotone}; "
                         f"N=12 / pinned = {ratio:.6f} (tol +-10%); {dt:.1f}s (limit 120s)")


def _torus_local_maxima(v):
    peak = np.ones(v.shape, bool)
    for dq in (-1, 0, 1):
        for dp in (-1, 0, 1):
            if dq or dp:
                peak &= v > np.roll(np.roll(v, dq, 0), dp, 1)
    return np.argwhere(peak)


def test_criterion_10_eight_humps():
    t0 = time.perf_counter()
    a = PhasePoint(0.75, 0.05)
    params = BakerFamilyParams.from_path(1, -2, 8)
    cat = hump_catalog(a.a, 2)

    # (i) eight humps of the exact Husimi function at the cataloged positions
    n = 128
    q = p = cell_centres(n)
    exact = np.abs(exact_propagator_grid(a, params, q, p)) ** 2
    peaks = _torus_local_maxima(exact)
    found = sorted((float(q[i]), float(p[k])) for i, k in peaks)
    cell = 1.0 / n
    matched = 0
    for h in cat:
        d = [math.hypot(fq - h.b1, fp - h.b2) for fq, fp in found]
        matched += bool(d) and min(d) <= 1.5 * cell
    humps_ok = len(found) == 8 and matched == 8

    # (ii) per-hump height error of the semiclassical grid
    rep = compare_exact_semiclassical(a, params, SemiclassicalRegime("theta-one", 2), 64, 64)
    rel = rep.hump_height_errors
    heights_ok = bool(np.all(rel < 0.10))

    # (iii) Psi^2 curves: unit sum on a 256-sample sweep, unity touch points,
    # hump heights on the a2 = 1/20 line
    a2 = cell_centres(256)
    curves = np.array([psi_kappa_curve(0.75, a2, 2, k) ** 2 for k in range(8)])
    sweep_sum = np.abs(curves.sum(axis=0) - 1).max()
    touch = max(abs(psi_kappa_curve(0.75, [(m + 0.5) / 4], 2, 4)[0] ** 2 - 1) for m in range(4))
    line = np.abs(stochastic_propagator(a.a, np.array([h.b for h in cat]), 256, 2)) ** 2
    line_err = np.abs(line - 0.8 * np.array([h.weight for h in cat])).max()
    curves_ok = sweep_sum < 1e-10 and touch < 1e-10 and line_err < 1e-3

    dt = time.perf_counter() - t0
    ok = humps_ok and heights_ok and curves_ok and dt < 300
    per = " ".join(f"k{h.kappa}:{e:.3f}" for h, e in zip(cat, rel))
    assert record(10, ok, f"exact humps found {len(found)}, matched {matched}/8; "
                          f"hump height rel. errors [{per}] (tol 0.10); "
                          f"Psi^2 sweep sum {sweep_sum:.1e}, touch {touch:.1e}; {dt:.1f}s (limit 300s)")


def test_criterion_11_psi_normalization():
    rng = np.random.default_rng(11)
    worst = 0.0
    for r in range(4):
        count = 0
        while count < 50:
            a = complex(*rng.uniform(0.01, 0.99, 2))
            if abs(a.real - 0.5) < 1e-6 or is_singular_a2(a.imag, r) or abs(a.imag - 0.5) < 1e-6:
                continue
            worst = max(worst, abs(sum(h.weight for h in hump_catalog(a, r)) - 1))
            count += 1
    worst_r0 = 0.0
    for _ in range(50):
        a = complex(rng.uniform(0.02, 0.48) if rng.random() < 0.5 else rng.uniform(0.52, 0.98),
                    rng.uniform(0.02, 0.98))
        # cos^2 belongs to the classical hump, sin^2 to the other one
        cat = sorted(hump_catalog(a, 0), key=lambda h: not h.is_classical)
        closed = two_hump_weights(a)
        heights = np.abs(stochastic_propagator(a, np.array([h.b for h in cat]), 1024, 0)) ** 2
        for h, c, s in zip(cat, closed, heights):
            worst_r0 = max(worst_r0, abs(0.8 * h.weight - c), abs(s - c))
    ok = worst < 1e-10 and worst_r0 < 1e-10
    assert record(11, ok, f"max|sum Psi^2 - 1| {worst:.2e} (tol 1e-10), "
                          f"r=0 heights vs closed form {worst_r0:.2e} (tol 1e-10)")


def test_criterion_12_telescoping():
    errs = []
    for N in range(1, 7):
        D = 2 ** N
        prod = np.eye(D)
        for n in range(1, N + 1):
            prod = prod @ baker_dense(BakerFamilyParams(N, n))
        errs.append(np.abs(prod + 1j * fourier_matrix(TorusSpace(D))).max())
    ok = max(errs) < 1e-10
    shown = ", ".join(f"{e:.1e}" for e in errs)
    assert record(12, ok, f"|B_1...B_N + i F_D| for N=1..6: {shown} (tol 1e-10)")


if __name__ == "__main__":
    import sys

    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    sys.exit(0 if all(" PASS " in line for line in RESULTS.values()) else 1)
