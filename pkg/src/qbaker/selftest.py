"""
Invariant checks run by ``qbaker selftest``.

Each check returns the largest observed deviation; a check passes when that
deviation is below its tolerance.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import List

import numpy as np

from .baker import (
    BakerFamilyParams,
    baker_apply,
    baker_dense,
    baker_dense_dyadic,
    baker_dense_position_rep,
    balazs_voros_dense,
)
from .classical import baker_step_complex, generating_W
from .coherent import PhasePoint, coherent_state, normalization_sq, theta0
from .semiclassical import hump_catalog, vanvleck_explicit, vanvleck_generic
from .torus import StateVector, TorusSpace, fourier_matrix, partial_fourier_matrix


@dataclass
class CheckResult:
    name: str
    value: float
    tol: float
    seconds: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value) and self.value < self.tol)


def _unitarity(max_N, rng):
    worst = 0.0
    for N in range(1, max_N + 1):
        space = TorusSpace.qubits(N)
        for n in range(1, N + 1):
            P = BakerFamilyParams(N, n)
            for _ in range(5):
                psi = StateVector.random(space, rng)
                worst = max(worst, abs(baker_apply(psi, P).norm() - 1.0))
    return worst


def _partial_fourier_unitary(max_N, rng):
    worst = 0.0
    for N in range(1, max_N + 1):
        for n in range(N + 1):
            G = partial_fourier_matrix(N, n)
            worst = max(worst, np.abs(G.conj().T @ G - np.eye(2 ** N)).max())
    return worst


def _limits(max_N, rng):
    worst = 0.0
    for N in range(1, max_N + 1):
        D = 2 ** N
        worst = max(worst, np.abs(partial_fourier_matrix(N, 0) - fourier_matrix(TorusSpace(D))).max())
        worst = max(worst, np.abs(partial_fourier_matrix(N, N) - 1j * np.eye(D)).max())
    return worst


def _balazs_voros(max_N, rng):
    return max(np.abs(balazs_voros_dense(N) - baker_dense(BakerFamilyParams(N, 1))).max()
               for N in range(1, max_N + 1))


def _position_rep(max_N, rng):
    worst = 0.0
    for N in range(1, min(max_N, 6) + 1):
        for n in range(1, N + 1):
            P = BakerFamilyParams(N, n)
            B = baker_dense(P)
            worst = max(worst, np.abs(baker_dense_position_rep(P) - B).max(),
                        np.abs(baker_dense_dyadic(P) - B).max())
    return worst


def _matrix_free(max_N, rng):
    worst = 0.0
    for N in range(1, min(max_N, 8) + 1):
        space = TorusSpace.qubits(N)
        for n in range(1, N + 1):
            P = BakerFamilyParams(N, n)
            psi = StateVector.random(space, rng)
            worst = max(worst, np.abs(baker_apply(psi, P).amps - baker_dense(P) @ psi.amps).max())
    return worst


def _coherent(max_N, rng, eps):
    worst = 0.0
    for D in (16, 32, 64):
        space = TorusSpace(D)
        for _ in range(5):
            q, p = rng.uniform(0, 1, 2)
            a = coherent_state(space, PhasePoint(q, p), eps).amps
            b = coherent_state(space, PhasePoint(q + 1, p), eps).amps
            c = coherent_state(space, PhasePoint(q, p + 1), eps).amps
            worst = max(worst,
                        np.abs(b + np.exp(1j * np.pi * D * p) * a).max(),
                        np.abs(c + np.exp(-1j * np.pi * D * q) * a).max())
            nrm = np.vdot(a, a).real
            worst = max(worst, abs(nrm - normalization_sq(space, PhasePoint(q, p), eps)))
    return worst


def _generating(max_N, rng):
    h = 1e-6
    worst = 0.0
    for lo, hi in ((0.02, 0.48), (0.52, 0.98)):
        for _ in range(100):
            a = complex(rng.uniform(lo, hi), rng.uniform(0.02, 0.98))
            bs = np.conj(baker_step_complex(a))
            dWdb = (generating_W(bs + h, a) - generating_W(bs - h, a)) / (2 * h)
            dWda = (generating_W(bs, a + h) - generating_W(bs, a - h)) / (2 * h)
            worst = max(worst, abs(dWdb - np.conj(bs)), abs(dWda - np.conj(a)))
    return worst


def _vanvleck(max_N, rng):
    worst = 0.0
    for lo, hi in ((0.02, 0.48), (0.52, 0.98)):
        for _ in range(100):
            a = complex(rng.uniform(lo, hi), rng.uniform(0.02, 0.98))
            b = complex(rng.uniform(0.02, 0.98), rng.uniform(0.02, 0.98))
            e = vanvleck_explicit(a, b, 64)
            g = vanvleck_generic(a, b, 64)
            worst = max(worst, abs(abs(g) / abs(e) - 1), abs(np.angle(g / e)))
    return worst


def _psi(max_N, rng):
    worst = 0.0
    for r in range(4):
        for _ in range(50):
            a = complex(rng.uniform(0.02, 0.98), rng.uniform(0.02, 0.98))
            if abs(a.real - 0.5) < 1e-3:
                continue
            worst = max(worst, abs(sum(h.weight for h in hump_catalog(a, r)) - 1))
    return worst


def _theta(max_N, rng, eps):
    worst = 0.0
    for tau in (1j, 2j, 0.3 + 1.5j):
        z = complex(*rng.uniform(-1, 1, 2))
        worst = max(worst, abs(theta0(z, tau, eps) - theta0(z, tau, eps, window=2 * 20)))
    return worst


def run(max_N: int = 10, eps: float = 1e-14, seed: int = 0) -> List[CheckResult]:
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps!r}")
    if not (1 <= max_N <= 10):
        raise ValueError(f"max_N must lie in 1..10, got {max_N}")
    rng = np.random.default_rng(seed)
    checks: List[tuple] = [
        ("baker unitarity (matrix-free)", lambda: _unitarity(max_N, rng), 1e-12),
        ("partial Fourier unitarity (dense)", lambda: _partial_fourier_unitary(min(max_N, 8), rng), 1e-10),
        ("G_0 = F_D, G_N = i", lambda: _limits(min(max_N, 8), rng), 1e-12),
        ("Balazs-Voros recovery", lambda: _balazs_voros(min(max_N, 8), rng), 1e-10),
        ("position-basis and dyadic forms", lambda: _position_rep(max_N, rng), 1e-10),
        ("matrix-free vs dense", lambda: _matrix_free(max_N, rng), 1e-10),
        ("coherent quasi-periodicity and norm", lambda: _coherent(max_N, rng, eps), 1e-8),
        ("theta window doubling", lambda: _theta(max_N, rng, eps), 1e-12),
        ("generating-function relations", lambda: _generating(max_N, rng), 1e-6),
        ("Van Vleck forms agree", lambda: _vanvleck(max_N, rng), 1e-12),
        ("hump weights sum to one", lambda: _psi(max_N, rng), 1e-10),
    ]
    out = []
    for name, fn, tol in checks:
        t0 = time.perf_counter()
        val = float(fn())
        out.append(CheckResult(name, val, tol, time.perf_counter() - t0))
    return out


def format_table(results: List[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'check':<{width}}  {'max deviation':>13}  {'tol':>7}  {'time':>6}  result"]
    for r in results:
        lines.append(f"{r.name:<{width}}  {r.value:13.3e}  {r.tol:7.0e}  {r.seconds:5.1f}s  "
                     f"{'PASS' if r.passed else 'FAIL'}")
    return "\n".join(lines)
