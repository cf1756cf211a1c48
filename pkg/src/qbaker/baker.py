"""
The Schack-Caves family of quantum baker's maps on N qubits.

B_n takes the partially Fourier transformed basis state
|a_{N-n}...a_1 . x_1 x_2...x_n> to |a_{N-n}...a_1 x_1 . x_2...x_n>.  As an
operator this is G_{n-1} S_n G_n^{-1}, where S_n cyclically shifts the first n
qubits, (x_1, x_2, ..., x_n) -> (x_2, ..., x_n, x_1), so that x_1 becomes the
most significant momentum qubit of G_{n-1}.  For n = 1 the shift is trivial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from ._parallel import map_chunks
from .coherent import DEFAULT_EPS, PhasePoint, coherent_amplitudes, coherent_state, overlap_grid
from .torus import (
    DENSE_MAX_QUBITS,
    StateVector,
    TorusSpace,
    antiperiodic_kernel,
    inner,
    partial_fourier_amps,
    partial_fourier_matrix,
)


@dataclass(frozen=True)
class BakerFamilyParams:
    """Map B_n on N qubits, optionally tagged with its limit path n = theta N + s."""

    N: int
    n: int
    theta: Optional[Fraction] = None
    s: Optional[int] = None

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N!r}")
        if int(self.n) != self.n or not (1 <= self.n <= self.N):
            raise ValueError(f"n must satisfy 1 <= n <= N={self.N}, got {self.n!r}")
        if (self.theta is None) != (self.s is None):
            raise ValueError("theta and s must be given together")
        if self.theta is not None:
            theta = Fraction(self.theta)
            object.__setattr__(self, "theta", theta)
            if not (0 <= theta <= 1):
                raise ValueError(f"theta must lie in [0, 1], got {theta}")
            if theta * self.N + self.s != self.n:
                raise ValueError(f"theta*N + s = {theta * self.N + self.s} does not equal n = {self.n}")

    @classmethod
    def from_path(cls, theta, s: int, N: int) -> "BakerFamilyParams":
        theta = Fraction(theta)
        n = theta * N + s
        if n.denominator != 1:
            raise ValueError(f"theta*N + s = {n} is not an integer")
        return cls(N, int(n), theta, s)

    @property
    def D(self) -> int:
        return 2 ** self.N

    @property
    def momentum_bits(self) -> int:
        return self.N - self.n

    @property
    def S(self) -> Optional[int]:
        """2**s for s >= 0."""
        if self.s is None or self.s < 0:
            return None
        return 2 ** self.s

    @property
    def R(self) -> int:
        """2**r with r = N - n momentum bits (equals 2**(-s) on a theta = 1 path)."""
        return 2 ** self.momentum_bits

    def space(self) -> TorusSpace:
        return TorusSpace.qubits(self.N)


@dataclass(frozen=True)
class LimitPath:
    """A sequence of maps n = theta N + s along increasing N."""

    theta: Fraction
    s: int
    Ns: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "theta", Fraction(self.theta))
        object.__setattr__(self, "Ns", tuple(int(N) for N in self.Ns))
        if any(b <= a for a, b in zip(self.Ns, self.Ns[1:])):
            raise ValueError("N sequence must be strictly increasing")
        for N in self.Ns:
            BakerFamilyParams.from_path(self.theta, self.s, N)

    def params(self):
        return [BakerFamilyParams.from_path(self.theta, self.s, N) for N in self.Ns]


def _shift_amps(amps: np.ndarray, N: int, n: int, inverse: bool = False) -> np.ndarray:
    # index layout (x_1, x_2..x_n, rest) <-> (x_2..x_n, x_1, rest)
    M = 2 ** (N - n)
    if not inverse:
        return amps.reshape(2, 2 ** (n - 1), M).transpose(1, 0, 2).reshape(-1)
    return amps.reshape(2 ** (n - 1), 2, M).transpose(1, 0, 2).reshape(-1)


def baker_apply_amps(amps: np.ndarray, N: int, n: int) -> np.ndarray:
    v = partial_fourier_amps(amps, N, n, inverse=True)
    v = _shift_amps(v, N, n)
    return partial_fourier_amps(v, N, n - 1)


def baker_apply(state: StateVector, params: BakerFamilyParams) -> StateVector:
    """B_n |psi> without forming a matrix; O(D log D)."""
    if state.space != params.space():
        raise ValueError(f"state dimension {state.space.D} does not match 2**{params.N}")
    return StateVector(state.space, baker_apply_amps(state.amps, params.N, params.n))


def baker_apply_inverse(state: StateVector, params: BakerFamilyParams) -> StateVector:
    if state.space != params.space():
        raise ValueError(f"state dimension {state.space.D} does not match 2**{params.N}")
    N, n = params.N, params.n
    v = partial_fourier_amps(state.amps, N, n - 1, inverse=True)
    v = _shift_amps(v, N, n, inverse=True)
    return StateVector(state.space, partial_fourier_amps(v, N, n))


# ---------------------------------------------------------------------------
# dense realizations (verification oracles, N <= 10)


def _check_dense_N(N):
    if N > DENSE_MAX_QUBITS:
        raise ValueError(f"dense operators are limited to N <= {DENSE_MAX_QUBITS}, got {N}")


def shift_matrix(N: int, n: int) -> np.ndarray:
    """Permutation S_n: |x_1 x_2..x_n y> -> |x_2..x_n x_1 y>."""
    _check_dense_N(N)
    D = 2 ** N
    cols = np.arange(D)
    rows = _shift_amps(cols, N, n, inverse=True)
    S = np.zeros((D, D))
    S[rows, cols] = 1.0
    return S


def baker_dense(params: BakerFamilyParams) -> np.ndarray:
    """G_{n-1} S_n G_n^dagger from dense factors."""
    N, n = params.N, params.n
    _check_dense_N(N)
    return partial_fourier_matrix(N, n - 1) @ shift_matrix(N, n) @ partial_fourier_matrix(N, n).conj().T


def baker_dense_dyadic(params: BakerFamilyParams) -> np.ndarray:
    """Sum of |a..a_1 x_1 . x_2..x_n><a..a_1 . x_1..x_n| over all bit strings."""
    from .torus import pf_basis_state  # local: only this oracle needs it

    N, n = params.N, params.n
    _check_dense_N(N)
    space = params.space()
    kets = np.empty((space.D, space.D), dtype=complex)
    bras = np.empty((space.D, space.D), dtype=complex)
    for idx in range(space.D):
        bits = [(idx >> (N - 1 - t)) & 1 for t in range(N)]
        x, a = bits[:n], bits[n:]
        bras[:, idx] = pf_basis_state(space, x, a).amps
        kets[:, idx] = pf_basis_state(space, x[1:], [x[0]] + a).amps
    return kets @ bras.conj().T


def baker_dense_position_rep(params: BakerFamilyParams) -> np.ndarray:
    """Position-basis quadruple sum over x_1, j, k, l, m.

    Kets |q_l + q_m 2^(N-n+1) - 2^-n> and bras <q_k + x_1/2 + q_m 2^(N-n) - 2^(-n-1)|
    with q_i = (i + 1/2)/D are resolved to integer indices by
    index = D q - 1/2, which gives row 2^(N-n+1) m + l and column
    x_1 D/2 + 2^(N-n) m + k.  The sum over j is carried out as a matrix
    product of the two j-dependent phase factors.
    """
    N, n = params.N, params.n
    _check_dense_N(N)
    D = 2 ** N
    M = 2 ** (N - n)

    def qv(i):
        return (np.asarray(i, float) + 0.5) / D

    def index(qval):
        return np.rint(D * qval - 0.5).astype(int)

    scale = np.pi * D * 2 ** n
    jj, kk, ll = np.arange(M), np.arange(M), np.arange(2 * M)
    out = np.zeros((D, D), dtype=complex)
    pref = math.sqrt(2) / 2 ** (N - n + 1)
    for x1 in (0, 1):
        left = np.exp(1j * scale * (np.outer(qv(ll), qv(jj)) + 2.0 ** -n * x1 * qv(ll)[:, None]))
        right = np.exp(-2j * scale * np.outer(qv(jj), qv(kk)))
        block = pref * (left @ right)
        for m in range(2 ** (n - 1)):
            rows = index(qv(ll) + qv(m) * 2 ** (N - n + 1) - 2.0 ** -n)
            cols = index(qv(kk) + x1 / 2 + qv(m) * 2 ** (N - n) - 2.0 ** (-n - 1))
            out[np.ix_(rows, cols)] += block
    return out


def balazs_voros_dense(N: int) -> np.ndarray:
    """F_D^{-1} diag(F_{D/2}, F_{D/2}) on the anti-periodic space.

    Here F denotes the matrix taking position amplitudes to momentum
    amplitudes, <p_k|q_j>, i.e. the conjugate transpose of <q_j|p_k>.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    _check_dense_N(N)
    D = 2 ** N
    to_mom_full = antiperiodic_kernel(D).conj().T
    to_mom_half = antiperiodic_kernel(D // 2).conj().T
    block = np.kron(np.eye(2), to_mom_half)
    return np.linalg.inv(to_mom_full) @ block


# ---------------------------------------------------------------------------
# coherent-state propagator


def exact_propagator(a: PhasePoint, b: PhasePoint, params: BakerFamilyParams,
                     eps: float = DEFAULT_EPS, normalize: bool = False) -> complex:
    """<b|B_n|a> between unity-normalized (or, optionally, exactly normalized) coherent states."""
    space = params.space()
    ket = baker_apply(coherent_state(space, a, eps, normalize), params)
    return inner(coherent_state(space, b, eps, normalize), ket)


def exact_propagator_grid(a: PhasePoint, params: BakerFamilyParams, q, p,
                          eps: float = DEFAULT_EPS, normalize: bool = False) -> np.ndarray:
    """<b|B_n|a> for b on the product grid q x p, shape (len(q), len(p))."""
    space = params.space()
    ket = baker_apply(coherent_state(space, a, eps, normalize), params)
    return overlap_grid(space, ket.amps, np.asarray(q, float), np.asarray(p, float), eps, normalize)


def exact_propagator_points(a: PhasePoint, params: BakerFamilyParams, q, p,
                            eps: float = DEFAULT_EPS, normalize: bool = False) -> np.ndarray:
    """<b|B_n|a> for the paired points b = q[i] + i p[i]."""
    space = params.space()
    ket = baker_apply(coherent_state(space, a, eps, normalize), params).amps
    q, p = np.broadcast_arrays(np.atleast_1d(np.asarray(q, float)), np.atleast_1d(np.asarray(p, float)))

    def block(lo, hi):
        c = coherent_amplitudes(space, q[lo:hi], p[lo:hi], eps)
        if normalize:
            c = c / np.linalg.norm(c, axis=1, keepdims=True)
        return c.conj() @ ket

    return map_chunks(block, q.size, 256)


def export_dense_csv(matrix: np.ndarray, fh) -> None:
    """Row-major CSV, one matrix row per line as re,im pairs."""
    D = matrix.shape[1]
    fh.write(",".join(f"re_{c},im_{c}" for c in range(D)) + "\n")
    for row in matrix:
        fh.write(",".join(f"{z.real:.17g},{z.imag:.17g}" for z in row) + "\n")
