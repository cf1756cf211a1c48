"""
Finite-dimensional Hilbert space on the torus.

States are stored in the position basis, amps[j] = <q_j|psi>.  For D = 2**N the
index j is read as the qubit string x_1 ... x_N with x_1 the most significant
bit, so the "least significant qubits" are the trailing block of the index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

#: largest qubit count for which dense D x D matrices may be built
DENSE_MAX_QUBITS = 10


@dataclass(frozen=True)
class TorusSpace:
    """Hilbert space of dimension D with boundary phases (alpha, beta).

    Position eigenvalues are q_j = (j + beta)/D and momentum eigenvalues
    p_k = (k + alpha)/D.  The default alpha = beta = 1/2 is the anti-periodic
    space used by the baker family.
    """

    D: int
    alpha: float = 0.5
    beta: float = 0.5

    def __post_init__(self):
        if int(self.D) != self.D or self.D < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.D!r}")
        object.__setattr__(self, "D", int(self.D))
        for name in ("alpha", "beta"):
            val = getattr(self, name)
            if not (0.0 <= val < 1.0):
                raise ValueError(f"{name} must lie in [0, 1), got {val!r}")

    @classmethod
    def qubits(cls, N: int) -> "TorusSpace":
        """Anti-periodic space of N qubits (D = 2**N)."""
        if int(N) != N or N < 1:
            raise ValueError(f"qubit count must be a positive integer, got {N!r}")
        return cls(2 ** int(N))

    @property
    def hbar(self) -> float:
        return 1.0 / (2.0 * math.pi * self.D)

    @property
    def N(self) -> Optional[int]:
        """Qubit count when D is a power of two, otherwise None."""
        if self.D & (self.D - 1):
            return None
        return self.D.bit_length() - 1

    @property
    def antiperiodic(self) -> bool:
        return self.alpha == 0.5 and self.beta == 0.5

    def positions(self) -> np.ndarray:
        return (np.arange(self.D) + self.beta) / self.D

    def momenta(self) -> np.ndarray:
        return (np.arange(self.D) + self.alpha) / self.D


@dataclass(frozen=True, eq=False)
class StateVector:
    """Immutable vector of position-basis amplitudes over a TorusSpace."""

    space: TorusSpace
    amps: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amps, dtype=np.complex128)
        if amps.shape != (self.space.D,):
            raise ValueError(f"expected {self.space.D} amplitudes, got shape {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def basis(cls, space: TorusSpace, j: int) -> "StateVector":
        """Position eigenstate |q_j>."""
        amps = np.zeros(space.D, dtype=np.complex128)
        amps[j] = 1.0
        return cls(space, amps)

    @classmethod
    def random(cls, space: TorusSpace, rng: np.random.Generator) -> "StateVector":
        """Haar-like random unit vector."""
        v = rng.standard_normal(space.D) + 1j * rng.standard_normal(space.D)
        return cls(space, v / np.linalg.norm(v))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def __len__(self):
        return self.space.D


def inner(lhs: StateVector, rhs: StateVector) -> complex:
    """<lhs|rhs>, conjugating the left argument."""
    if lhs.space != rhs.space:
        raise ValueError("states live in different spaces")
    return complex(np.vdot(lhs.amps, rhs.amps))


# ---------------------------------------------------------------------------
# offset DFT core


def offset_dft(v: np.ndarray, alpha: float, beta: float, inverse: bool = False) -> np.ndarray:
    """Apply the kernel exp(2 pi i (j+beta)(k+alpha)/M)/sqrt(M) along the last axis.

    ``v`` holds coefficients indexed by k (the momentum label); the result is
    indexed by j.  With ``inverse`` the conjugate transpose is applied instead.
    Uses (j+beta)(k+alpha) = jk + j alpha + k beta + alpha beta around a
    standard FFT.
    """
    M = v.shape[-1]
    idx = np.arange(M)
    if not inverse:
        w = v * np.exp(2j * np.pi * beta * idx / M)
        out = np.fft.ifft(w, axis=-1, norm="ortho")
        out *= np.exp(2j * np.pi * (alpha * idx + alpha * beta) / M)
    else:
        w = v * np.exp(-2j * np.pi * alpha * idx / M)
        out = np.fft.fft(w, axis=-1, norm="ortho")
        out *= np.exp(-2j * np.pi * (beta * idx + alpha * beta) / M)
    return out


def _require_qubits(space: TorusSpace, n: int) -> int:
    N = space.N
    if N is None:
        raise ValueError(f"dimension {space.D} is not a power of two")
    if not space.antiperiodic:
        raise ValueError("partial Fourier transforms need alpha = beta = 1/2")
    if int(n) != n or not (0 <= n <= N):
        raise ValueError(f"n must satisfy 0 <= n <= N={N}, got {n!r}")
    return N


def partial_fourier_amps(amps: np.ndarray, N: int, n: int, inverse: bool = False) -> np.ndarray:
    """Matrix-free partial Fourier transform on a raw amplitude array.

    The trailing N-n qubits of every index are transformed with the
    anti-periodic kernel; the n leading qubits label independent blocks.
    """
    M = 2 ** (N - n)
    blocks = amps.reshape(2 ** n, M)
    return offset_dft(blocks, 0.5, 0.5, inverse=inverse).reshape(-1)


def fourier_full(state: StateVector, inverse: bool = False) -> StateVector:
    """Finite Fourier transform, <q_j|F|q_k> = <q_j|p_k>."""
    s = state.space
    return StateVector(s, offset_dft(state.amps, s.alpha, s.beta, inverse=inverse))


def fourier_full_inverse(state: StateVector) -> StateVector:
    return fourier_full(state, inverse=True)


def partial_fourier(state: StateVector, n: int) -> StateVector:
    """G_n: Fourier transform of the N-n least significant qubits."""
    N = _require_qubits(state.space, n)
    return StateVector(state.space, partial_fourier_amps(state.amps, N, n))


def partial_fourier_inverse(state: StateVector, n: int) -> StateVector:
    N = _require_qubits(state.space, n)
    return StateVector(state.space, partial_fourier_amps(state.amps, N, n, inverse=True))


def bits_to_int(bits: Sequence[int]) -> int:
    """Most-significant-first bit list to integer."""
    out = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"bits must be 0 or 1, got {b!r}")
        out = 2 * out + int(b)
    return out


def pf_basis_state(space: TorusSpace, x_bits: Sequence[int], a_bits: Sequence[int]) -> StateVector:
    """The partially Fourier transformed basis state |a_{N-n}...a_1 . x_1...x_n>.

    ``x_bits`` = (x_1, ..., x_n) are the position bits and ``a_bits`` =
    (a_1, ..., a_{N-n}) the momentum bits, so the state is
    G_n(|x_1...x_n> (x) |a_1...a_{N-n}>).
    """
    N = space.N
    if N is None:
        raise ValueError(f"dimension {space.D} is not a power of two")
    n = len(x_bits)
    if n + len(a_bits) != N:
        raise ValueError(f"need {N} bits in total, got {n} + {len(a_bits)}")
    j = bits_to_int(list(x_bits) + list(a_bits))
    return partial_fourier(StateVector.basis(space, j), n)


# ---------------------------------------------------------------------------
# dense oracles


def _check_dense(D: int):
    if D > 2 ** DENSE_MAX_QUBITS:
        raise ValueError(f"dense matrices are limited to D <= {2 ** DENSE_MAX_QUBITS}, got {D}")


def fourier_kernel(space: TorusSpace, j, k):
    """<q_j|p_k> for arbitrary (possibly out-of-range) integer labels."""
    j = np.asarray(j)
    k = np.asarray(k)
    D = space.D
    return np.exp(2j * np.pi * (j + space.beta) * (k + space.alpha) / D) / math.sqrt(D)


def fourier_matrix(space: TorusSpace) -> np.ndarray:
    """Dense F_D evaluated entry by entry from the kernel."""
    _check_dense(space.D)
    idx = np.arange(space.D)
    return fourier_kernel(space, idx[:, None], idx[None, :])


def partial_fourier_matrix(N: int, n: int) -> np.ndarray:
    """Dense G_n = 1_(2^n) (x) (anti-periodic F_M), M = 2^(N-n)."""
    if not (0 <= n <= N):
        raise ValueError(f"n must satisfy 0 <= n <= N={N}, got {n!r}")
    _check_dense(2 ** N)
    return np.kron(np.eye(2 ** n), antiperiodic_kernel(2 ** (N - n)))


def antiperiodic_kernel(M: int) -> np.ndarray:
    """M x M matrix exp(2 pi i (j+1/2)(k+1/2)/M)/sqrt(M); M = 1 is allowed."""
    _check_dense(M)
    idx = np.arange(M) + 0.5
    return np.exp(2j * np.pi * np.outer(idx, idx) / M) / math.sqrt(M)
