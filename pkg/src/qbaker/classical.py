"""
The classical baker's transformation, its complex form, symbolic dynamics and
generating function.

Points with q = 1/2 exactly take the floor(2q) = 1 branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np


@dataclass(frozen=True)
class ClassicalPoint:
    q: float
    p: float

    def __post_init__(self):
        if not (0.0 <= self.q < 1.0 and 0.0 <= self.p < 1.0):
            raise ValueError(f"point ({self.q}, {self.p}) is outside [0,1)^2")

    def as_complex(self) -> complex:
        return complex(self.q, self.p)


def baker_step(pt: ClassicalPoint) -> ClassicalPoint:
    x = math.floor(2 * pt.q)
    p = (pt.p + x) / 2
    # p just below 1 can round up to 1.0; that is the torus point 0
    return ClassicalPoint(2 * pt.q - x, p if p < 1.0 else 0.0)


def baker_step_complex(a):
    """b = (5/4) a + (3/4) a* + (i/2 - 1) floor(a + a*).  Works on arrays."""
    a = np.asarray(a, dtype=complex)
    x = np.floor((a + a.conj()).real)
    b = 1.25 * a + 0.75 * a.conj() + (0.5j - 1) * x
    return b if b.ndim else complex(b)


def generating_W(bstar, a):
    """Generating function W(b*, a) with the additive constant set to zero.

    ``bstar`` and ``a`` are independent complex variables; the branch
    floor(a + a*) is read from ``a``.  Raises on the discontinuity line where
    a + a* is an integer.
    """
    bstar = np.asarray(bstar, dtype=complex)
    a = np.asarray(a, dtype=complex)
    s = (a + a.conj()).real
    if np.any(s == np.round(s)):
        raise ValueError("W is discontinuous where a + a* is an integer")
    x = np.floor(s)
    w = (3 * bstar ** 2 + 8 * a * bstar - 3 * a ** 2) / 10 + 0.8 * (1 + 0.5j) * (a + 1j * bstar - 0.5) * x
    return w if w.ndim else complex(w)


#: d^2 W / (da db*), constant everywhere off the discontinuity
W_MIXED_DERIVATIVE = 4.0 / 5.0


@dataclass(frozen=True)
class SymbolWindow:
    """Finite window ... s_{-1} s_0 . s_1 s_2 ... of the bi-infinite symbol string.

    ``bits[:dot]`` are the momentum symbols read right to left from the dot
    (bits[dot-1] = s_0), ``bits[dot:]`` the position symbols s_1, s_2, ...
    Anything beyond the window is taken as zero.
    """

    bits: Tuple[int, ...]
    dot: int

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("symbols must be 0 or 1")
        if not (0 <= self.dot <= len(self.bits)):
            raise ValueError(f"dot {self.dot} outside 0..{len(self.bits)}")

    @classmethod
    def encode(cls, q: float, p: float, n_q: int, n_p: int) -> "SymbolWindow":
        """Binary digits of (q, p): n_q position symbols and n_p momentum symbols."""
        qs = _digits(q, n_q)
        ps = _digits(p, n_p)
        return cls(tuple(reversed(ps)) + qs, n_p)

    def decode(self) -> ClassicalPoint:
        qs = self.bits[self.dot:]
        ps = self.bits[:self.dot][::-1]
        q = sum(s * 2.0 ** -(k + 1) for k, s in enumerate(qs))
        p = sum(s * 2.0 ** -(k + 1) for k, s in enumerate(ps))
        return ClassicalPoint(q, p)


def _digits(x: float, n: int) -> Tuple[int, ...]:
    out = []
    for _ in range(n):
        x *= 2
        d = int(x >= 1)
        out.append(d)
        x -= d
    return tuple(out)


def shift_symbols(w: SymbolWindow) -> SymbolWindow:
    """Move the dot one place to the right (one step of the baker's map)."""
    if w.dot >= len(w.bits):
        raise ValueError("dot is already at the right end of the window")
    return SymbolWindow(w.bits, w.dot + 1)
