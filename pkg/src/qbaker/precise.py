"""
Extended-precision evaluation of the exact coherent-state propagator.

The single-hump propagators converge to the exact matrix element faster than
any power of 1/D, so their error drops below double-precision rounding by
D ~ 256.  This module repeats the exact computation (coherent states,
partial Fourier transforms, qubit shift, inner product) with gmpy2 numbers at
a working precision chosen from D, so such errors can still be measured.
"""

from __future__ import annotations

import math

import gmpy2
from gmpy2 import mpc, mpfr

from .baker import BakerFamilyParams
from .coherent import PhasePoint


def default_digits(D: int) -> int:
    # the theta = 0 error at the hump scales like exp(-pi D / 10)
    return int(0.15 * D) + 40


def _expi(theta):
    s, c = gmpy2.sin_cos(theta)
    return mpc(c, s)


def _fft(v, sign):
    """Unnormalized radix-2 DFT: out[j] = sum_k exp(sign 2 pi i jk/M) v[k]."""
    M = len(v)
    if M == 1:
        return list(v)
    bits = M.bit_length() - 1
    out = [v[int(format(i, f"0{bits}b")[::-1], 2)] for i in range(M)]
    pi = gmpy2.const_pi()
    size = 2
    while size <= M:
        half = size // 2
        tw = [_expi(sign * 2 * pi * t / size) for t in range(half)]
        for start in range(0, M, size):
            for t in range(half):
                u = out[start + t]
                w = tw[t] * out[start + t + half]
                out[start + t] = u + w
                out[start + t + half] = u - w
        size *= 2
    return out


def _antiperiodic_dft(v, inverse=False):
    # (1/sqrt M) sum_k exp(+-2 pi i (j+1/2)(k+1/2)/M) v_k
    M = len(v)
    sign = -1 if inverse else 1
    pi = gmpy2.const_pi()
    pre = [_expi(sign * pi * k / M) * v[k] for k in range(M)]
    core = _fft(pre, sign)
    glob = _expi(sign * pi / (2 * M)) / gmpy2.sqrt(mpfr(M))
    return [glob * _expi(sign * pi * j / M) * core[j] for j in range(M)]


def _partial_fourier(amps, N, n, inverse=False):
    M = 2 ** (N - n)
    out = []
    for blk in range(2 ** n):
        out.extend(_antiperiodic_dft(amps[blk * M:(blk + 1) * M], inverse))
    return out


def _shift(amps, N, n):
    # (x_1, m, y) -> (m, x_1, y)
    M = 2 ** (N - n)
    H = 2 ** (n - 1)
    out = [None] * len(amps)
    for x1 in (0, 1):
        for m in range(H):
            src = (x1 * H + m) * M
            dst = (m * 2 + x1) * M
            out[dst:dst + M] = amps[src:src + M]
    return out


def coherent_amplitudes_hp(D: int, q, p):
    """Unity-normalized coherent-state amplitudes at the working precision."""
    q, p = mpfr(q), mpfr(p)
    pi = gmpy2.const_pi()
    prec = gmpy2.get_context().precision
    eps_ln = prec * math.log(2)
    M = max(3, math.ceil(math.sqrt(eps_ln / (math.pi * D))) + 2)
    pref = gmpy2.root(mpfr(2) / D, 4)
    out = []
    for j in range(D):
        qj = (mpfr(j) + mpfr(0.5)) / D
        acc = mpc(0)
        for mu in range(-M, M + 1):
            d = qj - q + mu
            re = -pi * D * d * d
            im = pi * D * q * p + 2 * pi * D * p * d + pi * mu
            acc += gmpy2.exp(re) * _expi(im)
        out.append(pref * acc)
    return out


def exact_propagator_hp(a: PhasePoint, b: PhasePoint, params: BakerFamilyParams, digits: int | None = None):
    """<b|B_n|a> as a gmpy2 mpc carrying roughly ``digits`` significant digits.

    Point coordinates are taken as the exact binary values of the given floats.
    """
    D, N, n = params.D, params.N, params.n
    digits = default_digits(D) if digits is None else int(digits)
    with gmpy2.context(gmpy2.get_context(), precision=int(digits * 3.33) + 32):
        ket = coherent_amplitudes_hp(D, a.q, a.p)
        bra = coherent_amplitudes_hp(D, b.q, b.p)
        v = _partial_fourier(ket, N, n, inverse=True)
        v = _shift(v, N, n)
        v = _partial_fourier(v, N, n - 1)
        acc = mpc(0)
        for x, y in zip(bra, v):
            acc += x.conjugate() * y
        return +acc
