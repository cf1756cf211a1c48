"""
Semiclassical coherent-state propagators of the baker family and the
exact-versus-semiclassical comparison harness.

Three regimes are covered, keyed by how n = theta N + s grows with N:
``theta-zero`` and ``theta-mid`` share the single-hump Van Vleck propagator,
``theta-one`` (a fixed number r of momentum bits) gives 2R = 2**(r+1) humps
with probabilities Psi_kappa^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .baker import BakerFamilyParams, exact_propagator_grid, exact_propagator_points
from .classical import W_MIXED_DERIVATIVE, generating_W
from .coherent import DEFAULT_EPS, PhasePoint, cell_centres

SQRT_4_5 = math.sqrt(4.0 / 5.0)
REGIMES = ("theta-zero", "theta-mid", "theta-one")

#: relative size of the outermost kappa terms that counts as a too-small window
KAPPA_TAIL_TOL = 1e-12
#: distance from a singular a2 at which Psi switches to the limit branch
PSI_SINGULAR_TOL = 1e-9
PSI_LIMIT_STEP = 1e-6


def _as_complex(pt):
    if isinstance(pt, PhasePoint):
        return pt.a
    return np.asarray(pt, dtype=complex)


def _check_a(a: complex):
    a1, a2 = a.real, a.imag
    if not (0 < a1 < 1 and 0 < a2 < 1):
        raise ValueError(f"a = {a} must lie strictly inside the unit square")
    if a1 == 0.5:
        raise ValueError("a1 = 1/2 is excluded")


def _check_b(b, exclude_half=True):
    b1, b2 = np.real(b), np.imag(b)
    if np.any((b1 <= 0) | (b1 >= 1) | (b2 <= 0) | (b2 >= 1)):
        raise ValueError("b must lie strictly inside the unit square")
    if exclude_half and np.any(b2 == 0.5):
        raise ValueError("b2 = 1/2 is excluded")


def _ret(v):
    return complex(v) if np.ndim(v) == 0 else v


@dataclass(frozen=True)
class SemiclassicalRegime:
    tag: str
    r: Optional[int] = None

    def __post_init__(self):
        if self.tag not in REGIMES:
            raise ValueError(f"unknown regime {self.tag!r}; expected one of {REGIMES}")
        if self.tag == "theta-one":
            if self.r is None or self.r < 0:
                raise ValueError("theta-one regime needs r >= 0")
        elif self.r is not None:
            raise ValueError(f"r is only meaningful for theta-one, got r={self.r}")

    def check(self, params: BakerFamilyParams):
        """Raise if the map parameters do not belong to this regime."""
        if self.tag == "theta-one":
            if params.momentum_bits != self.r:
                raise ValueError(f"theta-one with r={self.r} needs n = N - r, got N={params.N}, n={params.n}")
            if params.theta is not None and params.theta != 1:
                raise ValueError(f"params lie on a theta={params.theta} path, not theta=1")
        else:
            if params.n >= params.N:
                raise ValueError(f"{self.tag} needs at least one momentum bit (n < N)")
            if params.theta is not None:
                if self.tag == "theta-zero" and params.theta != 0:
                    raise ValueError(f"params lie on a theta={params.theta} path, not theta=0")
                if self.tag == "theta-mid" and not (0 < params.theta < 1):
                    raise ValueError(f"params lie on a theta={params.theta} path, not 0<theta<1")


# ---------------------------------------------------------------------------
# single-hump regimes


def vanvleck_explicit(a, b, D: int, form: str = "62"):
    """Explicit single-hump propagator, valid for theta < 1.

    ``form="61"`` multiplies by the extra factor (1 - |2a1 - b1 - floor(2a1)|/5)
    of the alternative theta-mid form.  ``b`` may be an array of complex points.
    """
    a = complex(_as_complex(a))
    b = _as_complex(b)
    _check_a(a)
    _check_b(b)
    a1, a2 = a.real, a.imag
    b1, b2 = b.real, b.imag
    x = math.floor(2 * a1)
    d1 = 2 * a1 - b1 - x
    d2 = a2 - 2 * b2 + x
    phase = (3 * a1 * a2 + 3 * b1 * b2 + 4 * a1 * b2 - 4 * a2 * b1) - 2 * x * (a1 + 2 * b1 + 2 * a2 + b2 - x / 2)
    val = SQRT_4_5 * np.exp(-np.pi * D / 5 * (d1 * d1 + d2 * d2 + 1j * phase))
    if form == "61":
        val = val * (1 - np.abs(d1) / 5)
    elif form != "62":
        raise ValueError(f"form must be '61' or '62', got {form!r}")
    return _ret(val)


def vanvleck_generic(a, b, D: int):
    """sqrt(d2W/da db*) exp(pi D W(b*, a)) exp(-pi D (|a|^2 + |b|^2)/2)."""
    a = complex(_as_complex(a))
    b = _as_complex(b)
    _check_a(a)
    _check_b(b)
    W = generating_W(np.conj(b), a)
    expo = np.pi * D * (W - (abs(a) ** 2 + np.abs(b) ** 2) / 2)
    return _ret(math.sqrt(W_MIXED_DERIVATIVE) * np.exp(expo))


def classical_image(a) -> complex:
    a = complex(_as_complex(a))
    x = math.floor(2 * a.real)
    return complex(2 * a.real - x, (a.imag + x) / 2)


# ---------------------------------------------------------------------------
# theta = 1: fixed number of momentum bits


def _stochastic_terms(a: complex, b: np.ndarray, D: int, R: int, kappas: np.ndarray) -> np.ndarray:
    """Per-kappa contributions, shape (len(kappas), len(b))."""
    a1, a2 = a.real, a.imag
    b1, b2 = b.real, b.imag
    x = math.floor(2 * a1)
    j = np.arange(R)[:, None, None] + 0.5
    k = np.arange(R)[None, :, None] + 0.5
    l = np.arange(2 * R)[None, None, :] + 0.5
    # b-independent phase, summed over j: shape (R, 2R)
    c_kl = np.exp(1j * np.pi / R * (j * l + R * x * l - 2 * j * k)).sum(axis=0)
    kk = np.arange(R)[:, None]
    ll = np.arange(2 * R)[None, :]
    lin = (2 * kk - ll + 0.5).ravel()          # 2k - l + 1/2
    kap = (kk + 2 * ll + 1.5).ravel()          # k + 2l + 3/2
    c_kl = c_kl.ravel()
    z = 2 * a - np.conj(b) - x
    d1 = 2 * a1 - b1 - x
    base = 3 * a1 * a2 + 3 * b1 * b2 + 4 * a1 * b2 - 4 * a2 * b1
    out = np.empty((len(kappas), b.size), dtype=complex)
    for i, kappa in enumerate(kappas):
        d2 = a2 - 2 * b2 + kappa / R
        brace = (d1 * d1 + d2 * d2 + 1j * base
                 - 2j * kappa * (a1 + 2 * b1 - x / 2) / R - 2j * x * (2 * a2 + b2))
        outer = -np.pi * D / 5 * brace
        inner_ = 2 * np.pi / 5 * z[:, None] * lin[None, :] - 2j * np.pi / (5 * R) * kap[None, :] * kappa
        out[i] = (c_kl[None, :] * np.exp(outer[:, None] + inner_)).sum(axis=1)
    return out / (math.sqrt(5) * R * R)


def stochastic_propagator(a, b, D: int, r: int, kappa_window: Optional[int] = None):
    """Semiclassical propagator for a fixed number r of momentum bits.

    The unconstrained kappa sum runs over [-kappa_window, kappa_window].  The
    default starts at 4R and widens until the outermost terms are negligible;
    an explicit window that is too small raises ``ArithmeticError``.
    """
    a = complex(_as_complex(a))
    b_in = _as_complex(b)
    b = np.atleast_1d(b_in).ravel()
    if int(r) != r or r < 0:
        raise ValueError(f"r must be a non-negative integer, got {r!r}")
    R = 2 ** int(r)
    if D % (2 * R):
        raise ValueError(f"R = {R} must divide D/2 = {D / 2}")
    _check_a(a)
    if np.any((b.real <= 0) | (b.real >= 1)):
        raise ValueError("b1 must lie strictly inside (0, 1)")
    auto = kappa_window is None
    W = 4 * R if auto else int(kappa_window)
    if W < 2 * R:
        raise ValueError(f"kappa window {W} is smaller than 2R = {2 * R}")
    while True:
        kappas = np.arange(-W, W + 1)
        terms = _stochastic_terms(a, b, D, R, kappas)
        total = terms.sum(axis=0)
        edge = np.maximum(np.abs(terms[0]), np.abs(terms[-1])).max()
        if edge <= KAPPA_TAIL_TOL * max(np.abs(total).max(), np.finfo(float).tiny):
            break
        if not auto:
            raise ArithmeticError(f"kappa window {W} too small: boundary terms {edge:.3e}")
        W *= 2
    return _ret(total[0]) if np.ndim(b_in) == 0 else total.reshape(np.shape(b_in))


def _sinpi(t):
    # sin(pi t) with the argument reduced to [-1/2, 1/2] first, so that
    # values near a zero keep full relative accuracy
    t = np.asarray(t, float)
    t = t - 2 * np.round(t / 2)
    t = np.where(t > 0.5, 1 - t, np.where(t < -0.5, -1 - t, t))
    return np.sin(np.pi * t)


def _psi_raw(a2, x: int, R: int, kappa: int):
    a2 = np.asarray(a2, float)
    j = (np.arange(R) + 0.5) / R
    # cos(pi R a2) = +-sin(pi R (a2 - (m + 1/2)/R)); only its square is needed
    m = np.round(R * a2 - 0.5)
    num = _sinpi(R * (a2 - (m + 0.5) / R)) ** 2
    # the shifts x - kappa/R + j are dyadic, so these differences are exact
    den = _sinpi(a2[..., None] - j) * _sinpi(0.5 * (a2[..., None] - (x - kappa / R + j)))
    return num * (1.0 / den).sum(axis=-1) / (2 * R * R)


def psi_kappa_curve(a1: float, a2, r: int, kappa: int) -> np.ndarray:
    """Psi_kappa as a function of an array of a2 values at fixed a1.

    Points within PSI_SINGULAR_TOL of a singular line a2 = (m + 1/2)/R use the
    symmetric average of the neighbours a2 +- PSI_LIMIT_STEP, extrapolated
    with the average at twice the step.
    """
    if a1 == 0.5:
        raise ValueError("a1 = 1/2 is excluded")
    R = 2 ** int(r)
    x = math.floor(2 * a1)
    a2 = np.atleast_1d(np.asarray(a2, float))
    sing = is_singular_a2(a2, r)
    out = np.empty_like(a2)
    ok = ~sing
    out[ok] = _psi_raw(a2[ok], x, R, kappa)
    if sing.any():
        s = a2[sing]

        def avg(h):
            return 0.5 * (_psi_raw(s - h, x, R, kappa) + _psi_raw(s + h, x, R, kappa))

        # the plain average is off by O((R h)^2); one Richardson step removes that
        out[sing] = (4 * avg(PSI_LIMIT_STEP) - avg(2 * PSI_LIMIT_STEP)) / 3
    return out


def is_singular_a2(a2, r: int):
    R = 2 ** int(r)
    t = np.asarray(a2, float) * R - 0.5
    return np.abs(t - np.round(t)) < PSI_SINGULAR_TOL * R


def psi_kappa(a, r: int, kappa: int) -> float:
    """Amplitude Psi_kappa(a) of hump kappa; sum over a full period of Psi^2 is 1."""
    a = complex(_as_complex(a))
    return float(psi_kappa_curve(a.real, a.imag, r, kappa)[0])


@dataclass(frozen=True)
class HumpDescriptor:
    kappa: int
    b1: float
    b2: float
    weight: float
    is_classical: bool

    @property
    def b(self) -> complex:
        return complex(self.b1, self.b2)


def kappa_range(a2: float, r: int) -> np.ndarray:
    """The 2R integers kappa with -a2 R < kappa < 2R - a2 R.

    When a2 R is an integer one end point is included so the count stays 2R.
    """
    R = 2 ** int(r)
    lo = math.floor(-a2 * R) + 1
    return np.arange(lo, lo + 2 * R)


def hump_catalog(a, r: int) -> List[HumpDescriptor]:
    a = complex(_as_complex(a))
    _check_a(a)
    R = 2 ** int(r)
    x = math.floor(2 * a.real)
    b1 = 2 * a.real - x
    out = []
    for kappa in kappa_range(a.imag, r):
        w = psi_kappa(a, r, int(kappa)) ** 2
        out.append(HumpDescriptor(int(kappa), b1, (a.imag + kappa / R) / 2, w, bool(kappa == x * R)))
    return out


def two_hump_weights(a) -> tuple:
    """Closed-form r = 0 hump heights (4/5)cos^2 and (4/5)sin^2 of (pi/2)(a2 - 1/2)."""
    a = complex(_as_complex(a))
    u = np.pi / 2 * (a.imag - 0.5)
    return 0.8 * math.cos(u) ** 2, 0.8 * math.sin(u) ** 2


# ---------------------------------------------------------------------------
# comparison harness


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    a: complex
    params: BakerFamilyParams
    regime: SemiclassicalRegime
    q: np.ndarray
    p: np.ndarray
    exact: np.ndarray
    semiclassical: np.ndarray
    linf_error: float
    l2_error: float
    humps: list = field(default_factory=list)
    hump_exact: np.ndarray = None
    hump_semiclassical: np.ndarray = None
    hump_height_errors: np.ndarray = None
    metadata: dict = field(default_factory=dict)


def semiclassical_values(a, b, D: int, regime: SemiclassicalRegime, form: str = "62"):
    """The regime's propagator formula at the points b."""
    if regime.tag == "theta-one":
        return stochastic_propagator(a, b, D, regime.r)
    return vanvleck_explicit(a, b, D, form=form)


def hump_centres(a, regime: SemiclassicalRegime):
    if regime.tag == "theta-one":
        return hump_catalog(a, regime.r)
    img = classical_image(a)
    kappa = math.floor(2 * complex(_as_complex(a)).real)
    return [HumpDescriptor(kappa, img.real, img.imag, 1.0, True)]


def compare_exact_semiclassical(a, params: BakerFamilyParams, regime: SemiclassicalRegime,
                                n_q: int = 64, n_p: int = 64, eps: float = DEFAULT_EPS,
                                normalize: bool = False, form: str = "62") -> ComparisonReport:
    """|<b|B|a>|^2 against the regime's formula on a cell-centred b grid.

    The L2 error is the grid estimate of the continuum norm, sqrt(sum diff^2 * cell area).
    Hump heights are compared at the exact hump centres, relative to the
    semiclassical height.
    """
    regime.check(params)
    pt = a if isinstance(a, PhasePoint) else PhasePoint.from_complex(a)
    D = params.D
    q, p = cell_centres(n_q), cell_centres(n_p)
    exact = np.abs(exact_propagator_grid(pt, params, q, p, eps, normalize)) ** 2
    bb = q[:, None] + 1j * p[None, :]
    semi = np.abs(semiclassical_values(pt, bb, D, regime, form)) ** 2
    diff = exact - semi
    linf = float(np.abs(diff).max())
    l2 = float(np.sqrt((diff ** 2).sum() / (n_q * n_p)))

    humps = hump_centres(pt, regime)
    hq = np.array([h.b1 for h in humps])
    hp = np.array([h.b2 for h in humps])
    h_exact = np.abs(exact_propagator_points(pt, params, hq, hp, eps, normalize)) ** 2
    h_semi = np.abs(semiclassical_values(pt, hq + 1j * hp, D, regime, form)) ** 2
    rel = np.abs(h_exact - h_semi) / h_semi
    meta = {"D": D, "N": params.N, "n": params.n, "regime": regime.tag, "r": regime.r,
            "a": [pt.q, pt.p], "nq": n_q, "np": n_p, "eps": eps, "normalize": normalize, "form": form}
    return ComparisonReport(pt.a, params, regime, q, p, exact, semi, linf, l2,
                            humps, h_exact, h_semi, rel, meta)
