"""
Toroidal coherent states, theta functions and Husimi functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._parallel import map_chunks
from .torus import StateVector, TorusSpace

DEFAULT_EPS = 1e-14


@dataclass(frozen=True)
class PhasePoint:
    """A phase-space point a = q + ip."""

    q: float
    p: float

    def __post_init__(self):
        if not (math.isfinite(self.q) and math.isfinite(self.p)):
            raise ValueError("phase point coordinates must be finite")

    @classmethod
    def from_complex(cls, a: complex) -> "PhasePoint":
        return cls(float(np.real(a)), float(np.imag(a)))

    @property
    def a(self) -> complex:
        return complex(self.q, self.p)


def _check_eps(eps):
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps!r}")


def theta_window(z: complex, tau: complex, eps: float) -> int:
    """Half-width M of the sum so that the first omitted term is below eps.

    Solves pi Im(tau) m^2 - 2 pi |Im z| m > ln(1/eps) for m = M + 1, which
    also puts m past the peak of the Gaussian envelope.
    """
    t = tau.imag
    y = abs(complex(z).imag)
    root = (y + math.sqrt(y * y + t * math.log(1.0 / eps) / math.pi)) / t
    return max(1, math.ceil(root))


def theta0(z: complex, tau: complex, eps: float = DEFAULT_EPS, window: int | None = None) -> complex:
    """theta_0[z|tau] = sum_mu exp(i pi (tau mu^2 + (2z + 1) mu))."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError(f"theta function needs Im(tau) > 0, got tau={tau!r}")
    _check_eps(eps)
    M = theta_window(z, tau, eps) if window is None else int(window)
    mu = np.arange(-M, M + 1)
    terms = np.exp(1j * np.pi * (tau * mu * mu + (2 * z + 1) * mu))
    # sum from the smallest terms inwards
    order = np.argsort(np.abs(terms))
    return complex(np.sum(terms[order]))


def coherent_window(D: int, eps: float) -> int:
    return max(3, math.ceil(math.sqrt(math.log(1.0 / eps) / (math.pi * D))) + 2)


def coherent_amplitudes(space: TorusSpace, q, p, eps: float = DEFAULT_EPS,
                        window: int | None = None) -> np.ndarray:
    """Position amplitudes of the coherent states at the points q + ip.

    ``q`` and ``p`` are broadcast to 1-d arrays of length P; the result has
    shape (P, D).  The exponent is evaluated with its real and imaginary parts
    separated, real part -pi D (q_j - q + mu)^2, so that nothing overflows at
    large D.
    """
    _check_eps(eps)
    q, p = np.broadcast_arrays(np.atleast_1d(np.asarray(q, float)), np.atleast_1d(np.asarray(p, float)))
    D = space.D
    M = coherent_window(D, eps) if window is None else int(window)
    mu = np.arange(-M, M + 1)
    qj = space.positions()
    d = qj[None, :, None] - q[:, None, None] + mu[None, None, :]
    re = -np.pi * D * d * d
    im = np.pi * D * (q * p)[:, None, None] + 2 * np.pi * D * p[:, None, None] * d + np.pi * mu
    amps = np.exp(re + 1j * im).sum(axis=-1)
    return (2.0 / D) ** 0.25 * amps


def coherent_state(space: TorusSpace, point: PhasePoint, eps: float = DEFAULT_EPS,
                   normalize: bool = False, window: int | None = None) -> StateVector:
    """The coherent state |a> with the unity normalization convention.

    With ``normalize`` the vector is divided by its exact norm instead.
    """
    if space.D % 2:
        raise ValueError("coherent states are defined here for even D")
    amps = coherent_amplitudes(space, point.q, point.p, eps, window)[0]
    if normalize:
        amps = amps / np.linalg.norm(amps)
    return StateVector(space, amps)


def coherent_state_theta(space: TorusSpace, point: PhasePoint, eps: float = DEFAULT_EPS) -> StateVector:
    """Closed theta-function form of the same state; only sensible at moderate D."""
    a = point.a
    D = space.D
    qj = space.positions()
    pref = np.exp(-np.pi * D / 2 * (abs(a) ** 2 + a * a) - np.pi * D * (qj * qj - 2 * qj * a))
    th = np.array([theta0(1j * D * (x - a), 1j * D, eps) for x in qj])
    return StateVector(space, (2.0 / D) ** 0.25 * pref * th)


def normalization_sq(space: TorusSpace, point: PhasePoint, eps: float = DEFAULT_EPS) -> float:
    """N^2 = theta_0[qD | iD/2] theta_0[pD | iD/2] for even D."""
    D = space.D
    if D % 2:
        raise ValueError("normalization formula needs even D")
    val = theta0(point.q * D, 0.5j * D, eps) * theta0(point.p * D, 0.5j * D, eps)
    if abs(val.imag) > 1e-9:
        raise ArithmeticError(f"normalization has imaginary residue {val.imag:.3e}")
    return float(val.real)


@dataclass(frozen=True, eq=False)
class HusimiGrid:
    """Samples of a phase-space density on a cell-centred grid.

    ``values[i, k]`` belongs to the point (q[i], p[k]).
    """

    q: np.ndarray
    p: np.ndarray
    values: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.values.shape != (len(self.q), len(self.p)):
            raise ValueError("values shape does not match the coordinates")

    @property
    def shape(self):
        return self.values.shape

    def cell_area(self) -> float:
        return 1.0 / (len(self.q) * len(self.p))

    def argmax(self):
        """(q, p) of the largest grid value."""
        i, k = np.unravel_index(np.argmax(self.values), self.values.shape)
        return float(self.q[i]), float(self.p[k])

    def total(self) -> float:
        return float(self.values.sum() * self.cell_area())


def cell_centres(n: int) -> np.ndarray:
    if n < 2:
        raise ValueError(f"grid size must be >= 2, got {n}")
    return (np.arange(n) + 0.5) / n


def overlap_grid(space: TorusSpace, amps: np.ndarray, q, p, eps: float = DEFAULT_EPS,
                 normalize: bool = False, chunk: int = 256) -> np.ndarray:
    """<a|psi> for every pair (q[i], p[k]); returns a (len(q), len(p)) array."""
    qq, pp = np.meshgrid(q, p, indexing="ij")
    qq, pp = qq.ravel(), pp.ravel()

    def block(lo, hi):
        c = coherent_amplitudes(space, qq[lo:hi], pp[lo:hi], eps)
        if normalize:
            c = c / np.linalg.norm(c, axis=1, keepdims=True)
        return c.conj() @ amps

    return map_chunks(block, qq.size, chunk).reshape(len(q), len(p))


def husimi(state: StateVector, n_q: int, n_p: int, eps: float = DEFAULT_EPS,
           normalize: bool = False) -> HusimiGrid:
    """|<a|psi>|^2 sampled at q_i = (i + 1/2)/n_q, p_k = (k + 1/2)/n_p."""
    space = state.space
    q, p = cell_centres(n_q), cell_centres(n_p)
    vals = np.abs(overlap_grid(space, state.amps, q, p, eps, normalize)) ** 2
    meta = {"D": space.D, "alpha": space.alpha, "beta": space.beta,
            "nq": n_q, "np": n_p, "eps": eps}
    return HusimiGrid(q, p, vals, meta)
