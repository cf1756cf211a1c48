import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qbaker.coherent import (
    HusimiGrid,
    PhasePoint,
    cell_centres,
    coherent_state,
    coherent_state_theta,
    husimi,
    normalization_sq,
    theta0,
)
from qbaker.torus import StateVector, TorusSpace, inner

unit = st.floats(0.0, 1.0, exclude_max=True)


def brute_theta(z, tau, M=60):
    mu = np.arange(-M, M + 1)
    return complex(np.exp(1j * np.pi * (tau * mu * mu + (2 * z + 1) * mu)).sum())


def brute_norm_sq(D, q, p, M=40):
    # direct double lattice sum of |<q_j|a>|^2 with the unity convention
    s = TorusSpace(D)
    qj = s.positions()
    mu = np.arange(-M, M + 1)
    d = qj[:, None] - q + mu[None, :]
    amps = np.exp(-np.pi * D * d * d + 1j * (2 * np.pi * D * p * d + np.pi * mu)).sum(axis=1)
    return float(np.sqrt(2.0 / D) * (np.abs(amps) ** 2).sum())


def test_theta_at_origin_oracle():
    # sum_mu (-1)^mu e^{-pi mu^2}, frozen from a 121-term brute-force sum
    assert abs(theta0(0, 1j) - 0.9135791381561168) < 1e-13
    assert abs(theta0(0, 1j) - brute_theta(0, 1j)) < 1e-14


@pytest.mark.parametrize("z,tau", [(0.3 + 0.2j, 1j), (-0.7 + 0.9j, 2.5j), (0.1 - 0.4j, 0.4 + 1.3j)])
def test_theta_matches_brute_and_doubling(z, tau):
    v = theta0(z, tau)
    assert abs(v - brute_theta(z, tau)) < 1e-12 * max(1, abs(v))
    assert abs(v - theta0(z, tau, window=40)) < 1e-12


def test_theta_rejects():
    with pytest.raises(ValueError):
        theta0(0, -1j)
    with pytest.raises(ValueError):
        theta0(0, 1j, eps=2.0)


@pytest.mark.parametrize("D,expected", [(8, 0.9999860506792213), (16, 0.9999999999513538)])
def test_normalization_frozen(D, expected):
    assert abs(normalization_sq(TorusSpace(D), PhasePoint(0.0, 0.0)) - expected) < 1e-14
    assert abs(brute_norm_sq(D, 0.0, 0.0) - expected) < 1e-12


@pytest.mark.parametrize("D", [8, 16, 64])
def test_normalization_matches_vector_norm(D, rng):
    s = TorusSpace(D)
    for q, p in rng.uniform(0, 1, (5, 2)):
        psi = coherent_state(s, PhasePoint(q, p))
        assert abs(psi.norm() ** 2 - normalization_sq(s, PhasePoint(q, p))) < 1e-12
        if D >= 16:
            assert abs(psi.norm() ** 2 - 1) < 1e-8


def test_normalize_flag_gives_unit_norm():
    psi = coherent_state(TorusSpace(4), PhasePoint(0.2, 0.9), normalize=True)
    assert abs(psi.norm() - 1) < 1e-14


@settings(max_examples=40, deadline=None)
@given(unit, unit, st.sampled_from([8, 16, 32]))
def test_quasi_periodicity(q, p, D):
    s = TorusSpace(D)
    a = coherent_state(s, PhasePoint(q, p)).amps
    b = coherent_state(s, PhasePoint(q + 1, p)).amps
    c = coherent_state(s, PhasePoint(q, p + 1)).amps
    assert np.abs(b + np.exp(1j * np.pi * D * p) * a).max() < 1e-10
    assert np.abs(c + np.exp(-1j * np.pi * D * q) * a).max() < 1e-10


@pytest.mark.parametrize("D", [4, 8, 16])
def test_theta_form_matches_direct_sum(D, rng):
    s = TorusSpace(D)
    for q, p in rng.uniform(0, 1, (4, 2)):
        a = coherent_state(s, PhasePoint(q, p)).amps
        t = coherent_state_theta(s, PhasePoint(q, p)).amps
        assert np.abs(a - t).max() < 1e-10


def test_odd_dimension_rejected():
    with pytest.raises(ValueError):
        coherent_state(TorusSpace(7), PhasePoint(0.1, 0.1))
    with pytest.raises(ValueError):
        normalization_sq(TorusSpace(7), PhasePoint(0.1, 0.1))


def test_large_dimension_does_not_overflow():
    psi = coherent_state(TorusSpace(2 ** 14), PhasePoint(0.99, 0.99))
    assert np.all(np.isfinite(psi.amps))
    assert abs(psi.norm() - 1) < 1e-10


def test_husimi_resolution_of_identity(rng):
    # D * sum over the grid of |<a|psi>|^2 * cell area = |psi|^2
    s = TorusSpace(8)
    psi = StateVector.random(s, rng)
    g = husimi(psi, 32, 32)
    assert abs(g.total() * 8 - 1) < 1e-12


def test_husimi_of_coherent_state_peaks_at_point():
    s = TorusSpace(32)
    g = husimi(coherent_state(s, PhasePoint(0.3, 0.6)), 40, 40)
    q, p = g.argmax()
    assert abs(q - 0.3) <= 1 / 40 and abs(p - 0.6) <= 1 / 40
    assert g.values.max() <= 1 + 1e-10
    assert g.metadata == {"D": 32, "alpha": 0.5, "beta": 0.5, "nq": 40, "np": 40, "eps": 1e-14}


def test_husimi_of_zero_state_is_zero():
    g = husimi(StateVector(TorusSpace(8), np.zeros(8)), 8, 8)
    assert np.all(g.values == 0)


def test_husimi_overlap_is_symmetric():
    s = TorusSpace(16)
    a, b = PhasePoint(0.2, 0.3), PhasePoint(0.7, 0.1)
    va, vb = coherent_state(s, a), coherent_state(s, b)
    assert abs(inner(va, vb) - np.conj(inner(vb, va))) < 1e-15


def test_grid_helpers():
    with pytest.raises(ValueError):
        cell_centres(1)
    with pytest.raises(ValueError):
        HusimiGrid(np.arange(2), np.arange(3), np.zeros((3, 2)))
    assert math.isclose(cell_centres(4)[0], 0.125)
