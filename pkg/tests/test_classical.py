import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from qbaker.classical import (
    W_MIXED_DERIVATIVE,
    ClassicalPoint,
    SymbolWindow,
    baker_step,
    baker_step_complex,
    generating_W,
    shift_symbols,
)

unit = st.floats(0.0, 1.0, exclude_max=True)


def test_baker_step_examples():
    assert baker_step(ClassicalPoint(0.25, 0.5)) == ClassicalPoint(0.5, 0.25)
    assert baker_step(ClassicalPoint(0.75, 0.5)) == ClassicalPoint(0.5, 0.75)
    # q = 1/2 takes the upper branch
    assert baker_step(ClassicalPoint(0.5, 0.0)) == ClassicalPoint(0.0, 0.5)


def test_point_domain():
    with pytest.raises(ValueError):
        ClassicalPoint(1.0, 0.2)
    with pytest.raises(ValueError):
        ClassicalPoint(0.2, -0.1)


@settings(max_examples=200)
@given(unit, unit)
def test_complex_form_agrees(q, p):
    b = baker_step(ClassicalPoint(q, p))
    c = baker_step_complex(complex(q, p))
    d = c - b.as_complex()
    # compare on the torus
    assert abs(d.real - round(d.real)) < 1e-14 and abs(d.imag - round(d.imag)) < 1e-14


def test_complex_form_vectorized():
    a = np.array([0.25 + 0.5j, 0.75 + 0.5j])
    assert np.allclose(baker_step_complex(a), [0.5 + 0.25j, 0.5 + 0.75j])


def test_area_preservation_by_counting(rng):
    # both halves of a uniform cloud land uniformly in the square
    pts = rng.uniform(0, 1, (20000, 2))
    img = baker_step_complex(pts[:, 0] + 1j * pts[:, 1])
    h, _, _ = np.histogram2d(img.real, img.imag, bins=4, range=[[0, 1], [0, 1]])
    assert np.abs(h / len(pts) - 1 / 16).max() < 0.01


@settings(max_examples=100)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 2 ** 12 - 1), st.integers(0, 2 ** 12 - 1))
def test_symbolic_shift_is_baker_step(n_q, n_p, iq, ip):
    # dyadic points are represented exactly by a finite window
    q = (iq % 2 ** n_q) / 2 ** n_q
    p = (ip % 2 ** n_p) / 2 ** n_p
    w = SymbolWindow.encode(q, p, n_q, n_p)
    assert w.decode() == ClassicalPoint(q, p)
    assert shift_symbols(w).decode() == baker_step(ClassicalPoint(q, p))


def test_symbol_window_layout():
    w = SymbolWindow.encode(0.75, 0.25, 2, 2)  # q = .11, p = .01
    assert w.bits == (1, 0, 1, 1) and w.dot == 2
    with pytest.raises(ValueError):
        shift_symbols(SymbolWindow((1, 0), 2))
    with pytest.raises(ValueError):
        SymbolWindow((2,), 0)
    with pytest.raises(ValueError):
        SymbolWindow((1,), 3)


def _fd(f, x, h=1e-6):
    return (f(x + h) - f(x - h)) / (2 * h)


@settings(max_examples=100)
@given(st.floats(0.02, 0.98), st.floats(0.02, 0.98))
def test_generating_relations(q, p):
    assume(abs(q - 0.5) > 0.01)
    a = complex(q, p)
    b = baker_step_complex(a)
    bs = np.conj(b)
    # dW/db* = b and dW/da = a* along the classical image
    assert abs(_fd(lambda t: generating_W(t, a), bs) - b) < 1e-6
    assert abs(_fd(lambda t: generating_W(bs, t), a) - np.conj(a)) < 1e-6


def test_mixed_derivative_is_four_fifths():
    a, bs = 0.3 + 0.2j, 0.4 - 0.1j
    h = 1e-4
    mixed = (generating_W(bs + h, a + h) - generating_W(bs + h, a - h)
             - generating_W(bs - h, a + h) + generating_W(bs - h, a - h)) / (4 * h * h)
    assert abs(mixed - W_MIXED_DERIVATIVE) < 1e-6
    assert W_MIXED_DERIVATIVE == 0.8


def test_generating_rejects_discontinuity():
    with pytest.raises(ValueError):
        generating_W(0.1, 0.5 + 0.3j)
