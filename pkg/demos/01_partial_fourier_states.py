"""
Husimi functions of the partially Fourier transformed basis for N = 2.

For n position bits the basis state |a_{N-n}..a_1 . x_1..x_n> is confined to
a position strip of width 2^-n and roughly to a momentum strip of width
2^-(N-n).  With n = 2 the states are position eigenstates (vertical strips),
with n = 0 momentum eigenstates (horizontal strips), and n = 1 gives the
four quarter squares.
"""

import itertools

import numpy as np

from _ascii import render
from qbaker import TorusSpace, husimi, pf_basis_state

N = 2
space = TorusSpace.qubits(N)

for n in (2, 1, 0):
    print(f"=== n = {n}: {n} position bit(s), {N - n} momentum bit(s) ===")
    for bits in itertools.product((0, 1), repeat=N):
        x, a = list(bits[:n]), list(bits[n:])
        g = husimi(pf_basis_state(space, x, a), 16, 16)
        label = "".join(map(str, a[::-1])) + "." + "".join(map(str, x))
        q, p = g.argmax()
        print(f"|{label}>  peak at q={q:.3f} p={p:.3f}   D * integral = {g.total() * space.D:.6f}")
        print(render(g.values))
    print()
