"""
On-hump convergence of B_1 (n = 1, so theta = 0) at a = 0.3 + 0.7i.

|<b|B_1|a>|^2 at the classical image b approaches 4/5.  The error falls so
fast that double precision only resolves it up to N = 6; the extended
precision column repeats the same computation with gmpy2.
"""

import time

import gmpy2

from qbaker import BakerFamilyParams, PhasePoint, exact_propagator
from qbaker.precise import exact_propagator_hp
from qbaker.semiclassical import classical_image

a = PhasePoint(0.3, 0.7)
b = PhasePoint.from_complex(classical_image(a.a))
print(f"a = {a.a}, classical image b = {b.a}")
print(f"{'N':>3} {'double |.|^2 - 4/5':>20} {'extended precision':>22} {'time':>7}")
for N in (4, 6, 8, 10, 12):
    P = BakerFamilyParams(N, 1)
    dbl = abs(exact_propagator(a, b, P)) ** 2 - 0.8
    t0 = time.perf_counter()
    v = exact_propagator_hp(a, b, P)
    with gmpy2.context(gmpy2.get_context(), precision=4000):
        err = abs(gmpy2.norm(v) - gmpy2.mpfr(4) / 5)
        e10 = int(gmpy2.floor(gmpy2.log10(err)))
        shown = f"{float(err / gmpy2.mpfr(10) ** e10):.6f}e{e10}"
    print(f"{N:>3} {dbl:>20.3e} {shown:>22} {time.perf_counter() - t0:6.1f}s")
