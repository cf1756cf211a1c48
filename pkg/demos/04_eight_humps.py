"""
Fixed number of momentum bits: N = 8, r = 2, a = 3/4 + i/20.

The semiclassical propagator splits into 2R = 8 humps with heights
(4/5) Psi_kappa^2; kappa = 4 is the one the classical map predicts.  The
exact Husimi function of B|a> is printed next to the semiclassical one, then
the hump heights are compared for growing N at the same r.
"""

import numpy as np

from _ascii import render
from qbaker import BakerFamilyParams, PhasePoint, SemiclassicalRegime, compare_exact_semiclassical, hump_catalog

a = PhasePoint(0.75, 0.05)
regime = SemiclassicalRegime("theta-one", 2)

print(f"{'kappa':>5} {'b1':>6} {'b2':>7} {'Psi^2':>8}  classical")
for h in hump_catalog(a.a, 2):
    print(f"{h.kappa:>5} {h.b1:6.3f} {h.b2:7.4f} {h.weight:8.5f}  {'*' if h.is_classical else ''}")

rep = compare_exact_semiclassical(a, BakerFamilyParams.from_path(1, -2, 8), regime, 32, 32)
print("\nexact |<b|B|a>|^2, N = 8")
print(render(rep.exact))
print("\nsemiclassical, N = 8")
print(render(rep.semiclassical))
print(f"\ngrid L_inf {rep.linf_error:.4f}, L2 {rep.l2_error:.4f}")

print("\nrelative hump height error |exact - semi| / semi by kappa")
print("  N  " + " ".join(f"{k:>6}" for k in range(8)))
for N in (6, 8, 10, 12):
    r = compare_exact_semiclassical(a, BakerFamilyParams.from_path(1, -2, N), regime, 8, 8)
    print(f"{N:>3}  " + " ".join(f"{e:6.3f}" for e in r.hump_height_errors))
print("the error falls roughly like 1/D; the smallest humps converge last")
