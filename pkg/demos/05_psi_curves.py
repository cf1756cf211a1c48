"""
Hump probabilities Psi_kappa^2 as functions of a2 (a1 = 3/4).

For r = 2 the classical curve reaches 1 at a2 = (m + 1/2)/4, where all other
humps vanish.  As r grows the classical hump takes almost all the weight,
though not monotonically in r from one r to the next.
"""

import math

import numpy as np

from qbaker.semiclassical import psi_kappa, psi_kappa_curve

a1 = 0.75
a2 = np.linspace(0.005, 0.995, 100)
curves = np.array([psi_kappa_curve(a1, a2, 2, k) ** 2 for k in range(8)])
print("r = 2: largest weight through a2 (rows a2, columns kappa = 0..7)")
for i in range(0, len(a2), 9):
    row = " ".join(f"{c:5.3f}" for c in curves[:, i])
    print(f"  a2={a2[i]:.3f}  {row}   sum={curves[:, i].sum():.12f}")

print("\ntouch points of the classical curve kappa = 4")
for m in range(4):
    print(f"  a2 = {(m + 0.5) / 4:.3f}: Psi^2 = {psi_kappa_curve(a1, [(m + 0.5) / 4], 2, 4)[0] ** 2:.12f}")

print("\nclassical hump weight against r")
for a2v in (0.05, 0.3, 0.62):
    a = complex(a1, a2v)
    ws = [psi_kappa(a, r, math.floor(2 * a1) * 2 ** r) ** 2 for r in range(11)]
    print(f"  a2={a2v:.2f}: " + " ".join(f"{w:.4f}" for w in ws))
