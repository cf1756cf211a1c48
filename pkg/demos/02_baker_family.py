"""
The family B_n = G_{n-1} o G_n^{-1} on N = 4 qubits.

Each B_n takes the basis state |a.. . x_1 x_2..x_n> to |a.. x_1 . x_2..x_n>,
i.e. moves the dot one symbol to the right like the classical shift.  As
matrices the composition needs the relabelling S_n of the first n qubits;
the bare product G_{n-1} G_n^dagger differs from B_n when n >= 2.
"""

import numpy as np

from qbaker import BakerFamilyParams, TorusSpace, baker_apply, pf_basis_state
from qbaker.baker import baker_dense, baker_dense_position_rep, balazs_voros_dense
from qbaker.torus import fourier_matrix, partial_fourier_matrix

N = 4
D = 2 ** N
space = TorusSpace.qubits(N)

print("symbol shift on a sample basis state, x = 1011 split at n")
for n in range(1, N + 1):
    bits = [1, 0, 1, 1]
    x, a = bits[:n], bits[n:]
    out = baker_apply(pf_basis_state(space, x, a), BakerFamilyParams(N, n))
    want = pf_basis_state(space, x[1:], [x[0]] + a)
    print(f"  n={n}  |{''.join(map(str, a[::-1]))}.{''.join(map(str, x))}> -> "
          f"|{''.join(map(str, ([x[0]] + a)[::-1]))}.{''.join(map(str, x[1:]))}>"
          f"   error {np.abs(out.amps - want.amps).max():.1e}")

print("\ndense cross-checks")
for n in range(1, N + 1):
    P = BakerFamilyParams(N, n)
    B = baker_dense(P)
    bare = partial_fourier_matrix(N, n - 1) @ partial_fourier_matrix(N, n).conj().T
    print(f"  n={n}  unitarity {np.abs(B.conj().T @ B - np.eye(D)).max():.1e}"
          f"  position-basis form {np.abs(baker_dense_position_rep(P) - B).max():.1e}"
          f"  bare product differs by {np.abs(bare - B).max():.2f}")
print(f"  Balazs-Voros map vs B_1: {np.abs(balazs_voros_dense(N) - baker_dense(BakerFamilyParams(N, 1))).max():.1e}")

prod = np.eye(D)
for n in range(1, N + 1):
    prod = prod @ baker_dense(BakerFamilyParams(N, n))
F = fourier_matrix(space)
rev = [int(format(i, f"0{N}b")[::-1], 2) for i in range(D)]
print("\nproduct B_1 B_2 ... B_N")
print(f"  distance to -i F_D          {np.abs(prod + 1j * F).max():.3f}")
print(f"  distance to -i F_D P_rev    {np.abs(prod + 1j * F[:, rev]).max():.1e}   (P_rev reverses the qubit order)")
