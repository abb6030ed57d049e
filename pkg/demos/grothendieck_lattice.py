"""Grassmannian lattices against factorial Grothendieck determinants.

Each partition in a 2 x 2 box becomes a 0/1 word. The single color lattice
amplitude for that word is compared with the determinant after the root
substitution.
"""
from gysin_lattice.grothendieck import (
    groth_det,
    partition_to_word,
    partitions_in_box,
    verify_lattice_correspondence,
)
from gysin_lattice.algebra import LaurentPoly, ring

n, p = 2, 4
for lam in partitions_in_box(n, p - n):
    word = partition_to_word(lam, n, p)
    out = verify_lattice_correspondence(lam, n, p, h0=1)
    print(f"lambda={lam!s:8} word={word}  ok={out.ok}  amplitude = {out.lhs}")

# the determinant itself, with a symbolic shift parameter
V = ring(2, 1)
z = [LaurentPoly.var(V, "u1"), LaurentPoly.var(V, "u2")]
print("G_(2,1)(z; w1) =", groth_det((2, 1), z, ["w1"]))
