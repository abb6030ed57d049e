"""G and H are two lattices with different row operators; they agree.

Loops over every content compatible boundary of a small two-step flag,
prints the nonzero values and checks the agreement and the full symmetry.
"""
from gysin_lattice import FlagShape, compute_G, compute_H
from gysin_lattice.suites import compatible_pairs
from gysin_lattice.symmetrizer import is_fully_symmetric

shape = FlagShape(2, 3, 3, (1, 2))
pairs = compatible_pairs(shape)
print(f"{len(pairs)} boundary pairs for {shape}")

for I, J in pairs:
    G = compute_G(shape, I, J)
    H = compute_H(shape, I, J)
    assert G == H
    if G:
        print(f"I={I} J={J}  G = {G}   symmetric: {is_fully_symmetric(G, shape.n)}")
