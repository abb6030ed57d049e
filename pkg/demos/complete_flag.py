"""Walk through the complete flag case n = 3.

Builds F, G and H for the complete flag boundary, shows the factored form of
F and pushes it forward with the coset symmetrizer.
"""
from gysin_lattice import FlagShape, LaurentPoly, compute_F, compute_G, compute_H, symmetrize

n = 3
shape = FlagShape(n - 1, n, n, tuple(range(1, n)))
I = (n - 1,) * n            # every column exits at the top with the top color
J = tuple(range(n - 1, -1, -1))

F = compute_F(shape, I, J)
print("F =", F)

# F should factor as prod_j (1 - 1/u_j)^(n - j)
closed = LaurentPoly.one(F.vars)
for j in range(1, n + 1):
    closed = closed * (1 - LaurentPoly.var(F.vars, f"u{j}") ** -1) ** (n - j)
print("matches product form:", F == closed)

print("G =", compute_G(shape, I, J))
print("H =", compute_H(shape, I, J))

# the coset sum over S_n / (S_1 x S_1 x S_1), then one exact division
print("symmetrize(F) =", symmetrize(F, n, shape.q))
