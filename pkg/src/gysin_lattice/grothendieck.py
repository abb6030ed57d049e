"""
Double Grassmannian Grothendieck polynomials in determinant form and their
identification with five-vertex (m = 1) partition functions.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .algebra import LaurentPoly, VarTable, poly_exact_div, poly_substitute, ring
from .partition import FlagShape, compute_F, compute_G
from .report import Outcome
from .symmetrizer import symmetrize
from .vertex import StateVector, apply_product, b_op, d_op


def as_partition(parts: Sequence[int]) -> tuple:
    """Validate a partition and drop trailing zeros."""
    parts = tuple(int(x) for x in parts)
    if any(x < 0 for x in parts):
        raise ValueError(f"negative part in {parts}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"{parts} is not weakly decreasing")
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    return parts


def _param(vars: VarTable, v: Sequence, k: int):
    """k-th factorial parameter (1-based); zero past the explicit prefix."""
    if k > len(v):
        return 0
    x = v[k - 1]
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, str):
        return LaurentPoly.var(vars, x)
    return LaurentPoly.const(vars, x)


def factorial_power(z: LaurentPoly, v: Sequence, j: int) -> LaurentPoly:
    """``[z|v]^j = prod_{k=1}^{j} (z + v_k - z v_k)``."""
    if j < 0:
        raise ValueError("j must be >= 0")
    out = LaurentPoly.one(z.vars)
    for k in range(1, j + 1):
        vk = _param(z.vars, v, k)
        out = out * (z + vk - z * vk) if isinstance(vk, LaurentPoly) else out * z
    return out


def determinant(mat: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Laplace expansion along rows, memoized on the set of used columns."""
    n = len(mat)
    if n == 0:
        raise ValueError("empty matrix")
    vars = mat[0][0].vars

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset) -> LaurentPoly:
        if row == n:
            return LaurentPoly.one(vars)
        total = LaurentPoly.zero(vars)
        free = sorted(cols)
        for pos, c in enumerate(free):
            entry = mat[row][c]
            if not entry:
                continue
            term = entry * minor(row + 1, cols - {c})
            total = total + term if pos % 2 == 0 else total - term
        return total

    return minor(0, frozenset(range(n)))


def groth_det(lam: Sequence[int], z: Sequence[LaurentPoly], v: Sequence = ()) -> LaurentPoly:
    """``G_lam(z_1..z_n | v) = det([z_i|v]^{lam_j+n-j} (1-z_i)^{j-1}) / prod_{i<j}(z_i - z_j)``."""
    lam = as_partition(lam)
    n = len(z)
    if len(lam) > n:
        raise ValueError(f"partition {lam} has more than {n} parts")
    if n == 0:
        raise ValueError("need at least one variable")
    lam = lam + (0,) * (n - len(lam))
    mat = [
        [factorial_power(z[i], v, lam[j] + n - 1 - j) * (1 - z[i]) ** j for j in range(n)]
        for i in range(n)
    ]
    vander = LaurentPoly.one(z[0].vars)
    for i in range(n):
        for j in range(i + 1, n):
            vander = vander * (z[i] - z[j])
    return poly_exact_div(determinant(mat), vander)


def groth_symbolic(lam: Sequence[int], nz: int, v: Sequence = ()) -> LaurentPoly:
    """``G_lam(z_1..z_nz | v)`` with z's as variables; string entries of ``v``
    become variables too (appended after the z's)."""
    vnames = [x for x in v if isinstance(x, str)]
    vars = VarTable([f"z{i}" for i in range(1, nz + 1)] + vnames)
    z = [LaurentPoly.var(vars, f"z{i}") for i in range(1, nz + 1)]
    return groth_det(lam, z, v)


def root_substitution(poly: LaurentPoly, target: VarTable, z_to_u: dict, v_to_w: dict) -> LaurentPoly:
    """``z_i -> 1 - u^{-1}`` and ``v_k -> 1 - w`` (``w`` a name or 1)."""
    images = {}
    for z, u in z_to_u.items():
        images[z] = 1 - LaurentPoly.var(target, u) ** -1
    for v, w in v_to_w.items():
        images[v] = 1 - (LaurentPoly.var(target, w) if isinstance(w, str) else LaurentPoly.const(target, w))
    return poly_substitute(poly, images, target)


def groth_in_roots(lam: Sequence[int], u_names: Sequence[str], vars: VarTable, h0: int = 0) -> LaurentPoly:
    """``G_lam(1 - u^{-1} ... | 1 - w_1, ..., 1 - w_{h0}, 0, ...)`` in ``vars``."""
    z = [1 - LaurentPoly.var(vars, u) ** -1 for u in u_names]
    v = [1 - LaurentPoly.var(vars, f"w{k}") for k in range(1, h0 + 1)]
    return groth_det(lam, z, v)


def partition_to_word(lam: Sequence[int], rows: int, p: int, offset: int = 0) -> tuple:
    """0/1 word of length ``p`` with 1s at positions ``lam_{r-s+1} + s``."""
    lam = as_partition(lam)
    if len(lam) > rows:
        raise ValueError(f"{lam} has more than {rows} parts")
    lam = lam + (0,) * (rows - len(lam))
    if rows and (lam[-1] < offset or lam[0] + rows > p):
        raise ValueError(f"{lam} does not fit rows={rows}, p={p}, offset={offset}")
    if rows == 0 and p < 0:
        raise ValueError("negative width")
    word = [0] * p
    for s in range(1, rows + 1):
        word[lam[rows - s] + s - 1] = 1
    return tuple(word)


def word_to_partition(word: Sequence[int]) -> tuple:
    ones = [k for k, c in enumerate(word, start=1) if c == 1]
    if any(c not in (0, 1) for c in word):
        raise ValueError("word must be over {0, 1}")
    r = len(ones)
    return as_partition(ones[r - s] - (r - s + 1) for s in range(1, r + 1))


def partitions_in_box(rows: int, max_part: int, min_part: int = 0):
    """All partitions with ``rows`` parts (zeros allowed) in ``[min_part, max_part]``."""

    def rec(k, cap):
        if k == 0:
            yield ()
            return
        for x in range(cap, min_part - 1, -1):
            for rest in rec(k - 1, x):
                yield (x,) + rest

    yield from rec(rows, max_part)


def _lattice_amplitude(word, d_rows: int, n: int, p: int, h0: int, vars: VarTable) -> LaurentPoly:
    params = tuple(f"w{k}" for k in range(1, h0 + 1)) + (1,) * (p - h0)
    ops = [d_op(1, f"u{j}", params) for j in range(1, d_rows + 1)]
    ops += [b_op(1, 0, f"u{j + d_rows}", params) for j in range(1, n + 1)]
    state = StateVector.basis(1, vars, (0,) * p)
    return apply_product(ops, state, targets=[word]).amplitude(word)


def verify_lattice_correspondence(lam: Sequence[int], n: int, p: int, h0: int = 0, d_rows: int = 0) -> Outcome:
    """Lattice vs. determinant for m = 1 with ``d_rows`` D_1 rows on top of
    ``n`` B_0 rows, columns ``(w_1..w_{h0}, 1^{p-h0})``, bottom ``0^p``.

    ``d_rows = 0`` is the pure B_0 correspondence, ``d_rows > 0`` the version
    with the partition ``((p-n)^{d_rows}, lam)``.
    """
    lam = as_partition(lam)
    if not 0 <= h0 <= p:
        raise ValueError(f"h0={h0} not in 0..{p}")
    if d_rows and p < n:
        raise ValueError("D_1 rows need p >= n")
    total = n + d_rows
    if total == 0:
        raise ValueError("need at least one row")
    vars = ring(total, h0)
    word = partition_to_word(lam, n, p, 0)
    lattice = _lattice_amplitude(word, d_rows, n, p, h0, vars)
    big = (p - n,) * d_rows + lam
    det = groth_in_roots(big, [f"u{j}" for j in range(1, total + 1)], vars, h0)
    out = Outcome("eq-6-19" if d_rows else "eq-6-16")
    out.record({"lambda": list(lam), "n": n, "p": p, "h0": h0, "d_rows": d_rows}, lattice, det)
    out.lhs, out.rhs = lattice, det
    return out


def verify_eq_611(n: int, q1: int, p: int, h0: int, lam: Sequence[int]) -> Outcome:
    """Grassmann-bundle pushforward of a product of two Grothendieck
    polynomials, checked directly and through the lattice route.

    Three identities are recorded: ``F_IJ`` equals the product that gets
    pushed forward, ``G_IJ`` equals the target polynomial, and the coset sum
    of the product equals the target.
    """
    if not 0 < q1 < n:
        raise ValueError(f"need 0 < q1 < n, got q1={q1}, n={n}")
    r = n - q1
    lam = as_partition(lam)
    word = partition_to_word(lam, r, p, h0)
    vars = ring(n, h0)
    us = [f"u{j}" for j in range(1, n + 1)]
    lower = groth_in_roots(lam, us[q1:], vars, h0)
    rect = groth_in_roots((p,) * q1, us[:q1], vars, h0)
    f = lower * rect
    target = groth_in_roots((p - n + q1,) * q1 + lam, us, vars, h0)
    pushed = symmetrize(f, n, (q1,))

    shape = FlagShape(1, n, p, (q1,))
    inhoms = tuple(f"w{k}" for k in range(1, h0 + 1)) + (1,) * (p - h0)
    J = (0,) * p
    F = compute_F(shape, word, J, inhoms)
    G = compute_G(shape, word, J, inhoms)

    inp = {"n": n, "q1": q1, "p": p, "h0": h0, "lambda": list(lam)}
    out = Outcome("eq-6-11")
    out.record(dict(inp, step="F equals product"), F, f)
    out.record(dict(inp, step="G equals target"), G, target)
    out.record(dict(inp, step="pushforward"), pushed, target)
    out.lhs, out.rhs = pushed, target
    return out
