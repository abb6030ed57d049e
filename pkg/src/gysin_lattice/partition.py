"""
Partition functions F, G, H on rectangular grids, plus two independent ways
of evaluating the same grid: an exhaustive edge-labelling oracle and a
column-by-column transfer through the vertical monodromy matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .algebra import LaurentPoly, VarTable, ring
from .vertex import (
    RowOpSpec,
    StateVector,
    apply_product,
    b_op,
    d_op,
    r_entry,
    vertical_T_entry,
    basis_words,
)

Inhoms = Union[None, int, Sequence[Union[str, int]]]
FAMILIES = ("F", "G", "H")


@dataclass(frozen=True)
class FlagShape:
    """Rank ``m``, ``n`` rows, width ``p`` and flag dimensions
    ``0 < q_1 < ... < q_m < n``."""

    m: int
    n: int
    p: int
    q: tuple

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(int(x) for x in self.q))
        if self.m < 1 or self.n < 1 or self.p < 1:
            raise ValueError(f"need m, n, p >= 1: {self}")
        if len(self.q) != self.m:
            raise ValueError(f"q must have exactly m={self.m} entries, got {self.q}")
        full = (0,) + self.q + (self.n,)
        if any(a >= b for a, b in zip(full, full[1:])):
            raise ValueError(f"need 0 < q_1 < ... < q_m < n, got q={self.q}, n={self.n}")

    @property
    def bounds(self) -> tuple:
        """``(q_0, q_1, ..., q_m, q_{m+1}) = (0, ..., n)``."""
        return (0,) + self.q + (self.n,)

    def block(self, k: int) -> range:
        """1-based row indices ``q_k + 1 .. q_{k+1}`` of block ``k``."""
        b = self.bounds
        return range(b[k] + 1, b[k + 1] + 1)

    def block_sizes(self) -> tuple:
        b = self.bounds
        return tuple(b[k + 1] - b[k] for k in range(self.m + 1))

    def block_out_color(self, k: int) -> int:
        """Block 0 is made of ``D_m``, block ``k > 0`` of ``B_{m-k}``."""
        return self.m - k

    def extended_top(self) -> tuple:
        """Colors ``m^{q_1}, (m-1)^{q_2-q_1}, ..., 1^{q_m-q_{m-1}}`` appended to I for H."""
        out = []
        for k in range(self.m):
            out += [self.m - k] * (self.bounds[k + 1] - self.bounds[k])
        return tuple(out)


def all_shapes(m: int, n: int, p: int):
    """Every valid FlagShape with the given m, n, p."""
    from itertools import combinations

    for q in combinations(range(1, n), m):
        yield FlagShape(m, n, p, q)


def column_params(p: int, inhoms: Inhoms) -> tuple:
    """Normalize inhomogeneities: None -> all 1; k -> (w1..wk, 1^{p-k})."""
    if inhoms is None:
        return (1,) * p
    if isinstance(inhoms, int):
        if not 0 <= inhoms <= p:
            raise ValueError(f"inhom count {inhoms} not in 0..{p}")
        return tuple(f"w{k}" for k in range(1, inhoms + 1)) + (1,) * (p - inhoms)
    params = tuple(inhoms)
    if len(params) != p:
        raise ValueError(f"{len(params)} column parameters for width {p}")
    for x in params:
        if not (isinstance(x, str) or x == 1):
            raise ValueError(f"column parameter must be a variable name or 1, got {x!r}")
    return params


def shape_ring(shape: FlagShape, inhoms: Inhoms = None) -> VarTable:
    params = column_params(shape.p, inhoms)
    wnames = sorted({x for x in params if isinstance(x, str)}, key=_name_key)
    return ring(shape.n, wnames)


def _name_key(name: str):
    digits = name.lstrip("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
    return (name[: len(name) - len(digits)], int(digits) if digits else -1)


def _block_ops(shape: FlagShape, k: int, params: tuple) -> list:
    m = shape.m
    if k == 0:
        return [d_op(m, f"u{j}", params) for j in shape.block(0)]
    return [b_op(m, m - k, f"u{j}", params) for j in shape.block(k)]


def row_specs(shape: FlagShape, family: str, inhoms: Inhoms = None) -> list:
    """Operators of the family in product order (leftmost = top row)."""
    params = column_params(shape.p, inhoms)
    if family == "F":
        order = range(shape.m, -1, -1)
    elif family == "G":
        order = range(0, shape.m + 1)
    elif family == "H":
        wide = params + (1,) * shape.q[-1]
        return [RowOpSpec(shape.m, 0, f"u{j}", wide) for j in range(1, shape.n + 1)]
    else:
        raise ValueError(f"unknown family {family!r}")
    ops = []
    for k in order:
        ops += _block_ops(shape, k, params)
    return ops


def boundary_words(shape: FlagShape, family: str, I, J) -> tuple[tuple, tuple]:
    I, J = tuple(I), tuple(J)
    if len(I) != shape.p or len(J) != shape.p:
        raise ValueError(f"boundary words must have length p={shape.p}")
    for c in I + J:
        if not 0 <= c <= shape.m:
            raise ValueError(f"color {c} out of range 0..{shape.m}")
    if family == "H":
        return I + shape.extended_top(), J + (0,) * shape.q[-1]
    return I, J


def partition_function(shape: FlagShape, family: str, I, J, inhoms: Inhoms = None) -> LaurentPoly:
    top, bottom = boundary_words(shape, family, I, J)
    vars = shape_ring(shape, inhoms)
    state = StateVector.basis(shape.m, vars, bottom)
    return apply_product(row_specs(shape, family, inhoms), state, targets=[top]).amplitude(top)


def compute_F(shape: FlagShape, I, J, inhoms: Inhoms = None) -> LaurentPoly:
    return partition_function(shape, "F", I, J, inhoms)


def compute_G(shape: FlagShape, I, J, inhoms: Inhoms = None) -> LaurentPoly:
    return partition_function(shape, "G", I, J, inhoms)


def compute_H(shape: FlagShape, I, J, inhoms: Inhoms = None) -> LaurentPoly:
    return partition_function(shape, "H", I, J, inhoms)


def all_amplitudes(shape: FlagShape, family: str, J, inhoms: Inhoms = None) -> dict:
    """``{I: value}`` for every top word ``I`` with a nonzero value, for one
    bottom word ``J``."""
    _, bottom = boundary_words(shape, family, (0,) * shape.p, J)
    vars = shape_ring(shape, inhoms)
    state = StateVector.basis(shape.m, vars, bottom)
    specs = row_specs(shape, family, inhoms)
    if family != "H":
        return dict(apply_product(specs, state).amps)
    ext = shape.extended_top()
    tops = [I + ext for I in basis_words(shape.m, shape.p)]
    out = apply_product(specs, state, targets=tops)
    return {w[: shape.p]: a for w, a in out.amps.items() if w[shape.p:] == ext}


def content_compatible(shape: FlagShape, I, J) -> bool:
    """Color conservation for F and G: counts in I equal counts in J plus one
    ``m`` per row minus each row's exit color."""
    counts = [0] * (shape.m + 1)
    for c in J:
        counts[c] += 1
    counts[shape.m] += shape.n
    for k, size in enumerate(shape.block_sizes()):
        counts[shape.block_out_color(k)] -= size
    for c in I:
        counts[c] -= 1
    return not any(counts)


# --- grid description and the exhaustive oracle ----------------------------


@dataclass(frozen=True)
class GridSpec:
    """A full lattice: rows listed top to bottom, boundary words, ring."""

    m: int
    top: tuple
    bottom: tuple
    rows: tuple
    vars: VarTable

    @property
    def width(self) -> int:
        return len(self.top)


def grid_json(shape: FlagShape, family: str, I, J, inhom_w: int = 0) -> dict:
    """Plain description of a grid; ``grid_for`` rebuilds the operators."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    boundary_words(shape, family, I, J)
    return {"m": shape.m, "n": shape.n, "p": shape.p, "q": list(shape.q), "I": list(I), "J": list(J),
            "family": family, "inhom_w": inhom_w}


def grid_from_json(obj: dict) -> tuple:
    """Inverse of ``grid_json``: ``(shape, family, I, J, inhom_w)``."""
    shape = FlagShape(obj["m"], obj["n"], obj["p"], tuple(obj["q"]))
    return shape, obj["family"], tuple(obj["I"]), tuple(obj["J"]), int(obj.get("inhom_w", 0))


def grid_for(shape: FlagShape, family: str, I, J, inhoms: Inhoms = None) -> GridSpec:
    top, bottom = boundary_words(shape, family, I, J)
    rows = tuple(row_specs(shape, family, inhoms))
    return GridSpec(shape.m, top, bottom, rows, shape_ring(shape, inhoms))


def brute_force_grid(grid: GridSpec) -> LaurentPoly:
    """Sum over every coloring of the internal edges of the product of vertex
    weights.  Configurations are enumerated one vertex at a time; only
    zero-weight vertices cut the search, nothing is merged."""
    m, vars = grid.m, grid.vars
    p, nrows = grid.width, len(grid.rows)
    zero = LaurentPoly.zero(vars)
    if nrows == 0:
        return LaurentPoly.one(vars) if grid.top == grid.bottom else zero
    cache: dict = {}

    def weight(r, c, a_in, s_in, a_out, s_out):
        key = (r, c, a_in, s_in, a_out, s_out)
        if key not in cache:
            spec = grid.rows[r]
            u = LaurentPoly.var(vars, spec.spectral)
            w = spec.inhoms[c]
            w = LaurentPoly.var(vars, w) if isinstance(w, str) else w
            cache[key] = r_entry(m, a_in, s_in, a_out, s_out, u, w)
        return cache[key]

    total = [zero]

    # rows are processed bottom (index nrows-1) to top (index 0)
    def visit(r, c, aux, below, above, acc):
        if c == p:
            if aux != grid.rows[r].aux_out:
                return
            if r == 0:
                if tuple(above) == grid.top:
                    total[0] = total[0] + acc
                return
            visit(r - 1, 0, grid.rows[r - 1].aux_in, tuple(above), [], acc)
            return
        s_in = below[c]
        for a_out in range(m + 1):
            for s_out in range(m + 1):
                wgt = weight(r, c, aux, s_in, a_out, s_out)
                if not wgt:
                    continue
                visit(r, c + 1, a_out, below, above + [s_out], acc * wgt)

    visit(nrows - 1, 0, grid.rows[-1].aux_in, grid.bottom, [], LaurentPoly.one(vars))
    return total[0]


def column_transfer(grid: GridSpec) -> LaurentPoly:
    """Evaluate a grid column by column with ``vertical_T_entry`` matrices.

    The horizontal lines, top to bottom, form the space the column operators
    act on; column ``k`` is ``T_{top_k, bottom_k}(w_k | u_bottom, ..., u_top)``.
    Every row must use the same column parameters.
    """
    m, vars = grid.m, grid.vars
    params = grid.rows[0].inhoms
    if any(r.inhoms != params for r in grid.rows):
        raise ValueError("column transfer needs identical column parameters in every row")
    u_bottom_up = [r.spectral for r in reversed(grid.rows)]
    words = basis_words(m, len(grid.rows))
    index = {w: i for i, w in enumerate(words)}
    vec = {index[tuple(r.aux_in for r in grid.rows)]: LaurentPoly.one(vars)}
    mats: dict = {}
    for k in range(grid.width):
        key = (grid.top[k], grid.bottom[k], params[k])
        if key not in mats:
            mats[key] = vertical_T_entry(key[0], key[1], key[2], u_bottom_up, m, vars)
        mat = mats[key]
        nxt: dict = {}
        for col, amp in vec.items():
            for row in range(len(words)):
                entry = mat[row, col]
                if entry:
                    nxt[row] = nxt[row] + amp * entry if row in nxt else amp * entry
        vec = {i: a for i, a in nxt.items() if a}
    return vec.get(index[tuple(r.aux_out for r in grid.rows)], LaurentPoly.zero(vars))
