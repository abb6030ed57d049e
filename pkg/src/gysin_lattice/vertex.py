"""
The q=0 colored R-matrix and the row / column operators built from it.

Colors are integers ``0..m``.  A vertex has an auxiliary (horizontal) line and
a quantum (vertical) line; ``r_entry(m, a_in, s_in, a_out, s_out, u, w)`` is the
weight with the auxiliary line entering with ``a_in`` and the quantum line
entering with ``s_in``.  Row operators are never stored as matrices: they act
on ``StateVector`` (a sparse map word -> amplitude) word by word.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .algebra import LaurentPoly, VarTable

Param = Union[str, int]

ONE, RATIO, ONE_MINUS_RATIO = "1", "w/u", "1-w/u"


def _check_colors(m: int, *colors: int) -> None:
    if m < 1:
        raise ValueError(f"rank must be >= 1, got {m}")
    for c in colors:
        if not 0 <= c <= m:
            raise ValueError(f"color {c} out of range 0..{m}")


def weight_kind(a_in: int, s_in: int, a_out: int, s_out: int) -> str | None:
    """Symbolic weight of one vertex, or None if it vanishes."""
    if a_in == s_in:
        return ONE if a_out == a_in and s_out == s_in else None
    if a_in < s_in:
        return RATIO if (a_out, s_out) == (s_in, a_in) else None
    if (a_out, s_out) == (s_in, a_in):
        return ONE
    if (a_out, s_out) == (a_in, s_in):
        return ONE_MINUS_RATIO
    return None


@lru_cache(maxsize=None)
def transitions(m: int, a_in: int, s_in: int) -> tuple:
    """All ``(a_out, s_out, kind)`` with a nonzero weight."""
    _check_colors(m, a_in, s_in)
    out = []
    for a_out in range(m + 1):
        for s_out in range(m + 1):
            kind = weight_kind(a_in, s_in, a_out, s_out)
            if kind is not None:
                out.append((a_out, s_out, kind))
    return tuple(out)


def _as_poly(vars: VarTable, x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, str):
        return LaurentPoly.var(vars, x)
    return LaurentPoly.const(vars, x)


def kind_value(kind: str, u: LaurentPoly, w: LaurentPoly) -> LaurentPoly:
    if kind == ONE:
        return LaurentPoly.one(u.vars)
    ratio = w * u ** -1
    return ratio if kind == RATIO else 1 - ratio


def r_entry(m: int, a_in: int, s_in: int, a_out: int, s_out: int, u: LaurentPoly, w) -> LaurentPoly:
    """Matrix element of R(u, w) between ``|a_in, s_in>`` and ``<a_out, s_out|``.

    ``u`` must be an invertible (monomial) polynomial; ``w`` is a polynomial or
    a scalar such as 1.
    """
    _check_colors(m, a_in, s_in, a_out, s_out)
    w = _as_poly(u.vars, w)
    kind = weight_kind(a_in, s_in, a_out, s_out)
    if kind is None:
        return LaurentPoly.zero(u.vars)
    return kind_value(kind, u, w)


def rq_entry(m: int, a_in: int, s_in: int, a_out: int, s_out: int, u: LaurentPoly, w, q: LaurentPoly) -> LaurentPoly:
    """Matrix element of the U_q(sl_{m+1}) R-matrix before the q -> 0 limit."""
    _check_colors(m, a_in, s_in, a_out, s_out)
    w = _as_poly(u.vars, w)
    zero = LaurentPoly.zero(u.vars)
    if a_in == s_in:
        return u - q * w if (a_out, s_out) == (a_in, s_in) else zero
    swapped = (a_out, s_out) == (s_in, a_in)
    kept = (a_out, s_out) == (a_in, s_in)
    if a_in < s_in:
        if kept:
            return q * (u - w)
        return (1 - q) * w if swapped else zero
    if swapped:
        return (1 - q) * u
    return u - w if kept else zero


# --- sparse states and row operators ---------------------------------------


class StateVector:
    """Sparse vector in the tensor product of ``width`` copies of C^{m+1}."""

    __slots__ = ("rank", "width", "vars", "amps")

    def __init__(self, rank: int, width: int, vars: VarTable, amps: Mapping[tuple, LaurentPoly] | None = None):
        self.rank = rank
        self.width = width
        self.vars = vars
        clean = {}
        for word, amp in (amps or {}).items():
            word = tuple(word)
            if len(word) != width:
                raise ValueError(f"word {word} has length != {width}")
            _check_colors(rank, *word)
            if amp.vars != vars:
                raise ValueError("amplitude ring mismatch")
            if amp:
                clean[word] = amp
        self.amps = clean

    @classmethod
    def basis(cls, rank: int, vars: VarTable, word: Sequence[int]) -> "StateVector":
        word = tuple(word)
        return cls(rank, len(word), vars, {word: LaurentPoly.one(vars)})

    def amplitude(self, word: Sequence[int]) -> LaurentPoly:
        return self.amps.get(tuple(word), LaurentPoly.zero(self.vars))

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return (self.rank, self.width, self.vars) == (other.rank, other.width, other.vars) and self.amps == other.amps

    def __add__(self, other: "StateVector") -> "StateVector":
        amps = dict(self.amps)
        for w, a in other.amps.items():
            amps[w] = amps[w] + a if w in amps else a
        return StateVector(self.rank, self.width, self.vars, amps)

    def to_json_obj(self) -> dict:
        return {
            "rank": self.rank,
            "width": self.width,
            "amplitudes": {
                ",".join(map(str, w)): self.amps[w].to_json_obj() for w in sorted(self.amps)
            },
        }

    def __repr__(self) -> str:
        body = ", ".join(f"{w}: {self.amps[w]}" for w in sorted(self.amps))
        return f"StateVector({{{body}}})"


@dataclass(frozen=True)
class RowOpSpec:
    """``<aux_out| T_a(u | inhoms) |aux_in>`` for one row of the lattice.

    ``spectral`` names the row variable; ``inhoms`` lists one column parameter
    per site, either a variable name or the constant 1.
    """

    aux_in: int
    aux_out: int
    spectral: str
    inhoms: tuple

    def __post_init__(self):
        object.__setattr__(self, "inhoms", tuple(self.inhoms))


def b_op(m: int, k: int, u: str, inhoms: Iterable[Param]) -> RowOpSpec:
    if not 0 <= k < m:
        raise ValueError(f"B_k needs 0 <= k < m, got k={k}, m={m}")
    return RowOpSpec(m, k, u, tuple(inhoms))


def d_op(m: int, u: str, inhoms: Iterable[Param]) -> RowOpSpec:
    return RowOpSpec(m, m, u, tuple(inhoms))


@lru_cache(maxsize=4096)
def _site_weights(vars: VarTable, u: str, w: Param) -> dict:
    up = LaurentPoly.var(vars, u)
    wp = _as_poly(vars, w)
    return {k: kind_value(k, up, wp) for k in (RATIO, ONE_MINUS_RATIO)}


@lru_cache(maxsize=None)
def _preimages(m: int, a_out: int, s_out: int) -> tuple:
    """All ``(a_in, s_in)`` with a nonzero weight into ``(a_out, s_out)``."""
    return tuple(
        (a, s)
        for a in range(m + 1)
        for s in range(m + 1)
        if weight_kind(a, s, a_out, s_out) is not None
    )


def row_support_preimage(spec: RowOpSpec, m: int, words) -> list:
    """Supports only: for each site (0..p), the set of ``(aux, word)`` pairs
    that can still be completed to one of ``words`` by the rest of the row.

    Entry ``k`` holds the states just before site ``k`` is processed; entry
    ``p`` is ``{(aux_out, w)}``.  Entry 0 restricted to ``aux_in`` gives the
    input words of the row that can reach ``words``.
    """
    p = len(spec.inhoms)
    layers = [None] * (p + 1)
    cur = {(spec.aux_out, tuple(w)) for w in words}
    layers[p] = cur
    for i in range(p - 1, -1, -1):
        prev = set()
        for aux, word in cur:
            s = word[i]
            for a_in, s_in in _preimages(m, aux, s):
                prev.add((a_in, word if s_in == s else word[:i] + (s_in,) + word[i + 1:]))
        layers[i] = cur = prev
    return layers


def apply_row(spec: RowOpSpec, state: StateVector, allowed: list | None = None) -> StateVector:
    """Apply one row operator.  The auxiliary line enters at site 1 with color
    ``aux_in`` and must leave site ``width`` with color ``aux_out``.

    ``allowed`` (from ``row_support_preimage``) drops partial states that
    cannot reach the wanted output words; amplitudes that survive are exact.
    """
    m, p = state.rank, state.width
    _check_colors(m, spec.aux_in, spec.aux_out)
    if len(spec.inhoms) != p:
        raise ValueError(f"row has {len(spec.inhoms)} columns, state has width {p}")
    vars = state.vars
    layer = {(spec.aux_in, w): a for w, a in state.amps.items()}
    if allowed is not None:
        layer = {k: a for k, a in layer.items() if k in allowed[0]}
    for i in range(p):
        weights = _site_weights(vars, spec.spectral, spec.inhoms[i])
        last = i == p - 1
        keep = allowed[i + 1] if allowed is not None else None
        nxt: dict = {}
        for (aux, word), amp in layer.items():
            s = word[i]
            for a2, s2, kind in transitions(m, aux, s):
                if last and a2 != spec.aux_out:
                    continue
                w2 = word if s2 == s else word[:i] + (s2,) + word[i + 1:]
                key = (a2, w2)
                if keep is not None and key not in keep:
                    continue
                val = amp if kind == ONE else amp * weights[kind]
                prev = nxt.get(key)
                nxt[key] = val if prev is None else prev + val
        layer = nxt
    out = {w: a for (aux, w), a in layer.items() if aux == spec.aux_out and a}
    return StateVector(m, p, vars, out)


def apply_product(specs: Sequence[RowOpSpec], state: StateVector, targets=None) -> StateVector:
    """Apply ``specs[0] specs[1] ... specs[-1]`` to ``state`` (rightmost first).

    With ``targets`` (an iterable of words) only the amplitudes of those words
    are guaranteed in the result; everything that cannot reach them is pruned.
    """
    if targets is None:
        for spec in reversed(specs):
            state = apply_row(spec, state)
        return state
    plans = [None] * len(specs)
    words = {tuple(w) for w in targets}
    for r, spec in enumerate(specs):
        layers = row_support_preimage(spec, state.rank, words)
        plans[r] = layers
        words = {w for aux, w in layers[0] if aux == spec.aux_in}
    for r in range(len(specs) - 1, -1, -1):
        state = apply_row(specs[r], state, plans[r])
    return state


def apply_row_extended(m: int, q: Sequence[int], u: str, inhoms: Sequence[Param] | None, state: StateVector) -> StateVector:
    """The widened operator ``B_0^{(p, q_1..q_m)}(u)``: ``B_0`` on ``p + q_m``
    sites where the added columns always carry parameter 1."""
    q = tuple(q)
    qm = q[-1] if q else 0
    p = state.width - qm
    if p < 0:
        raise ValueError("state narrower than the added columns")
    if inhoms is None:
        inhoms = (1,) * p
    if len(inhoms) != p:
        raise ValueError(f"expected {p} column parameters, got {len(inhoms)}")
    return apply_row(RowOpSpec(m, 0, u, tuple(inhoms) + (1,) * qm), state)


# --- dense operators on a few sites ----------------------------------------


def basis_words(m: int, width: int) -> list[tuple]:
    return list(itertools.product(range(m + 1), repeat=width))


def vertical_T_entry(i: int, j: int, w: str, u_vars: Sequence[str], m: int, vars: VarTable) -> np.ndarray:
    """Dense matrix of the column operator ``<i|_q T(w | u_1..u_n) |j>_q``.

    ``T = R_{a_1 q}(u_n, w) ... R_{a_n q}(u_1, w)``: the column line enters
    with color ``j``, crosses horizontal line ``a_n`` (parameter ``u_1``) first
    and leaves after ``a_1`` with color ``i``.  Rows and columns are indexed by
    ``basis_words(m, n)`` for the horizontal colors ``(a_1, ..., a_n)``.
    """
    _check_colors(m, i, j)
    n = len(u_vars)
    words = basis_words(m, n)
    index = {wd: k for k, wd in enumerate(words)}
    zero = LaurentPoly.zero(vars)
    mat = np.empty((len(words), len(words)), dtype=object)
    mat.fill(zero)
    wp = _as_poly(vars, w)
    for col, word in enumerate(words):
        paths = {(j, word): LaurentPoly.one(vars)}
        for step in range(n):
            slot = n - 1 - step
            up = LaurentPoly.var(vars, u_vars[step])
            nxt: dict = {}
            for (qc, hw), amp in paths.items():
                for a2, s2, kind in transitions(m, hw[slot], qc):
                    val = amp if kind == ONE else amp * kind_value(kind, up, wp)
                    key = (s2, hw[:slot] + (a2,) + hw[slot + 1:])
                    nxt[key] = nxt[key] + val if key in nxt else val
            paths = nxt
        for (qc, hw), amp in paths.items():
            if qc == i and amp:
                mat[index[hw], col] = mat[index[hw], col] + amp
    return mat


def r_matrix_on_sites(m: int, width: int, i: int, j: int, u: LaurentPoly, w, entry=r_entry) -> np.ndarray:
    """Dense matrix of ``R_{ij}(u, w)`` on ``width`` sites (0-based i, j)."""
    words = basis_words(m, width)
    index = {wd: k for k, wd in enumerate(words)}
    zero = LaurentPoly.zero(u.vars)
    mat = np.empty((len(words), len(words)), dtype=object)
    mat.fill(zero)
    for col, word in enumerate(words):
        for a2 in range(m + 1):
            for s2 in range(m + 1):
                val = entry(m, word[i], word[j], a2, s2, u, w)
                if val:
                    out = list(word)
                    out[i], out[j] = a2, s2
                    mat[index[tuple(out)], col] = val
    return mat
