"""
Local identities of the vertex model: Yang-Baxter, the q -> 0 limit of the
deformed R-matrix, the commutation relations between the row operators, and
commutativity of the diagonal column operators.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .algebra import LaurentPoly, RatFun, poly_specialize, ring
from .report import Outcome
from .vertex import (
    StateVector,
    apply_product,
    b_op,
    basis_words,
    d_op,
    r_entry,
    r_matrix_on_sites,
    rq_entry,
    vertical_T_entry,
)


def check_yang_baxter(m: int, *, deformed: bool = False) -> Outcome:
    """``R12(u,v) R13(u,w) R23(v,w) == R23(v,w) R13(u,w) R12(u,v)`` entry by
    entry on three sites; ``(m+1)^6`` instances."""
    vars = ring(extra=["u", "v", "w"], q=deformed)
    u, v, w = (LaurentPoly.var(vars, x) for x in "uvw")
    entry = r_entry
    if deformed:
        q = LaurentPoly.var(vars, "q")

        def entry(*args):
            return rq_entry(*args, q)

    R12 = r_matrix_on_sites(m, 3, 0, 1, u, v, entry)
    R13 = r_matrix_on_sites(m, 3, 0, 2, u, w, entry)
    R23 = r_matrix_on_sites(m, 3, 1, 2, v, w, entry)
    lhs = R12 @ R13 @ R23
    rhs = R23 @ R13 @ R12
    words = basis_words(m, 3)
    out = Outcome("yang-baxter")
    for r, c in itertools.product(range(len(words)), repeat=2):
        out.record({"m": m, "deformed": deformed, "out": list(words[r]), "in": list(words[c])}, lhs[r, c], rhs[r, c])
    return out


def check_q_limit(m: int) -> Outcome:
    """``u^{-1} rq_entry |_{q=0} == r_entry`` for every color tuple."""
    vars = ring(extra=["u", "w"], q=True)
    u, w, q = (LaurentPoly.var(vars, x) for x in ("u", "w", "q"))
    out = Outcome("q-limit")
    for t in itertools.product(range(m + 1), repeat=4):
        lhs = u ** -1 * poly_specialize(rq_entry(m, *t, u, w, q), {"q": 0})
        out.record({"m": m, "colors": list(t)}, lhs, r_entry(m, *t, u, w))
    return out


def _relations(m: int, params: tuple):
    """Yield ``(label, lhs_terms, rhs_terms)``; each side is a list of
    ``(coefficient, operator list)`` with operators in product order."""
    vars = ring(2, sorted({x for x in params if isinstance(x, str)}))
    u1, u2 = LaurentPoly.var(vars, "u1"), LaurentPoly.var(vars, "u2")
    one = RatFun(LaurentPoly.one(vars))
    c1 = one / RatFun(1 - u2 * u1 ** -1)
    c2 = one / RatFun(1 - u1 * u2 ** -1)

    def D(u):
        return d_op(m, u, params)

    def B(k, u):
        return b_op(m, k, u, params)

    for j in range(m):
        yield ("DB-four-term", {"j": j}), [(one, [D("u1"), B(j, "u2")])], [
            (c1, [B(j, "u2"), D("u1")]),
            (c2, [B(j, "u1"), D("u2")]),
        ]
    for k, j in itertools.combinations(range(m), 2):
        yield ("BB-four-term", {"j": j, "k": k}), [(one, [B(j, "u1"), B(k, "u2")])], [
            (c1, [B(k, "u2"), B(j, "u1")]),
            (c2, [B(k, "u1"), B(j, "u2")]),
        ]
    for j in range(m):
        yield ("DB-exchange", {"j": j}), [(one, [D("u1"), B(j, "u2")])], [(one, [D("u2"), B(j, "u1")])]
    for k in range(m):
        for j in range(k, m):
            yield ("BB-exchange", {"j": j, "k": k}), [(one, [B(j, "u1"), B(k, "u2")])], [(one, [B(j, "u2"), B(k, "u1")])]
    yield ("DD-commute", {}), [(one, [D("u1"), D("u2")])], [(one, [D("u2"), D("u1")])]


def _side(terms, state: StateVector) -> dict:
    acc: dict = {}
    for coef, ops in terms:
        for word, amp in apply_product(ops, state).amps.items():
            val = coef * RatFun(amp)
            acc[word] = acc[word] + val if word in acc else val
    return acc


def check_rtt_relations(m: int, p: int, inhoms: int = 0) -> Outcome:
    """The two-operator commutation relations as operator identities, tested
    on every basis word of width ``p``.  One instance per (relation, word).

    ``inhoms = k`` gives the first ``k`` columns generic parameters.
    """
    params = tuple(f"w{k}" for k in range(1, inhoms + 1)) + (1,) * (p - inhoms)
    vars = ring(2, inhoms)
    zero = RatFun(LaurentPoly.zero(vars))
    out = Outcome("rtt-relations")
    for (label, extra), lhs_terms, rhs_terms in _relations(m, params):
        for J in basis_words(m, p):
            state = StateVector.basis(m, vars, J)
            lhs, rhs = _side(lhs_terms, state), _side(rhs_terms, state)
            bad = [I for I in sorted(set(lhs) | set(rhs)) if lhs.get(I, zero) != rhs.get(I, zero)]
            inp = dict(extra, relation=label, m=m, p=p, J=list(J))
            if bad:
                I = bad[0]
                out.record(dict(inp, I=list(I)), lhs.get(I, zero), rhs.get(I, zero), equal=False)
            else:
                out.record(inp, None, None, equal=True)
    return out


def check_vertical_commute(m: int, n: int) -> Outcome:
    """``[T_ii(w1 | u), T_ii(w2 | u)] = 0`` as matrices for every color i."""
    vars = ring(n, 2)
    us = [f"u{j}" for j in range(1, n + 1)]
    out = Outcome("vertical-commute")
    for i in range(m + 1):
        A = vertical_T_entry(i, i, "w1", us, m, vars)
        B = vertical_T_entry(i, i, "w2", us, m, vars)
        AB, BA = A @ B, B @ A
        bad = [(r, c) for r, c in zip(*AB.nonzero()) if AB[r, c] != BA[r, c]]
        bad += [(r, c) for r, c in zip(*BA.nonzero()) if AB[r, c] != BA[r, c]]
        inp = {"m": m, "n": n, "i": i}
        if bad:
            r, c = min(bad)
            out.record(dict(inp, entry=[int(r), int(c)]), AB[r, c], BA[r, c], equal=False)
        else:
            out.record(inp, None, None, equal=True)
    return out


__all__: Sequence[str] = [
    "check_yang_baxter",
    "check_q_limit",
    "check_rtt_relations",
    "check_vertical_commute",
]
