"""
Named verification suites.  Each suite expands its bounds into a list of
small tasks, runs them (optionally on a thread pool) and merges the outcomes.
"""

from __future__ import annotations

import itertools
import os
import random
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .algebra import LaurentPoly, permute_positions
from .grothendieck import partitions_in_box, verify_eq_611, verify_lattice_correspondence
from .partition import (
    FlagShape,
    all_shapes,
    compute_F,
    compute_G,
    compute_H,
    content_compatible,
)
from .relations import check_q_limit, check_rtt_relations, check_vertical_commute, check_yang_baxter
from .report import Outcome
from .symmetrizer import (
    check_prefix_pushforward,
    check_multiple_commutation,
    gysin_pushforward_check,
    prefix_word,
    symmetrize,
)
from .vertex import basis_words

THREADS_ENV = "GYSIN_LATTICE_THREADS"


@dataclass(frozen=True)
class SuiteArgs:
    """Bounds for a suite run.  ``None`` means "use the suite's default"."""

    m: int | None = None
    n: int | None = None
    p: int | None = None
    q: tuple | None = None
    instances: int = 20
    seed: int = 0
    exhaustive: bool = False
    inhom: int = 0
    max_work: int = 200_000


# --- helpers ------------------------------------------------------------------


def integral_in_u_inverse(poly: LaurentPoly) -> bool:
    """Only non-positive u-exponents and integer coefficients."""
    upos = [i for i, name in enumerate(poly.vars.names) if name.startswith("u")]
    for exp, c in poly.terms.items():
        if not isinstance(c, int):
            return False
        if any(exp[i] > 0 for i in upos):
            return False
    return True


def compatible_pairs(shape: FlagShape) -> list[tuple]:
    """Every ``(I, J)`` allowed by color conservation, in lexicographic order."""
    out = []
    m, p = shape.m, shape.p
    for J in basis_words(m, p):
        need = Counter(J)
        need[m] += shape.n
        for k, size in enumerate(shape.block_sizes()):
            need[shape.block_out_color(k)] -= size
        if any(v < 0 for v in need.values()) or sum(need.values()) != p:
            continue
        pool = [c for c in range(m + 1) for _ in range(need[c])]
        for I in sorted(set(itertools.permutations(pool))):
            out.append((I, J))
    return out


def pick_pairs(shape: FlagShape, args: SuiteArgs, rng: random.Random) -> list[tuple]:
    """Exhaustive: all compatible pairs.  Otherwise ``args.instances`` draws,
    uniform among compatible pairs; when conservation leaves none the draws
    come from all pairs (every value is then 0 on both sides)."""
    pairs = compatible_pairs(shape)
    if args.exhaustive:
        if len(pairs) > args.max_work:
            raise ResourceWarning(f"{len(pairs)} boundary pairs exceeds bound {args.max_work}")
        return pairs
    if pairs:
        return [rng.choice(pairs) for _ in range(args.instances)]
    words = basis_words(shape.m, shape.p)
    return [(rng.choice(words), rng.choice(words)) for _ in range(args.instances)]


def _shapes(args: SuiteArgs, m=2, n=3, p=2) -> list[FlagShape]:
    m = args.m if args.m is not None else m
    n = args.n if args.n is not None else n
    p = args.p if args.p is not None else p
    if args.q is not None:
        return [FlagShape(m, n, p, args.q)]
    shapes = list(all_shapes(m, n, p))
    if not shapes:
        raise ValueError(f"no flag shape with m={m}, n={n}")
    return shapes


def _range(value, default: Sequence[int]) -> Sequence[int]:
    return (value,) if value is not None else tuple(default)


def _instance(shape: FlagShape, I, J, inhom: int) -> dict:
    return {"m": shape.m, "n": shape.n, "p": shape.p, "q": list(shape.q), "I": list(I), "J": list(J), "inhom": inhom}


def _swap_u(f: LaurentPoly, a: int, b: int) -> LaurentPoly:
    idx = f.vars.index
    dest = list(range(len(f.vars)))
    dest[idx[f"u{a}"]], dest[idx[f"u{b}"]] = idx[f"u{b}"], idx[f"u{a}"]
    return permute_positions(f, dest)


def _swap_w(f: LaurentPoly, a: int, b: int) -> LaurentPoly:
    idx = f.vars.index
    dest = list(range(len(f.vars)))
    dest[idx[f"w{a}"]], dest[idx[f"w{b}"]] = idx[f"w{b}"], idx[f"w{a}"]
    return permute_positions(f, dest)


def _sample(items: list, args: SuiteArgs, rng: random.Random) -> list:
    if args.exhaustive or len(items) <= args.instances:
        if len(items) > args.max_work:
            raise ResourceWarning(f"{len(items)} instances exceeds bound {args.max_work}")
        return items
    return rng.sample(items, args.instances)


# --- per-instance checks ------------------------------------------------------


def check_g_equals_h(shape: FlagShape, I, J, inhom: int = 0) -> Outcome:
    """``G_IJ == H_IJ``; in the homogeneous case both must be integral
    polynomials in the ``u_j^{-1}``."""
    G = compute_G(shape, I, J, inhom)
    H = compute_H(shape, I, J, inhom)
    inp = _instance(shape, I, J, inhom)
    out = Outcome("lemma-3-1")
    out.record(inp, G, H)
    if not inhom:
        for name, val in (("G", G), ("H", H)):
            out.record(dict(inp, integrality=name), val, None, equal=integral_in_u_inverse(val))
    return out


def check_symmetries(shape: FlagShape, I, J, inhom: int = 0) -> Outcome:
    """Block symmetry of F and full symmetry of G and H under adjacent swaps."""
    inp = _instance(shape, I, J, inhom)
    out = Outcome("symmetry-4-1-to-4-4")
    F = compute_F(shape, I, J, inhom)
    for k, size in enumerate(shape.block_sizes()):
        lo = shape.bounds[k]
        for a in range(lo + 1, lo + size):
            out.record(dict(inp, family="F", swap=[a, a + 1]), F, _swap_u(F, a, a + 1))
    for name, fn in (("G", compute_G), ("H", compute_H)):
        val = fn(shape, I, J, inhom)
        for a in range(1, shape.n):
            out.record(dict(inp, family=name, swap=[a, a + 1]), val, _swap_u(val, a, a + 1))
        if not inhom:
            out.record(dict(inp, integrality=name), val, None, equal=integral_in_u_inverse(val))
    if not inhom:
        out.record(dict(inp, integrality="F"), F, None, equal=integral_in_u_inverse(F))
    return out


def check_pushforward(shape: FlagShape, I, J, inhom: int = 0) -> Outcome:
    out = gysin_pushforward_check(shape, I, J, inhom)
    if not inhom:
        F = compute_F(shape, I, J)
        inp = dict(_instance(shape, I, J, inhom), integrality="F")
        out.record(inp, F, None, equal=integral_in_u_inverse(F))
    return out


def check_complete_flag(n: int) -> Outcome:
    """Complete flag ``q = (1..n-1)``, ``I = (n-1)^n``, ``J = (n-1, ..., 0)``:
    ``F = prod (1 - u_j^{-1})^{n-j}``, ``G = H = 1`` and ``symmetrize(F) = 1``."""
    shape = FlagShape(n - 1, n, n, tuple(range(1, n)))
    I, J = (n - 1,) * n, tuple(range(n - 1, -1, -1))
    F = compute_F(shape, I, J)
    vars = F.vars
    closed = LaurentPoly.one(vars)
    for j in range(1, n + 1):
        closed = closed * (1 - LaurentPoly.var(vars, f"u{j}") ** -1) ** (n - j)
    one = LaurentPoly.one(vars)
    out = Outcome("eq-5-8")
    inp = {"n": n}
    out.record(dict(inp, step="F closed form"), F, closed)
    out.record(dict(inp, step="G"), compute_G(shape, I, J), one)
    out.record(dict(inp, step="H"), compute_H(shape, I, J), one)
    out.record(dict(inp, step="symmetrize F"), symmetrize(F, n, shape.q), one)
    return out


def w_runs(I, J) -> list[int]:
    """Positions ``k`` (1-based) with ``I_k = I_{k+1} = J_k = J_{k+1}``."""
    return [k + 1 for k in range(len(I) - 1) if I[k] == I[k + 1] == J[k] == J[k + 1]]


def check_w_symmetry(shape: FlagShape, I, J) -> Outcome:
    """F and G with all columns generic are symmetric in ``w_k, w_{k+1}``
    whenever columns ``k, k+1`` carry one color at top and bottom."""
    out = Outcome("w-symmetry")
    inp = _instance(shape, I, J, shape.p)
    F = compute_F(shape, I, J, shape.p)
    G = compute_G(shape, I, J, shape.p)
    for k in w_runs(I, J):
        out.record(dict(inp, family="F", swap=[k, k + 1]), F, _swap_w(F, k, k + 1))
        out.record(dict(inp, family="G", swap=[k, k + 1]), G, _swap_w(G, k, k + 1))
    return out


# --- suite expansions -----------------------------------------------------------

Task = Callable[[], Outcome]


def _boundary_tasks(args: SuiteArgs, check, defaults: dict) -> Iterator[Task]:
    rng = random.Random(args.seed)
    for shape in _shapes(args, **defaults):
        for I, J in pick_pairs(shape, args, rng):
            yield lambda s=shape, I=I, J=J: check(s, I, J, args.inhom)


def tasks_yang_baxter(args: SuiteArgs):
    for m in _range(args.m, (1, 2, 3)):
        yield lambda m=m: check_yang_baxter(m)


def tasks_q_limit(args: SuiteArgs):
    for m in _range(args.m, (1, 2, 3)):
        yield lambda m=m: check_q_limit(m)


def tasks_rtt(args: SuiteArgs):
    for m in _range(args.m, (1, 2, 3)):
        for p in _range(args.p, (1, 2, 3)):
            if (m + 1) ** p > args.max_work:
                raise ResourceWarning(f"{(m + 1) ** p} basis words exceeds bound {args.max_work}")
            yield lambda m=m, p=p: check_rtt_relations(m, p, min(args.inhom, p))


def tasks_g_equals_h(args: SuiteArgs):
    return _boundary_tasks(args, check_g_equals_h, {"m": 2, "n": 3, "p": 2})


def tasks_symmetry(args: SuiteArgs):
    return _boundary_tasks(args, check_symmetries, {"m": 2, "n": 3, "p": 2})


def tasks_multiple_commutation(args: SuiteArgs):
    for shape in _shapes(args, m=2, n=3, p=2):
        yield lambda s=shape: check_multiple_commutation(s, args.inhom or None, max_work=args.max_work)


def tasks_pushforward(args: SuiteArgs):
    return _boundary_tasks(args, check_pushforward, {"m": 2, "n": 3, "p": 3})


def tasks_eq_5_8(args: SuiteArgs):
    for n in _range(args.n, (3, 4, 5)):
        yield lambda n=n: check_complete_flag(n)


def tasks_vertical(args: SuiteArgs):
    for m in _range(args.m, (1, 2)):
        for n in _range(args.n, (1, 2, 3)):
            if (m + 1) ** n > 200:
                raise ResourceWarning(f"dense column operators of size {(m + 1) ** n} are too large")
            yield lambda m=m, n=n: check_vertical_commute(m, n)


def tasks_w_symmetry(args: SuiteArgs):
    rng = random.Random(args.seed)
    items = []
    for m in _range(args.m, (1, 2)):
        for n in _range(args.n, (2, 3)):
            for p in _range(args.p, (2, 3)):
                shapes = [FlagShape(m, n, p, args.q)] if args.q is not None else list(all_shapes(m, n, p))
                for shape in shapes:
                    items += [(shape, I, J) for I, J in compatible_pairs(shape) if w_runs(I, J)]
    for shape, I, J in _sample(items, args, rng):
        yield lambda s=shape, I=I, J=J: check_w_symmetry(s, I, J)


def _lattice_items(args: SuiteArgs, with_d: bool) -> list:
    items = []
    for p in _range(args.p, range(1, 6)):
        for n in _range(args.n, range(0 if with_d else 1, 4)):
            if n > p:
                continue
            for h0 in range(0, min(2, p) + 1):
                for d in ((1, 2) if with_d else (0,)):
                    for lam in partitions_in_box(n, p - n):
                        items.append((lam, n, p, h0, d))
    return items


def tasks_eq_6_16(args: SuiteArgs):
    rng = random.Random(args.seed)
    for lam, n, p, h0, d in _sample(_lattice_items(args, False), args, rng):
        yield lambda a=(lam, n, p, h0, d): verify_lattice_correspondence(*a)


def tasks_eq_6_19(args: SuiteArgs):
    rng = random.Random(args.seed)
    for lam, n, p, h0, d in _sample(_lattice_items(args, True), args, rng):
        yield lambda a=(lam, n, p, h0, d): verify_lattice_correspondence(*a)


def eq_611_items(args: SuiteArgs) -> list:
    items = []
    for n in _range(args.n, (2, 3)):
        for q1 in range(1, n):
            for p in _range(args.p, range(1, 5)):
                r = n - q1
                if p - n + q1 < 0:
                    continue
                for h0 in range(0, 3):
                    if h0 > p - r:
                        continue
                    for lam in partitions_in_box(r, p - r, h0):
                        items.append((n, q1, p, h0, lam))
    return items


def tasks_eq_6_11(args: SuiteArgs):
    rng = random.Random(args.seed)
    for item in _sample(eq_611_items(args), args, rng):
        yield lambda a=item: verify_eq_611(*a)


def eq_610_items(args: SuiteArgs) -> list:
    items = []
    for m in _range(args.m, (1, 2)):
        for n in _range(args.n, range(m + 1, 4)):
            for p in _range(args.p, range(1, 5)):
                for shape in all_shapes(m, n, p):
                    if args.q is not None and shape.q != tuple(args.q):
                        continue
                    for h in itertools.product(range(3), repeat=m + 1):
                        k = sum(h)
                        if k == 0 or k > p:
                            continue
                        tail = FlagShape(m, n, p - k, shape.q) if p > k else None
                        tails = compatible_pairs(tail) if tail else ([((), ())] if _prefix_ok(shape, h) else [])
                        for tI, tJ in tails:
                            items.append((shape, h, tI, tJ))
    return items


def _prefix_ok(shape: FlagShape, h) -> bool:
    I = J = prefix_word(h, ())
    return content_compatible(shape, I, J)


def tasks_eq_6_10(args: SuiteArgs):
    rng = random.Random(args.seed)
    for shape, h, tI, tJ in _sample(eq_610_items(args), args, rng):
        yield lambda a=(shape, h, tI, tJ): check_prefix_pushforward(*a)


SUITES: dict[str, Callable[[SuiteArgs], Iterator[Task]]] = {
    "yang-baxter": tasks_yang_baxter,
    "rtt-relations": tasks_rtt,
    "lemma-3-1": tasks_g_equals_h,
    "symmetry-4-1-to-4-4": tasks_symmetry,
    "prop-4-5": tasks_multiple_commutation,
    "thm-5-2": tasks_pushforward,
    "eq-5-8": tasks_eq_5_8,
    "vertical-commute": tasks_vertical,
    "w-symmetry": tasks_w_symmetry,
    "eq-6-16": tasks_eq_6_16,
    "eq-6-19": tasks_eq_6_19,
    "eq-6-11": tasks_eq_6_11,
    "eq-6-10": tasks_eq_6_10,
    "q-limit": tasks_q_limit,
}


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def run_suite(name: str, args: SuiteArgs | None = None, threads: int | None = None) -> Outcome:
    """Run a named suite.  Raises ``KeyError`` for an unknown name and
    ``ResourceWarning`` when the bounds are too large."""
    if name not in SUITES:
        raise KeyError(name)
    args = args or SuiteArgs()
    tasks = list(SUITES[name](args))
    threads = threads or thread_count()
    total = Outcome(name)
    if threads > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda t: t(), tasks))
    else:
        results = [t() for t in tasks]
    for r in results:
        total.merge(r)
    return total


__all__ = [
    "SUITES",
    "SuiteArgs",
    "run_suite",
    "compatible_pairs",
    "integral_in_u_inverse",
    "check_g_equals_h",
    "check_symmetries",
    "check_pushforward",
    "check_complete_flag",
    "check_w_symmetry",
]
