import itertools
import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from gysin_lattice.algebra import LaurentPoly, poly_eval, ring
from gysin_lattice.partition import FlagShape, all_shapes
from gysin_lattice.suites import compatible_pairs
from gysin_lattice.symmetrizer import (
    act,
    check_multiple_commutation,
    check_prefix_pushforward,
    coset_reps,
    gysin_pushforward_check,
    is_fully_symmetric,
    multinomial,
    prefix_word,
    symmetrize,
)


def all_q(n):
    for m in range(1, n):
        yield from itertools.combinations(range(1, n), m)


def test_coset_examples():
    reps = coset_reps(2, (1,))
    assert [r.blocks for r in reps] == [((1,), (2,)), ((2,), (1,))]
    assert len(coset_reps(3, (1, 2))) == 6
    assert len(coset_reps(4, (2,))) == comb(4, 2)


def test_coset_counts():
    for n in range(2, 7):
        for q in all_q(n):
            reps = coset_reps(n, q)
            assert len(reps) == multinomial(n, q)
            assert len({r.perm for r in reps}) == len(reps)


def test_coset_reps_increasing_in_blocks():
    for rep in coset_reps(5, (2, 3)):
        pos = 0
        for block in rep.blocks:
            part = rep.perm[pos:pos + len(block)]
            assert list(part) == sorted(part)
            pos += len(block)


def test_invalid_q():
    with pytest.raises(ValueError):
        coset_reps(3, (2, 1))
    with pytest.raises(ValueError):
        coset_reps(3, (0,))


V2 = ring(2)
u1, u2 = LaurentPoly.var(V2, "u1"), LaurentPoly.var(V2, "u2")


def test_symmetrize_small_examples():
    assert symmetrize(LaurentPoly.one(V2), 2, (1,)) == 1
    assert symmetrize(1 - u1 ** -1, 2, (1,)) == 1


def test_symmetrize_against_points():
    # direct rational coset sum at 20 random points versus the constant 1
    rng = random.Random(5)
    f = 1 - u1 ** -1
    for _ in range(20):
        a, b = (Fraction(rng.randint(2, 500), rng.randint(1, 50)) for _ in range(2))
        if a == b:
            continue
        fa = poly_eval(f, {"u1": a, "u2": b})
        fb = poly_eval(f, {"u1": b, "u2": a})
        total = fa / (1 - b / a) + fb / (1 - a / b)
        assert total == 1


def test_symmetrize_rejects_asymmetric():
    V = ring(3)
    x1 = LaurentPoly.var(V, "u1")
    with pytest.raises(ValueError):
        symmetrize(x1, 3, (2,))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_complete_flag_pushforward(n):
    V = ring(n)
    f = LaurentPoly.one(V)
    for j in range(1, n + 1):
        f = f * (1 - LaurentPoly.var(V, f"u{j}") ** -1) ** (n - j)
    assert symmetrize(f, n, tuple(range(1, n))) == 1


def test_representative_independence():
    V = ring(4)
    us = [LaurentPoly.var(V, f"u{i}") for i in range(1, 5)]
    cases = {
        (2,): (1 - us[0] ** -1) * (1 - us[1] ** -1) * (us[2] ** -1 + us[3] ** -1),
        (2, 3): (1 - us[0] ** -1) * (1 - us[1] ** -1) * us[2] ** -2 * us[3] ** -1,
    }
    for q, f in cases.items():
        a = symmetrize(f, 4, q)
        b = symmetrize(f, 4, q, reps=coset_reps(4, q, decreasing=True))
        assert a == b


block_sym = st.lists(st.tuples(st.integers(-2, 0), st.integers(-2, 0), st.integers(-3, 3)), max_size=3)


def _block_symmetric(data, V):
    # f(u1, u2 | u3) symmetric in u1, u2
    out = LaurentPoly.zero(V)
    for a, b, c in data:
        mono = LaurentPoly.monomial(V, {"u1": a, "u2": b, "u3": a + b})
        swap = LaurentPoly.monomial(V, {"u1": b, "u2": a, "u3": a + b})
        out = out + c * (mono + swap)
    return out


@settings(max_examples=25, deadline=None)
@given(block_sym, block_sym, st.integers(-3, 3), st.integers(-3, 3))
def test_linearity_and_full_symmetry(d1, d2, a, b):
    V = ring(3)
    f, g = _block_symmetric(d1, V), _block_symmetric(d2, V)
    lhs = symmetrize(a * f + b * g, 3, (2,))
    assert lhs == a * symmetrize(f, 3, (2,)) + b * symmetrize(g, 3, (2,))
    assert is_fully_symmetric(lhs, 3)


def test_act_is_substitution():
    V = ring(3)
    x = [LaurentPoly.var(V, f"u{i}") for i in (1, 2, 3)]
    rep = coset_reps(3, (1,))[1]  # blocks ({2}, {1, 3})
    assert rep.perm == (2, 1, 3)
    assert act(rep, x[0] - 2 * x[2]) == x[1] - 2 * x[2]


# --- multiple commutation and the pushforward identity ------------------------

def test_multiple_commutation_m1():
    for n in (2, 3):
        for shape in all_shapes(1, n, 2):
            out = check_multiple_commutation(shape)
            assert out.ok and out.instances == 4


def test_multiple_commutation_27_words():
    out = check_multiple_commutation(FlagShape(2, 3, 3, (1, 2)))
    assert out.ok and out.instances == 27


def test_multiple_commutation_resource_bound():
    with pytest.raises(ResourceWarning):
        check_multiple_commutation(FlagShape(2, 4, 3, (1, 2)), max_work=10)


def test_empty_q_is_identity():
    # one block: a single coset, and symmetrize is the identity
    V = ring(2)
    x1, x2 = LaurentPoly.var(V, "u1"), LaurentPoly.var(V, "u2")
    assert len(coset_reps(2, ())) == 1
    f = (1 - x1 ** -1) * (1 - x2 ** -1) + x1 ** -1 + x2 ** -1
    assert symmetrize(f, 2, ()) == f


def test_pushforward_examples():
    shape = FlagShape(3, 4, 4, (1, 2, 3))
    out = gysin_pushforward_check(shape, (3, 3, 3, 3), (3, 2, 1, 0))
    assert out.ok and out.lhs == 1 and out.rhs == 1
    zero = gysin_pushforward_check(FlagShape(2, 3, 3, (1, 2)), (0, 0, 0), (0, 0, 0))
    assert zero.ok and not zero.lhs and not zero.rhs


def test_pushforward_m2_random():
    shape = FlagShape(2, 3, 3, (1, 2))
    rng = random.Random(7)
    for I, J in rng.sample(compatible_pairs(shape), 10):
        assert gysin_pushforward_check(shape, I, J).ok


def test_pushforward_inhomogeneous():
    for shape in all_shapes(1, 3, 3):
        for I, J in compatible_pairs(shape)[:6]:
            assert gysin_pushforward_check(shape, I, J, 3).ok


def test_prefix_pushforward():
    shape = FlagShape(1, 3, 3, (1,))
    assert prefix_word((1, 1), (0,)) == (0, 1, 0)
    out = check_prefix_pushforward(shape, (1, 1), (1,), (0,))
    assert out.identity == "eq-6-10"
    assert out.ok
    with pytest.raises(ValueError):
        check_prefix_pushforward(shape, (2, 2), (), ())
