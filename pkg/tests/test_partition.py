import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from gysin_lattice.algebra import LaurentPoly, permute_positions, ring
from gysin_lattice.partition import (
    FlagShape,
    GridSpec,
    all_amplitudes,
    all_shapes,
    brute_force_grid,
    column_transfer,
    compute_F,
    compute_G,
    compute_H,
    content_compatible,
    grid_for,
    grid_from_json,
    grid_json,
    row_specs,
    shape_ring,
)
from gysin_lattice.suites import (
    check_g_equals_h,
    check_symmetries,
    check_w_symmetry,
    compatible_pairs,
    integral_in_u_inverse,
    w_runs,
)
from gysin_lattice.vertex import RowOpSpec, StateVector, apply_product, basis_words, r_entry


def complete_flag(n):
    return FlagShape(n - 1, n, n, tuple(range(1, n))), (n - 1,) * n, tuple(range(n - 1, -1, -1))


def closed_form(vars, n):
    out = LaurentPoly.one(vars)
    for j in range(1, n + 1):
        out = out * (1 - LaurentPoly.var(vars, f"u{j}") ** -1) ** (n - j)
    return out


def test_flag_shape_validation():
    FlagShape(2, 3, 2, (1, 2))
    for bad in [(2, 3, 2, (2, 1)), (2, 3, 2, (1, 3)), (1, 3, 2, (1, 2)), (1, 3, 0, (1,)), (1, 1, 2, (1,))]:
        with pytest.raises(ValueError):
            FlagShape(*bad)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_complete_flag_closed_forms(n):
    shape, I, J = complete_flag(n)
    F = compute_F(shape, I, J)
    assert F == closed_form(F.vars, n)
    assert compute_G(shape, I, J) == 1
    assert compute_H(shape, I, J) == 1


def test_content_violation_gives_zero():
    shape = FlagShape(2, 3, 3, (1, 2))
    I, J = (0, 0, 0), (0, 0, 0)
    assert not content_compatible(shape, I, J)
    for fn in (compute_F, compute_G, compute_H):
        assert fn(shape, I, J) == 0


def test_word_validation():
    shape = FlagShape(1, 2, 2, (1,))
    with pytest.raises(ValueError):
        compute_F(shape, (0, 2), (0, 0))
    with pytest.raises(ValueError):
        compute_G(shape, (0,), (0, 0))


def test_zero_count_matches_conservation():
    shape = FlagShape(2, 3, 3, (1, 2))
    for J in basis_words(2, 3):
        amps = all_amplitudes(shape, "F", J)
        for I in amps:
            assert content_compatible(shape, I, J)


# --- oracle agreement --------------------------------------------------------

def test_one_by_one_grid():
    vars = ring(1, 1)
    u, w = LaurentPoly.var(vars, "u1"), LaurentPoly.var(vars, "w1")
    for m in (1, 2):
        for a, s, a2, s2 in itertools.product(range(m + 1), repeat=4):
            grid = GridSpec(m, (s2,), (s,), (RowOpSpec(a, a2, "u1", ("w1",)),), vars)
            assert brute_force_grid(grid) == r_entry(m, a, s, a2, s2, u, w)


def test_empty_grid():
    vars = ring(1)
    assert brute_force_grid(GridSpec(1, (0, 1), (0, 1), (), vars)) == 1
    assert brute_force_grid(GridSpec(1, (1, 0), (0, 1), (), vars)) == 0


def test_complete_flag_n3_brute_force():
    shape, I, J = complete_flag(3)
    grid = grid_for(shape, "F", I, J)
    assert brute_force_grid(grid) == closed_form(grid.vars, 3)
    assert column_transfer(grid) == closed_form(grid.vars, 3)


def test_brute_force_m2_n3_p3_random():
    shape = FlagShape(2, 3, 3, (1, 2))
    rng = random.Random(3)
    pairs = compatible_pairs(shape)
    for I, J in rng.sample(pairs, 12):
        for fam, fn in (("F", compute_F), ("G", compute_G), ("H", compute_H)):
            grid = grid_for(shape, fam, I, J)
            assert fn(shape, I, J) == brute_force_grid(grid)
            if fam != "H":
                assert fn(shape, I, J) == column_transfer(grid)


def test_brute_force_inhomogeneous():
    shape = FlagShape(1, 3, 3, (1,))
    for I, J in compatible_pairs(shape)[:8]:
        for fam, fn in (("F", compute_F), ("G", compute_G), ("H", compute_H)):
            assert fn(shape, I, J, 2) == brute_force_grid(grid_for(shape, fam, I, J, 2))


def test_grid_json_round_trip():
    shape = FlagShape(2, 3, 2, (1, 2))
    obj = grid_json(shape, "H", (2, 2), (1, 0), 1)
    back = grid_from_json(json.loads(json.dumps(obj)))
    assert back == (shape, "H", (2, 2), (1, 0), 1)
    with pytest.raises(ValueError):
        grid_json(shape, "X", (2, 2), (1, 0))


# --- symmetries and G = H ----------------------------------------------------

def test_g_equals_h_exhaustive_small():
    for shape in all_shapes(2, 3, 2):
        for I, J in compatible_pairs(shape):
            assert check_g_equals_h(shape, I, J).ok


def test_g_equals_h_inhomogeneous():
    for shape in list(all_shapes(1, 3, 3)) + [FlagShape(2, 3, 2, (1, 2))]:
        for I, J in compatible_pairs(shape)[:10]:
            assert compute_G(shape, I, J, shape.p) == compute_H(shape, I, J, shape.p)


def test_symmetry_lemmas():
    rng = random.Random(11)
    for shape in list(all_shapes(2, 3, 2)) + list(all_shapes(1, 4, 2)):
        pairs = compatible_pairs(shape)
        for I, J in rng.sample(pairs, min(5, len(pairs))):
            out = check_symmetries(shape, I, J)
            assert out.ok, out.failures[:1]


def test_f_is_not_fully_symmetric_in_general():
    # a control for the symmetry check: F only has block symmetry
    shape, I, J = complete_flag(3)
    F = compute_F(shape, I, J)
    idx = F.vars.index
    dest = list(range(len(F.vars)))
    dest[idx["u1"]], dest[idx["u2"]] = idx["u2"], idx["u1"]
    assert permute_positions(F, dest) != F


def test_intra_block_order_immaterial():
    shape = FlagShape(1, 4, 3, (2,))
    vars = shape_ring(shape)
    for I, J in compatible_pairs(shape):
        specs = row_specs(shape, "F")
        # reverse each block
        b0 = specs[:2][::-1]
        b1 = specs[2:][::-1]
        alt = apply_product(b0 + b1, StateVector.basis(1, vars, J)).amplitude(I)
        assert alt == compute_F(shape, I, J)


def test_integrality():
    for shape in all_shapes(2, 3, 3):
        for I, J in compatible_pairs(shape)[:20]:
            for fn in (compute_F, compute_G, compute_H):
                assert integral_in_u_inverse(fn(shape, I, J))


def test_w_symmetry():
    found = 0
    for shape in all_shapes(1, 3, 3):
        for I, J in compatible_pairs(shape):
            if w_runs(I, J):
                out = check_w_symmetry(shape, I, J)
                assert out.ok
                found += out.instances
    assert found > 0


def test_w_symmetry_needs_matching_columns():
    # columns with different colors are generally not symmetric in their w's
    shape = FlagShape(1, 2, 2, (1,))
    F = compute_F(shape, (1, 1), (1, 0), 2)
    idx = F.vars.index
    dest = list(range(len(F.vars)))
    dest[idx["w1"]], dest[idx["w2"]] = idx["w2"], idx["w1"]
    assert permute_positions(F, dest) != F


@settings(max_examples=20, deadline=None)
@given(st.randoms(use_true_random=False))
def test_h_symmetric_under_random_permutation(rnd):
    shape = FlagShape(2, 3, 3, (1, 2))
    I, J = rnd.choice(compatible_pairs(shape))
    H = compute_H(shape, I, J)
    perm = list(range(1, 4))
    rnd.shuffle(perm)
    idx = H.vars.index
    dest = list(range(len(H.vars)))
    for i, j in enumerate(perm, start=1):
        dest[idx[f"u{i}"]] = idx[f"u{j}"]
    assert permute_positions(H, dest) == H
