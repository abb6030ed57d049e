import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gysin_lattice.algebra import LaurentPoly, RatFun, poly_specialize, ring
from gysin_lattice.relations import (
    _relations,
    _side,
    check_q_limit,
    check_rtt_relations,
    check_vertical_commute,
    check_yang_baxter,
)
from gysin_lattice.vertex import (
    RowOpSpec,
    StateVector,
    apply_product,
    apply_row,
    apply_row_extended,
    b_op,
    basis_words,
    d_op,
    r_entry,
    rq_entry,
    vertical_T_entry,
)

V = ring(2, 3, q=True)
u, w = LaurentPoly.var(V, "u1"), LaurentPoly.var(V, "w1")
q = LaurentPoly.var(V, "q")


def test_r_entry_examples():
    for m in (1, 2, 3):
        for k in range(m + 1):
            assert r_entry(m, k, k, k, k, u, w) == 1
        for k, l in itertools.combinations(range(m + 1), 2):
            assert r_entry(m, k, l, l, k, u, w) == w * u ** -1
            assert r_entry(m, l, k, k, l, u, w) == 1
            assert r_entry(m, l, k, l, k, u, w) == 1 - w * u ** -1
            assert not r_entry(m, k, l, k, l, u, w)


def test_ice_rule():
    m = 2
    for t in itertools.product(range(m + 1), repeat=4):
        if t[0] + t[1] != t[2] + t[3]:
            assert not r_entry(m, *t, u, w)
            assert not rq_entry(m, *t, u, w, q)


def test_r_entry_at_w_equals_u_is_swap():
    m = 2
    for a, s, a2, s2 in itertools.product(range(m + 1), repeat=4):
        expected = 1 if (a2, s2) == (s, a) else 0
        assert r_entry(m, a, s, a2, s2, u, u) == expected


def test_color_out_of_range():
    with pytest.raises(ValueError):
        r_entry(1, 2, 0, 0, 2, u, w)
    with pytest.raises(ValueError):
        rq_entry(1, 0, 0, 0, -1, u, w, q)


def test_rq_entry_diagonal_and_limit():
    for k in range(3):
        assert rq_entry(2, k, k, k, k, u, w, q) == u - q * w
    for t in itertools.product(range(3), repeat=4):
        lim = u ** -1 * poly_specialize(rq_entry(2, *t, u, w, q), {"q": 0})
        assert lim == r_entry(2, *t, u, w)


def test_q_limit_check_counts():
    for m in (1, 2, 3):
        out = check_q_limit(m)
        assert out.ok and out.instances == (m + 1) ** 4


def test_yang_baxter_small():
    for m in (1, 2):
        out = check_yang_baxter(m)
        assert out.ok and out.instances == (m + 1) ** 6


def test_yang_baxter_deformed_m1():
    assert check_yang_baxter(1, deformed=True).ok


# --- rows --------------------------------------------------------------------

W = ring(1, 3)
U = LaurentPoly.var(W, "u1")
ws = [LaurentPoly.var(W, f"w{k}") for k in (1, 2, 3)]


def single_row_oracle(spec: RowOpSpec, m: int, word) -> dict:
    """Enumerate every aux color sequence and output word; no pruning."""
    p = len(word)
    out = {}
    for aux in itertools.product(range(m + 1), repeat=p - 1):
        chain = (spec.aux_in,) + aux + (spec.aux_out,)
        for top in itertools.product(range(m + 1), repeat=p):
            amp = LaurentPoly.one(W)
            for k in range(p):
                par = spec.inhoms[k]
                wk = LaurentPoly.var(W, par) if isinstance(par, str) else par
                amp = amp * r_entry(m, chain[k], word[k], chain[k + 1], top[k], U, wk)
                if not amp:
                    break
            if amp:
                out[top] = out.get(top, LaurentPoly.zero(W)) + amp
    return {k: v for k, v in out.items() if v}


def test_d1_single_site():
    spec = d_op(1, "u1", ("w1",))
    assert apply_row(spec, StateVector.basis(1, W, (0,))).amps == {(0,): 1 - ws[0] * U ** -1}
    assert apply_row(spec, StateVector.basis(1, W, (1,))).amps == {(1,): LaurentPoly.one(W)}


def test_d1_on_vacuum_is_product():
    spec = d_op(1, "u1", ("w1", "w2", "w3"))
    out = apply_row(spec, StateVector.basis(1, W, (0, 0, 0)))
    expected = LaurentPoly.one(W)
    for wk in ws:
        expected = expected * (1 - wk * U ** -1)
    assert out.amps == {(0, 0, 0): expected}


def test_b0_two_sites():
    spec = b_op(1, 0, "u1", ("w1", "w2"))
    out = apply_row(spec, StateVector.basis(1, W, (0, 0)))
    assert out.amps == {(1, 0): LaurentPoly.one(W), (0, 1): 1 - ws[0] * U ** -1}
    assert out.amps == single_row_oracle(spec, 1, (0, 0))


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 3).flatmap(
        lambda m: st.tuples(
            st.just(m),
            st.lists(st.integers(0, m), min_size=1, max_size=3),
            st.integers(0, m),
            st.integers(0, m),
            st.lists(st.sampled_from(["w1", "w2", "w3", 1]), min_size=3, max_size=3),
        )
    )
)
def test_apply_row_matches_path_oracle(data):
    m, word, a_in, a_out, params = data
    spec = RowOpSpec(a_in, a_out, "u1", tuple(params[: len(word)]))
    got = apply_row(spec, StateVector.basis(m, W, word))
    assert got.amps == single_row_oracle(spec, m, tuple(word))
    # content conservation: out = in + {a_in} - {a_out}
    for top in got.amps:
        assert sorted(top + (a_out,)) == sorted(tuple(word) + (a_in,))


def test_width_mismatch():
    with pytest.raises(ValueError):
        apply_row(d_op(1, "u1", (1, 1)), StateVector.basis(1, W, (0,)))


def test_extended_reduces_without_added_columns():
    st0 = StateVector.basis(2, W, (2, 0, 1))
    a = apply_row_extended(2, (), "u1", ("w1", 1, "w2"), st0)
    b = apply_row(b_op(2, 0, "u1", ("w1", 1, "w2")), st0)
    assert a == b
    wide = StateVector.basis(2, W, (2, 0, 0, 0))
    c = apply_row_extended(2, (1,), "u1", None, wide)
    assert c == apply_row(b_op(2, 0, "u1", (1, 1, 1, 1)), wide)
    with pytest.raises(ValueError):
        apply_row_extended(2, (1,), "u1", (1, 1), wide)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=3, max_size=3), st.data())
def test_pruned_product_agrees(word, data):
    R = ring(3)
    specs = [b_op(2, 1, "u1", (1, 1, 1)), d_op(2, "u2", (1, 1, 1)), b_op(2, 0, "u3", (1, 1, 1))]
    full = apply_product(specs, StateVector.basis(2, R, word))
    targets = data.draw(st.lists(st.sampled_from(basis_words(2, 3)), min_size=1, max_size=4))
    pruned = apply_product(specs, StateVector.basis(2, R, word), targets=targets)
    for t in targets:
        assert pruned.amplitude(t) == full.amplitude(t)


# --- commutation relations and column operators ------------------------------

def test_rtt_relations_m2():
    for p in (1, 2, 3):
        out = check_rtt_relations(2, p)
        assert out.ok, out.failures[:1]


def test_rtt_relations_inhomogeneous():
    assert check_rtt_relations(2, 2, inhoms=2).ok
    assert check_rtt_relations(1, 3, inhoms=2).ok


def test_rtt_negative_control():
    # swapping the two coefficients in the four-term relation must break it
    m, p = 1, 2
    R = ring(2)
    (label, _), lhs_terms, rhs_terms = next(iter(_relations(m, (1,) * p)))
    assert label == "DB-four-term"
    (c1, ops1), (c2, ops2) = rhs_terms
    wrong = [(c2, ops1), (c1, ops2)]
    zero = RatFun(LaurentPoly.zero(R))
    broken = False
    for J in basis_words(m, p):
        state = StateVector.basis(m, R, J)
        lhs, rhs = _side(lhs_terms, state), _side(wrong, state)
        if any(lhs.get(I, zero) != rhs.get(I, zero) for I in set(lhs) | set(rhs)):
            broken = True
    assert broken


def test_vertical_T_single_row_is_r_entry():
    R = ring(1, 1)
    uu, ww = LaurentPoly.var(R, "u1"), LaurentPoly.var(R, "w1")
    for m in (1, 2):
        for i, j in itertools.product(range(m + 1), repeat=2):
            mat = vertical_T_entry(i, j, "w1", ["u1"], m, R)
            for a_out, a_in in itertools.product(range(m + 1), repeat=2):
                assert mat[a_out, a_in] == r_entry(m, a_in, j, a_out, i, uu, ww)


def test_vertical_commute():
    for m, n in ((1, 1), (1, 2), (1, 3), (2, 2)):
        out = check_vertical_commute(m, n)
        assert out.ok and out.instances == m + 1


def test_state_vector_json():
    st0 = StateVector.basis(1, W, (0, 1))
    obj = st0.to_json_obj()
    assert obj["width"] == 2
    assert obj["amplitudes"] == {"0,1": LaurentPoly.one(W).to_json_obj()}
