"""Substitution operators: letter images, free expansion, move relations."""

import pytest
from hypothesis import given, settings, strategies as st

from qvgr.braid import (
    ExpansionLimit,
    NonPolynomialResult,
    _frac_eq,
    adapted_height_functions,
    bond_order,
    braid_check,
    evaluate,
    evaluator_for,
    fe_add,
    fe_gen,
    fe_mul,
    fe_eq,
    fe_scale,
    fe_sub,
    fe_weight,
    reflection_check,
    ring_for,
    root_image_check,
    source_heights,
    t_apply,
    t_chain,
    t_letter,
    w0_check,
    word_weight,
)
from qvgr.qlaurent import qp, qp_add, qp_mul, qp_neg, qp_sub
from qvgr.quivers import Quiver
from qvgr.rootdata import build_cartan
from qvgr.torus import el_eq

ONE = qp(0, 1)


def br(k):
    # q^k - q^-k with doubled exponents
    return qp_sub(qp(2 * k, 1), qp(-2 * k, 1))


def w(*indices):
    return tuple((i, 0) for i in indices)


# ---------------------------------------------------------------------------
# letter images


def test_diagonal_letter_shifts_level():
    cd = build_cartan("A", 2)
    assert t_letter(cd, 1, 1, 1, 0) == {((1, -1),): (ONE, ONE)}
    assert t_letter(cd, 1, -1, 1, 0) == {((1, 1),): (ONE, ONE)}
    assert t_letter(cd, 2, 1, 2, 3) == {((2, 2),): (ONE, ONE)}


def test_distant_letter_unchanged():
    cd = build_cartan("A", 3)
    assert t_letter(cd, 1, 1, 3, 0) == {((3, 0),): (ONE, ONE)}
    assert t_letter(cd, 3, -1, 1, 1) == {((1, 1),): (ONE, ONE)}


def test_single_bond_letter_a2():
    # (q^{1/2} y2 y1 - q^{-1/2} y1 y2) / (q - q^-1)
    cd = build_cartan("A", 2)
    img = t_letter(cd, 1, 1, 2, 0)
    d = br(1)
    assert img == {w(2, 1): (qp(1, 1), d), w(1, 2): (qp(-1, -1), d)}
    inv = t_letter(cd, 1, -1, 2, 0)
    assert inv == {w(1, 2): (qp(1, 1), d), w(2, 1): (qp(-1, -1), d)}


def test_double_bond_letter_b3_inverse():
    # (q y3^2 y2 - (q+q^-1) y3 y2 y3 + q^-1 y2 y3^2) / ((q+q^-1)(q-q^-1)^2)
    cd = build_cartan("B", 3)
    img = t_letter(cd, 3, -1, 2, 0)
    d = qp_mul(qp_add(qp(2, 1), qp(-2, 1)), qp_mul(br(1), br(1)))
    assert img == {
        w(3, 3, 2): (qp(2, 1), d),
        w(3, 2, 3): (qp_neg(qp_add(qp(2, 1), qp(-2, 1))), d),
        w(2, 3, 3): (qp(-2, 1), d),
    }


def test_triple_bond_letter_g2():
    # (q^{3/2} y2 y1^3 - q^{1/2}[3] y1 y2 y1^2 + q^{-1/2}[3] y1^2 y2 y1
    #  - q^{-3/2} y1^3 y2) / ((q-q^-1)(q^2-q^-2)(q^3-q^-3))
    cd = build_cartan("G", 2)
    img = t_letter(cd, 1, 1, 2, 0)
    three = qp_add(qp_add(qp(4, 1), qp(0, 1)), qp(-4, 1))
    d = qp_mul(br(1), qp_mul(br(2), br(3)))
    assert img == {
        w(2, 1, 1, 1): (qp(3, 1), d),
        w(1, 2, 1, 1): (qp_neg(qp_mul(qp(1, 1), three)), d),
        w(1, 1, 2, 1): (qp_mul(qp(-1, 1), three), d),
        w(1, 1, 1, 2): (qp(-3, -1), d),
    }
    inv = t_letter(cd, 1, -1, 2, 0)
    assert inv[w(1, 1, 1, 2)] == (qp(3, 1), d)
    assert inv[w(2, 1, 1, 1)] == (qp(-3, -1), d)


def test_letters_use_the_doubled_q_of_long_roots():
    # B3 vertices 1,2 are long: the single-bond bracket is in q^2
    cd = build_cartan("B", 3)
    img = t_letter(cd, 1, 1, 2, 0)
    assert img[w(2, 1)] == (qp(2, 1), br(2))


# ---------------------------------------------------------------------------
# free elements


def test_free_element_algebra():
    a = fe_gen(1, 0)
    b = fe_gen(2, 1)
    p = fe_mul(a, b)
    assert p == {((1, 0), (2, 1)): (ONE, ONE)}
    assert fe_sub(p, p) == {}
    s = fe_add(fe_scale(p, qp(2, 1)), fe_scale(p, qp(-2, 1)))
    assert s == {((1, 0), (2, 1)): (qp_add(qp(2, 1), qp(-2, 1)), ONE)}


def test_word_weight_alternates_with_level():
    cd = build_cartan("A", 2)
    assert word_weight(cd, ((1, 0), (2, 1))) == (1, -1)
    assert word_weight(cd, ((1, 0), (1, 2), (2, -1))) == (2, -1)
    assert fe_weight(cd, fe_add(fe_gen(1, 0), fe_gen(2, 0))) is None
    assert fe_weight(cd, fe_gen(2, 4)) == (0, 1)


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([("A", 2), ("B", 2), ("C", 3), ("G", 2)]),
    st.data(),
)
def test_apply_reflects_the_weight(kind_rank, data):
    # image of a homogeneous element is homogeneous of reflected weight
    kind, n = kind_rank
    cd = build_cartan(kind, n)
    word = tuple(
        data.draw(
            st.tuples(st.integers(1, n), st.integers(-1, 1)), label="letter")
        for _ in range(data.draw(st.integers(1, 3), label="len")))
    i = data.draw(st.integers(1, n), label="i")
    sign = data.draw(st.sampled_from([1, -1]), label="sign")
    image = t_apply(cd, i, sign, {word: (ONE, ONE)})
    want = cd.apply_s(i, word_weight(cd, word))
    assert fe_weight(cd, image) == tuple(want)


# ---------------------------------------------------------------------------
# chain collapse against known targets


def test_single_bond_pair_swaps_generators():
    # T_i T_j (y_i) = y_j whenever the bond multiplicity is one
    for kind, n, i, j in (("A", 2, 1, 2), ("C", 3, 1, 2), ("B", 3, 2, 1)):
        cd = build_cartan(kind, n)
        ev = evaluator_for(cd, Quiver(cd, source_heights(cd, i)))
        for m in (0, 1):
            want = (ev.pres.x_gen(j, m), ONE)
            assert _frac_eq(ev.value(((1, i), (1, j)), i, m), want)


def test_inverse_composes_to_identity():
    for kind, n in (("A", 3), ("B", 2), ("C", 3), ("G", 2)):
        cd = build_cartan(kind, n)
        for i in range(1, n + 1):
            ev = evaluator_for(cd, Quiver(cd, source_heights(cd, i)))
            for j in range(1, n + 1):
                want = (ev.pres.x_gen(j, 0), ONE)
                assert _frac_eq(ev.value(((1, i), (-1, i)), j, 0), want)
                assert _frac_eq(ev.value(((-1, i), (1, i)), j, 0), want)


def test_g2_one_letter_image_is_the_reflected_root_character():
    cd = build_cartan("G", 2)
    quiver = Quiver(cd, source_heights(cd, 1))
    F = ring_for(cd).fq_fundamental
    got = evaluate(cd, quiver, t_letter(cd, 1, 1, 2, 0))
    assert el_eq(got, F(*quiver.position(cd.act_word((1,), cd.simple(2)))))


def test_g2_two_letter_chain_lands_on_the_highest_short_slot():
    # T2 T1 (y2) over the source-2 grid gives the (3,2)-coordinate root
    cd = build_cartan("G", 2)
    quiver = Quiver(cd, (4, 5))
    ev = evaluator_for(cd, quiver)
    F = ring_for(cd).fq_fundamental
    assert _frac_eq(ev.value(((1, 2), (1, 1)), 2, 0),
                    (F(*quiver.position((3, 2))), ONE))


# ---------------------------------------------------------------------------
# frozen bracket-product forms (G2)


def g2_units():
    u1 = {w(1, 2): (qp(3, 1), ONE), w(2, 1): (qp(-3, -1), ONE)}
    u2 = {w(1, 1, 2): (qp(4, 1), ONE),
          w(1, 2, 1): (qp_neg(qp_add(qp(2, 1), qp(-2, 1))), ONE),
          w(2, 1, 1): (qp(-4, 1), ONE)}
    return u1, u2


def test_g2_ladder_units_evaluate_to_root_characters():
    cd = build_cartan("G", 2)
    quiver = Quiver(cd, (4, 5))
    F = ring_for(cd).fq_fundamental
    u1, u2 = g2_units()
    got1 = evaluate(cd, quiver, fe_scale(u1, ONE, br(3)))
    assert el_eq(got1, F(*quiver.position((1, 1))))
    got2 = evaluate(cd, quiver, fe_scale(u2, ONE, qp_mul(br(3), br(2))))
    assert el_eq(got2, F(*quiver.position((2, 1))))


def test_g2_cross_bracket_expansion_splits_off_a_serre_sandwich():
    # q^{-1/2} u2*u1 - q^{1/2} u1*u2 equals the six-word palindromic form
    # plus -y1 (y2^2 y1 - (q^3+q^-3) y2 y1 y2 + y1 y2^2) y1, exactly
    u1, u2 = g2_units()
    cross = fe_sub(fe_scale(fe_mul(u2, u1), qp(-1, 1)),
                   fe_scale(fe_mul(u1, u2), qp(1, 1)))
    three = qp_add(qp_add(qp(4, 1), qp(0, 1)), qp(-4, 1))
    two = qp_add(qp(2, 1), qp(-2, 1))
    six = {w(1, 1, 2, 1, 2): (qp(6, 1), ONE),
           w(1, 2, 1, 1, 2): (qp_neg(qp_mul(qp(4, 1), three)), ONE),
           w(2, 1, 1, 1, 2): (two, ONE),
           w(2, 1, 1, 2, 1): (qp_neg(qp_mul(qp(-4, 1), three)), ONE),
           w(1, 2, 1, 2, 1): (two, ONE),
           w(2, 1, 2, 1, 1): (qp(-6, 1), ONE)}
    sandwich = {w(1, 2, 2, 1, 1): (qp(0, -1), ONE),
                w(1, 2, 1, 2, 1): (qp_add(qp(6, 1), qp(-6, 1)), ONE),
                w(1, 1, 2, 2, 1): (qp(0, -1), ONE)}
    assert fe_eq(cross, fe_add(six, sandwich))

    cd = build_cartan("G", 2)
    quiver = Quiver(cd, (4, 5))
    F = ring_for(cd).fq_fundamental
    target = F(*quiver.position((3, 2)))
    den = qp_mul(qp_mul(br(1), br(2)), qp_mul(br(3), br(3)))
    assert evaluate(cd, quiver, sandwich) == {}
    assert el_eq(evaluate(cd, quiver, fe_scale(six, ONE, den)), target)
    assert el_eq(evaluate(cd, quiver, fe_scale(cross, ONE, den)), target)


# ---------------------------------------------------------------------------
# frozen vanishing combination (B3)


def commuting_normal_form(cd, e):
    """Bubble distant letters (zero Cartan pairing) into sorted order;
    an exact rewrite wherever the letters are represented."""
    out = {}
    for word, cf in e.items():
        word = list(word)
        changed = True
        while changed:
            changed = False
            for k in range(len(word) - 1):
                a, b = word[k], word[k + 1]
                if cd.c(a[0], b[0]) == 0 and a > b:
                    word[k], word[k + 1] = b, a
                    changed = True
        key = tuple(word)
        if key in out:
            got = fe_add({key: out[key]}, {key: cf})
            if got:
                out[key] = got[key]
            else:
                del out[key]
        else:
            out[key] = cf
    return out


def test_b3_mixed_bracket_combination_vanishes():
    # [q T3T2(y1) y2 - q^-1 y2 T3T2(y1)] - [q T2(y1) T3inv(y2)
    #  - q^-1 T3inv(y2) T2(y1)], over (q^2-q^-2), in normal form is a
    # ten-word element of the vanishing ideal
    cd = build_cartan("B", 3)
    a = t_chain(cd, ((1, 3), (1, 2)), 1, 0)
    b = t_chain(cd, ((1, 2),), 1, 0)
    c = t_chain(cd, ((-1, 3),), 2, 0)
    y2 = fe_gen(2, 0)
    lhs = fe_sub(fe_scale(fe_mul(a, y2), qp(2, 1)),
                 fe_scale(fe_mul(y2, a), qp(-2, 1)))
    rhs = fe_sub(fe_scale(fe_mul(b, c), qp(2, 1)),
                 fe_scale(fe_mul(c, b), qp(-2, 1)))
    d = fe_scale(fe_sub(lhs, rhs), ONE, br(2))
    den = qp_mul(br(1), qp_mul(br(2), qp_mul(br(2), br(2))))
    cube = qp_add(qp(6, 1), qp(2, 1))
    low = qp_add(qp(-2, 1), qp(-6, 1))
    frozen = {
        w(1, 2, 3, 2, 3): (cube, den),
        w(1, 3, 2, 3, 2): (qp_neg(cube), den),
        w(3, 3, 2, 1, 2): (br(1), den),
        w(2, 1, 2, 3, 3): (qp_neg(br(1)), den),
        w(3, 2, 3, 2, 1): (low, den),
        w(2, 3, 2, 1, 3): (qp_neg(low), den),
        w(1, 3, 3, 2, 2): (qp(2, 1), den),
        w(2, 2, 1, 3, 3): (qp(-2, 1), den),
        w(1, 2, 2, 3, 3): (qp(2, -1), den),
        w(3, 3, 2, 2, 1): (qp(-2, -1), den),
    }
    assert fe_eq(commuting_normal_form(cd, d), frozen)
    quiver = Quiver(cd, source_heights(cd, 2))
    assert evaluate(cd, quiver, d) == {}


# ---------------------------------------------------------------------------
# move relations


@pytest.mark.parametrize("kind,n,i,j,order", [
    ("A", 2, 1, 2, 3),
    ("A", 3, 1, 2, 3),
    ("A", 3, 1, 3, 2),
    ("B", 2, 1, 2, 4),
    ("C", 2, 2, 1, 4),
    ("B", 3, 2, 3, 4),
    ("C", 3, 2, 3, 4),
])
def test_braid_pairs(kind, n, i, j, order):
    cd = build_cartan(kind, n)
    assert bond_order(cd, i, j) == order
    for m in (0, 1):
        v = braid_check(cd, i, j, m)
        assert v["pass"], v["id"]
        assert v["order"] == order
        assert set(v["generators"]) == {str(k) for k in range(1, n + 1)}
        assert all(v["generators"].values())
        if order == 4:
            assert all(v["split_identities"].values())


def test_braid_six_move_g2():
    cd = build_cartan("G", 2)
    for m in (0, 1):
        v = braid_check(cd, 1, 2, m)
        assert v["pass"], v["id"]
        assert v["order"] == 6
        assert all(v["split_identities"].values())


def test_braid_under_a_second_height_function():
    cd = build_cartan("A", 3)
    v = braid_check(cd, 1, 2, 0, heights=(0, 1, 0))
    assert v["pass"] and v["heights"] == [0, 1, 0]


def test_braid_rejects_bad_input():
    cd = build_cartan("A", 2)
    with pytest.raises(ValueError):
        braid_check(cd, 1, 1, 0)
    with pytest.raises(ValueError):
        braid_check(cd, 1, 2, 0, strategy="vibes")


def test_braid_stress_a2():
    cd = build_cartan("A", 2)
    for m in (0, 1):
        v = braid_check(cd, 1, 2, m, strategy="stress")
        assert v["pass"], v["id"]


def test_braid_stress_cap_reports_instead_of_running_away():
    cd = build_cartan("G", 2)
    v = braid_check(cd, 1, 2, 0, strategy="stress", max_terms=20000)
    assert v["pass"] is None
    assert v["capped"] and v["terms"] > v["limit"] == 20000


def test_expansion_limit_raises():
    cd = build_cartan("G", 2)
    chain = tuple((1, (1, 2)[k % 2]) for k in range(6))
    with pytest.raises(ExpansionLimit) as info:
        t_chain(cd, chain, 2, 0, max_terms=100)
    assert info.value.limit == 100 and info.value.terms > 100


def test_evaluate_rejects_leftover_denominator():
    cd = build_cartan("A", 2)
    quiver = Quiver(cd, source_heights(cd, 1))
    e = fe_scale(fe_gen(1, 0), ONE, br(1))
    with pytest.raises(NonPolynomialResult):
        evaluate(cd, quiver, e)
    el, den = evaluate(cd, quiver, e, fraction=True)
    assert den == br(1)
    assert el_eq(el, ring_for(cd).fq_fundamental(
        *quiver.phi_inv(cd.simple(1), 0)))


# ---------------------------------------------------------------------------
# longest element


@pytest.mark.parametrize("kind,n", [("A", 2), ("C", 3), ("G", 2)])
def test_w0_shifts_one_level_with_the_diagram_involution(kind, n):
    cd = build_cartan(kind, n)
    for m in (0, 1):
        v = w0_check(cd, m)
        assert v["pass"], v["id"]


def test_w0_is_word_independent():
    # a second reduced word gives the same landing in A3 and C3
    for kind, n, word in (("A", 3, (1, 2, 1, 3, 2, 1)),
                          ("C", 3, (1, 2, 1, 3, 2, 1, 3, 2, 3))):
        cd = build_cartan(kind, n)
        assert cd.is_reduced(word) and len(word) == len(cd.w0_word)
        v = w0_check(cd, 0, word=word)
        assert v["pass"], v["id"]


# ---------------------------------------------------------------------------
# reflections and root images


@pytest.mark.parametrize("kind,n", [("A", 3), ("B", 2), ("C", 3), ("G", 2)])
def test_source_reflections(kind, n):
    cd = build_cartan(kind, n)
    for heights in adapted_height_functions(cd):
        quiver = Quiver(cd, heights)
        for i in quiver.sources():
            v = reflection_check(cd, quiver, i)
            assert v["pass"], v["id"]


def test_reflection_needs_a_source():
    cd = build_cartan("A", 3)
    quiver = Quiver(cd, source_heights(cd, 1))
    with pytest.raises(ValueError):
        reflection_check(cd, quiver, 2)


def test_root_image_positive_cases():
    cd = build_cartan("C", 3)
    v = root_image_check(cd, (1, 2, 1), 0)
    assert v["pass"] and v["precondition_ok"] and v["target"] == 2
    cd = build_cartan("A", 2)
    v = root_image_check(cd, (2, 1, 2), 1)
    assert v["pass"] and v["target"] == 1


def test_root_image_reports_failed_precondition():
    cd = build_cartan("A", 2)
    v = root_image_check(cd, (1, 2), 0)
    assert not v["pass"] and not v["precondition_ok"]
    cd = build_cartan("C", 3)
    v = root_image_check(cd, (2, 3, 2), 0)
    assert not v["precondition_ok"] and v["beta"] == [0, 1, 1]


# ---------------------------------------------------------------------------
# height function helpers


def test_source_heights_and_window():
    cd = build_cartan("A", 3)
    assert source_heights(cd, 2) == (-1, 0, -1)
    window = adapted_height_functions(cd)
    assert len(window) == 4
    for heights in window:
        for a in range(1, 4):
            for b in cd.neighbors(a):
                assert abs(heights[a - 1] - heights[b - 1]) == 1


def test_bond_orders():
    assert bond_order(build_cartan("A", 3), 1, 3) == 2
    assert bond_order(build_cartan("A", 2), 1, 2) == 3
    assert bond_order(build_cartan("B", 3), 2, 3) == 4
    assert bond_order(build_cartan("G", 2), 2, 1) == 6
