import pytest

from upv.grouprep import (SignedAction,
                          check_regular_representation, delta_set_report,
                          fixed_loci_report, fixed_locus, group_G, group_H,
                          j_generator_stability_report, parse_word,
                          q_invariance_report, stabilizer_classification,
                          subgroup_census_report, table1_relations_report,
                          theta_class, word_str)
from upv.scalars import QQ


def test_word_parsing_roundtrip():
    w = parse_word("a1*b2")
    assert w == (1, 0, 0, 0, 1, 0)
    assert word_str(w) == "a1*b2"
    assert word_str(parse_word("1")) == "1"
    with pytest.raises(ValueError):
        parse_word("c1")


def test_table1_spot_actions():
    a1 = SignedAction(parse_word("a1"), QQ)
    assert a1.image_of_variable("x00") == (1, "x01")
    assert a1.image_of_variable("x10") == (1, "x11")
    assert a1.image_of_variable("x20") == (1, "x20")
    # y index complemented in positions 0 and 1
    assert a1.image_of_variable("y0011") == (1, "y1111")
    b2 = SignedAction(parse_word("b2"), QQ)
    assert b2.image_of_variable("x20") == (-1, "x20")
    assert b2.image_of_variable("x00") == (1, "x00")
    assert b2.image_of_variable("y0000") == (-1, "y0000")


def test_relations_and_census():
    assert table1_relations_report().passed
    assert subgroup_census_report().passed
    assert len(group_G()) == 8
    assert len(group_H()) == 32
    t1 = theta_class(1)
    assert parse_word("b1*b2") in t1
    assert parse_word("a1*a3") in t1
    assert len(set(t1) | set(theta_class(2)) | set(theta_class(3))) == 24


def test_fixed_locus_display():
    g = SignedAction(parse_word("a1*b2"), QQ)
    loc = fixed_locus(g, "(+,+)")
    strs = {str(c) for c in loc.x_constraints}
    assert "1*x20" in strs and "1*x21" in strs
    assert len(loc.x_constraints) == 4
    assert len(loc.y_constraints) == 4
    zero_sector = fixed_locus(g, "(0,-)")
    assert len(zero_sector.x_constraints) == 8
    with pytest.raises(ValueError):
        fixed_locus(g, "(+,-)")


def test_fixed_loci_report():
    assert fixed_loci_report().passed


def test_regular_representation():
    rep = check_regular_representation()
    assert rep.passed
    g = SignedAction(parse_word("a1*b2"), QQ)
    assert g.trace_on_x_span() == 0
    assert SignedAction(parse_word("1"), QQ).trace_on_x_span() == 8


def test_q_invariance():
    assert q_invariance_report(13, draws=5, seed=0).passed


def test_j_stability():
    assert j_generator_stability_report().passed


def test_delta_set_aliasing():
    r13 = delta_set_report(13, seed=0, draws=4)
    assert r13.passed
    assert r13.witness["delta_multiples_of_eps"] == [-8, -5, 5, 8]
    r17 = delta_set_report(17, seed=0, draws=4)
    assert r17.passed
    assert r17.witness["delta_multiples_of_eps"] == [-8, 8]


def test_stabilizer_identity_fixes_everything():
    from upv.cover import canonical_weighted
    p = 13
    pts = [canonical_weighted([1] + [0] * 15, p),
           canonical_weighted([0] * 8 + [1] + [0] * 7, p)]

    def canon(vals):
        return canonical_weighted([int(v) for v in vals], p)

    fixed = stabilizer_classification(pts, [parse_word("1")], canon)
    assert fixed[parse_word("1")] == pts
