import random

import pytest

from upv.ambient import AMBIENT_XY
from upv.cover import sigma_map
from upv.poly import Poly
from upv.scalars import GF, QQ
from upv.unproj import (FamilyParams,
                        UnprojectionDatum, build_ideal, build_t_ideal,
                        build_unprojection_ideal, build_x_ideal,
                        elimination_cubic_report,
                        phi_consistency_report, q_section, quartic_generator,
                        reduce_by_rewriting, s_form, verify_jacobian_minor,
                        verify_plane_incidences, verify_veronese_chart,
                        xvar, y_eigenvector, yvar)


def test_x_ideal():
    x = build_x_ideal()
    assert [n for n, _, _ in x.generators] == ["q0", "q1", "q2"]
    assert all(g.weighted_degree() == 2 for g in x.polys())
    assert x.polys()[0] == xvar(QQ, 0, 0) * xvar(QQ, 0, 1) - xvar(QQ, 1, 0) * xvar(QQ, 1, 1)


def test_x_generators_die_under_sigma():
    sig = sigma_map(QQ)
    for g in build_x_ideal().polys():
        assert sig.apply(g).is_zero()


def test_x_generators_invariant_under_all_table1_words():
    from upv.grouprep import SignedAction, build_table1_action
    for gen in build_table1_action():
        for g in build_x_ideal().polys():
            assert gen.apply(g) == g


def test_census_63():
    j = build_unprojection_ideal()
    assert j.counts() == {"quadric": 3, "cubic": 32, "quartic": 28}
    assert all(g.is_homogeneous() for g in j.polys())


def test_quartic_example():
    # the pair (0,0,0,0), (0,0,1,1) gives the two-squares quartic
    g = quartic_generator(QQ, (0, 0, 0, 0), (0, 0, 1, 1))
    expected = yvar(QQ, (0, 0, 0, 0)) * yvar(QQ, (0, 0, 1, 1)) \
        - (xvar(QQ, 0, 1) * xvar(QQ, 1, 1)) ** 2
    assert g == expected


def test_all_63_generators_die_under_sigma():
    sig = sigma_map(QQ)
    for name, g, _ in build_unprojection_ideal().generators:
        assert sig.apply(g).is_zero(), name


def test_phi_representation_consistency():
    assert phi_consistency_report().passed
    datum = UnprojectionDatum((0, 0, 0, 0))
    reps = datum.representations()
    assert [d for _, d in reps] == ["x00", "x10", "x20", "x30"]


def test_t_ideal_census_and_section():
    f = GF(13)
    nu = FamilyParams(f, (1, 2, 3, 4, 5))
    t = build_t_ideal(nu)
    assert len(t.generators) == 65
    assert t.counts()["hyperplane"] == 1
    assert t.counts()["quadric-section"] == 1
    # section at the two basis parameters
    assert q_section(FamilyParams(QQ, (0, 0, 0, 0, 1))) == y_eigenvector(QQ)
    assert q_section(FamilyParams(QQ, (1, 0, 0, 0, 0))) == s_form(QQ, 0)
    with pytest.raises(ValueError):
        build_ideal("T")
    with pytest.raises(ValueError):
        FamilyParams(f, (0, 0, 0, 0, 0))


def test_degenerate_predicate():
    f = GF(13)
    assert FamilyParams(f, (1, 0, 3, 4, 5)).degenerate()[0]
    # (nu0-nu1-nu2-nu3)^2 + 64 nu4^2 = 0 over GF(13) at this tuple
    deg, reason = FamilyParams(f, (1, 2, 3, 4, 5)).degenerate()
    assert deg and "delta" in reason
    assert not FamilyParams(f, (1, 2, 3, 4, 6)).degenerate()[0]


def test_plane_incidences():
    rep = verify_plane_incidences()
    assert rep.passed
    assert rep.witness["line_count"] == 24
    assert rep.witness["empty_count"] == 4


def test_rewriting_examples():
    f = GF(13)
    x = lambda i, a: xvar(f, i, a)
    assert reduce_by_rewriting(x(1, 0) * x(1, 1)) == -x(0, 0) ** 2
    assert reduce_by_rewriting(x(2, 0) ** 3) == x(2, 0) ** 3
    assert reduce_by_rewriting(x(0, 1)) == -x(0, 0)
    # a cubic relation itself reduces to zero
    g = yvar(f, (0, 0, 1, 1)) * x(0, 0) - x(1, 1) * x(2, 0) * x(3, 0)
    assert reduce_by_rewriting(g).is_zero()


def test_rewriting_idempotent_seeded_1000():
    # pinned sample count: 1000 random monomials
    field = GF(13)
    rng = random.Random(1)
    for _ in range(1000):
        e = [0] * 16
        for _ in range(rng.randrange(0, 5)):
            e[rng.randrange(16)] += 1
        f = Poly.monomial(AMBIENT_XY, field, e, rng.randrange(1, 13))
        once = reduce_by_rewriting(f)
        assert reduce_by_rewriting(once) == once


def test_elimination_cubic_sign_convention():
    f = GF(17)
    nu = FamilyParams(f, (2, 3, 5, 7, 11))
    rep = elimination_cubic_report(nu)
    assert rep.passed
    assert rep.witness["convention"] == "x00*l + nu4*prod"


def test_jacobian_minor_all_eight():
    rep = verify_jacobian_minor()
    assert rep.passed
    assert set(rep.witness["signs"].values()) == {"+"}
    assert rep.witness["determinant_degree"] == 22


def test_veronese_chart():
    rep = verify_veronese_chart()
    assert rep.passed
    assert rep.witness["minors_checked"] == 21


def test_dump_format():
    lines = build_x_ideal().dump_lines()
    assert len(lines) == 3
    name, prov, poly = lines[0].split("\t")
    assert name == "q0" and prov == "quadric"
    assert "x00" in poly


def test_quartic_witnesses_deterministic():
    from upv.unproj import quartic_witnesses
    assert quartic_witnesses((0, 0, 0, 0), (1, 1, 1, 1)) == (0, 1)
    assert quartic_witnesses((0, 0, 0, 0), (0, 0, 1, 1)) == (2, 3)


def test_quartic_witness_equivalence():
    from upv.unproj import (quadric_normal_form, quartic_generator_with_witnesses,
                            quartic_witness_report)
    rep = quartic_witness_report()
    assert rep.passed
    assert rep.witness["single_witness_quartics"] == 24
    assert rep.witness["antipodal_witness_forms"] == 24  # 4 pairs x 6 sets
    # the antipodal pair: two witness monomials, equal mod the quadrics only
    a, b = (0, 0, 0, 0), (1, 1, 1, 1)
    g01 = quartic_generator_with_witnesses(QQ, a, b, 0, 1)
    g23 = quartic_generator_with_witnesses(QQ, a, b, 2, 3)
    assert g01 != g23
    assert quadric_normal_form(g01 - g23).is_zero()
