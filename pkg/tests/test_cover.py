import pytest

from upv.ambient import AMBIENT_T4, AMBIENT_XY
from upv.cover import (CHARTS, ProjAut, SurfacePointSet, all_p1_points,
                       brute_force_count, build_lifts_and_certify, build_z2,
                       canonical_weighted, certify_free_and_smooth,
                       enumerate_surface, expand_point, gtilde_generators,
                       normalize_factors, sigma_deck_report, sigma_map,
                       s_involution_map, table2_generators,
                       tabulated_generator_rows, verify_branch_structure,
                       verify_hplane_decomposition, y_point_count_report,
                       z1_display, z1_poly, z2_display)
from upv.poly import Poly
from upv.scalars import GF, QI, QQ
from upv.unproj import FamilyParams


def test_sigma_images():
    sig = sigma_map(QQ)
    y0000 = Poly.variable(AMBIENT_XY, QQ, "y0000")
    img = sig.apply(y0000)
    (e, c), = img.terms.items()
    names = [AMBIENT_T4.variables[k] for k, v in enumerate(e) if v]
    assert sorted(names) == ["t01", "t11", "t21", "t31"]
    assert all(v in (0, 2) for v in e)


def test_z1_matches_display():
    assert z1_poly(QQ) == z1_display(QQ)
    x0sum = Poly.variable(AMBIENT_XY, QQ, "x00") + Poly.variable(AMBIENT_XY, QQ, "x01")
    assert sigma_map(QQ).apply(x0sum) == z1_display(QQ)


def test_deck_involution():
    rep = sigma_deck_report()
    assert rep.passed and rep.witness["lambda"] == "-1"
    s = s_involution_map(QQ)
    z1 = z1_poly(QQ)
    assert s.apply(z1) == -z1  # multidegree (1,1,1,1), one sign per factor


def test_table2_products_match_tabulated_rows():
    gens = gtilde_generators(QI)
    rows = tabulated_generator_rows(QI)
    for name in gens:
        assert gens[name] == rows[name]


def test_group_certification():
    group, rep = build_lifts_and_certify()
    assert rep.passed
    assert group.order == 16
    assert group.order_histogram() == {1: 1, 2: 3, 4: 12}
    assert not group.is_abelian()
    s = table2_generators(QI)["s"]
    a1b2 = gtilde_generators(QI)["a1~b2~"]
    assert a1b2.mul(a1b2) == s
    squares = {g.mul(g) for g in group.elements if g.order() == 4}
    assert squares == {s}


def test_projaut_normalization_and_inverse():
    s = table2_generators(QI)["s"]
    assert s.mul(s) == ProjAut.identity(QI)
    g = gtilde_generators(QI)["a2~b3~"]
    assert g.mul(g.inverse()) == ProjAut.identity(QI)


def test_z2_exact_display_and_invariance():
    f = GF(13)
    nu = FamilyParams(f, (1, 0, 0, 0, 0))
    z2, rep = build_z2(nu)
    assert rep.passed
    # the nu0-term: t00^2 prod t_j1^2 + t01^2 prod t_j0^2
    assert len(z2.terms) == 2
    assert z2 == z2_display(nu)
    assert z2.multidegrees() == {(2, 2, 2, 2)}
    nu = FamilyParams(f, (3, 1, 4, 1, 5))
    z2, rep = build_z2(nu)
    assert rep.passed and len(z2.terms) == 16


def test_enumeration_matches_brute_force():
    f = GF(13)
    nu = FamilyParams(f, (3, 1, 4, 1, 5))
    pts = enumerate_surface(13, nu)
    assert pts.count == brute_force_count(13, nu)
    assert pts.count % 2 == 0
    # determinism
    again = enumerate_surface(13, nu, threads=2)
    assert again.points == pts.points


def test_point_set_dump_roundtrip():
    f = GF(13)
    nu = FamilyParams(f, (3, 1, 4, 1, 5))
    pts = enumerate_surface(13, nu)
    lines = pts.dump_lines()
    assert lines[0].split()[0] == "13"
    assert lines[0].split()[-1] == str(pts.count)
    back = SurfacePointSet.load_lines(lines)
    assert back.points == pts.points and back.p == 13


def test_points_satisfy_equations_on_reload():
    f = GF(13)
    nu = FamilyParams(f, (3, 1, 4, 1, 5))
    pts = enumerate_surface(13, nu)
    z1 = z1_poly(f)
    from upv.unproj import q_section
    z2 = sigma_map(f).apply(q_section(nu)) * f.from_int(2)
    for pt in pts.points[:50]:
        coords = [f.from_int(c) for pair in expand_point(pt) for c in pair]
        assert not z1.evaluate(coords) and not z2.evaluate(coords)


def test_free_and_smooth_good_nu():
    group, _ = build_lifts_and_certify()
    f = GF(13)
    nu = FamilyParams(f, (1, 1, 1, 1, 3))
    assert not nu.degenerate()[0]
    rep = certify_free_and_smooth(enumerate_surface(13, nu), group)
    assert rep.passed
    assert rep.witness["points"] == 432


def test_nu4_zero_fails_smoothness():
    # the family member with vanishing last parameter passes through the
    # coordinate points and must be caught by the rank test
    group, _ = build_lifts_and_certify()
    f = GF(13)
    nu = FamilyParams(f, (3, 1, 4, 1, 0))
    rep = certify_free_and_smooth(enumerate_surface(13, nu), group)
    assert not rep.passed
    assert rep.witness["nu4_zero"] is True


def test_branch_structure():
    assert verify_branch_structure(13).passed


def test_downstairs_image_count():
    rep = y_point_count_report(13)
    assert rep.passed
    assert rep.witness["image_points"] == ((13 + 1) ** 4 - 16) // 2 + 16 == 19216


def test_hplane_decomposition():
    assert verify_hplane_decomposition(13).passed


def test_canonical_weighted_square_classes():
    p = 13
    # weight-2-only tuples are normalized inside their square class
    a = canonical_weighted([0] * 8 + [4] + [0] * 7, p)   # 4 is a square
    b = canonical_weighted([0] * 8 + [9] + [0] * 7, p)
    assert a == b
    n = canonical_weighted([0] * 8 + [2] + [0] * 7, p)   # 2 is not a square
    assert n != a
    with pytest.raises(ValueError):
        canonical_weighted([0] * 16, p)


def test_chart_bookkeeping():
    assert len(CHARTS) == 16
    assert len(list(all_p1_points(5))) == 6 ** 4
    pt = normalize_factors([(2, 6), (0, 3), (1, 0), (5, 5)], 13)
    assert pt[0] == (0, 1, 0, 0)
    assert expand_point(pt)[1] == (0, 1)


def test_orbit_closure():
    group, _ = build_lifts_and_certify()
    p, f = 13, GF(13)
    nu = FamilyParams(f, (3, 1, 4, 1, 5))
    pts = enumerate_surface(p, nu)
    point_set = set(pts.points)
    for g in group.elements[:6]:
        gp = g.map_entries(f)
        for pt in pts.points[:40]:
            assert gp.act_point(pt, p) in point_set


def test_chunked_grid_specialization_agrees():
    import numpy as np
    from upv.cover import _chart_terms, _eval_chart, _specialize_first
    f = GF(13)
    z1 = z1_poly(f)
    terms = _chart_terms(z1, (0, 0, 0, 0), 13)
    full = _eval_chart(terms, 4, 13)
    for v in (0, 5, 12):
        sub = _eval_chart(_specialize_first(terms, v, 13), 3, 13)
        assert np.array_equal(full[v], sub)


def test_point_file_count_mismatch_rejected():
    f = GF(13)
    nu = FamilyParams(f, (1, 1, 1, 1, 3))
    lines = enumerate_surface(13, nu).dump_lines()
    head = lines[0].split()
    head[-1] = str(int(head[-1]) + 1)
    with pytest.raises(ValueError):
        SurfacePointSet.load_lines([" ".join(head)] + lines[1:])
