import random

import numpy as np
import pytest

from upv.ambient import AMBIENT_XY
from upv.linalg import det_field, det_poly, rank, rank_mod_p, rank_naive
from upv.poly import Poly, PolyError
from upv.scalars import GF, QQ
from upv.unproj import plane_equations


def test_identity_rank():
    f = GF(13)
    m = [[f.one() if i == j else f.zero() for j in range(2)] for i in range(2)]
    assert rank(m, f) == 2


def test_plane_union_rank_eight():
    # the union of the coordinate equations of two antipodal linear spaces
    f = GF(13)
    cols = plane_equations((0, 0, 0, 0)) + plane_equations((1, 1, 1, 1))
    rows = []
    for c in cols:
        row = [f.zero()] * 8
        row[c] = f.one()
        rows.append(row)
    assert rank(rows, f) == 8


def test_small_rank_mod_13():
    # determinant 3 != 0 mod 13
    assert rank_mod_p(np.array([[2, 1], [1, 2]]), 13) == 2
    assert rank_mod_p(np.array([[2, 1], [4, 2]]), 13) == 1


def test_rank_oracle_agreement_seeded():
    # the numpy path agrees with the naive reduction on random
    # 6x6 matrices over GF(13)
    f = GF(13)
    rng = random.Random(7)
    for _ in range(60):
        m = [[rng.randrange(13) for _ in range(6)] for _ in range(6)]
        assert rank(m, f) == rank_naive(m, f)


def test_rank_rational():
    m = [[QQ.from_int(1), QQ.from_int(2)], [QQ.from_int(2), QQ.from_int(4)]]
    assert rank(m, QQ) == 1


def test_det_field():
    f = GF(13)
    m = [[f.from_int(2), f.from_int(1)], [f.from_int(1), f.from_int(2)]]
    assert det_field(m, f) == f.from_int(3)


def test_det_poly_trivial_cases():
    x00 = Poly.variable(AMBIENT_XY, QQ, "x00")
    x01 = Poly.variable(AMBIENT_XY, QQ, "x01")
    zero = Poly.zero(AMBIENT_XY, QQ)
    assert det_poly([[x00]]) == x00
    assert det_poly([[x00, zero], [zero, x01]]) == x00 * x01
    assert det_poly([[x00, x01], [x00, x01]]).is_zero()
    with pytest.raises(PolyError):
        det_poly([[x00, x01]])


def test_det_poly_matches_field_det_after_evaluation():
    rng = random.Random(3)
    f = GF(13)
    names = ["x00", "x01", "x10", "x11"]
    for _ in range(10):
        mat = [[Poly.variable(AMBIENT_XY, f, rng.choice(names))
                * f.from_int(rng.randrange(1, 13)) for _ in range(3)]
               for _ in range(3)]
        vals = [f.from_int(rng.randrange(13)) for _ in range(16)]
        lhs = det_poly(mat).evaluate(vals)
        rhs = det_field([[e.evaluate(vals) for e in row] for row in mat], f)
        assert lhs == rhs
