import json

import pytest
from hypothesis import given, settings, strategies as st

from mfkit.families import gen_p2qr, gen_x2h
from mfkit.matrix import Matrix, block, block_diag
from mfkit.mf import (MatrixFactorization, knoerrer_sheet, mf_cokernel, mf_direct_sum,
                      mf_syzygy, mf_verify, permutation_equivalent, sheet_special_fiber)
from mfkit.modules import fitting_ideal, is_free, same_profile
from mfkit.poly import PolyRing
from mfkit.rings import IncompatibleRingError, polynomial_ring

S = polynomial_ring(("x", "y", "z"))
pr = S.poly_ring
x, y, z = pr.gens()


def one_by_one(f, g=1):
    return MatrixFactorization.from_rows([[f]], [[g]], f * g, S)


def adjugate_mf(a, b, c, d):
    """A and its adjugate factor det(A)."""
    return MatrixFactorization.from_rows([[a, b], [c, d]], [[d, -b], [-c, a]], a * d - b * c, S)


entries = st.dictionaries(st.tuples(*[st.integers(0, 2)] * 3), st.integers(-2, 2).filter(bool),
                          max_size=2).map(pr.from_terms)
factorizations = st.tuples(entries, entries, entries, entries).map(lambda t: adjugate_mf(*t))


def test_matrix_basics():
    m = Matrix.parse(pr, [["x", "1"], ["0", "y"]])
    assert (m @ Matrix.identity(pr, 2)) == m
    assert m.transpose()[0, 1] == 0 and m.transpose()[1, 0] == 1
    assert m.delete(row=0, col=1) == Matrix.parse(pr, [["0"]])
    assert block_diag(m, m).shape == (4, 4)
    assert block([[m, m]]).shape == (2, 4)
    assert Matrix.from_json(pr, m.to_json()) == m
    with pytest.raises(ValueError):
        m @ Matrix.zeros(pr, 3, 1)
    with pytest.raises(ValueError):
        Matrix(pr, [[x], [x, y]])


def test_verify_examples():
    f = x * y
    assert mf_verify(one_by_one(f)).ok
    for i in range(1, 9):
        assert mf_verify(gen_p2qr(i)).ok
    assert mf_verify(gen_x2h(1)).ok
    bad = MatrixFactorization.from_rows([[x, 1], [0, y]], [[y, 0], [0, x]], x * y, S)
    rep = mf_verify(bad)
    assert not rep.ok
    assert rep.to_json()["failing"] == {"product": "AB", "row": 0, "col": 1,
                                        "expected": "0", "got": "x"}


def test_syzygy_examples():
    mf = gen_p2qr(2)
    syz = mf_syzygy(mf)
    assert syz.A == mf.B and syz.B == mf.A
    assert mf_syzygy(syz) == mf
    f = x * y
    s = mf_syzygy(one_by_one(f))
    assert s.A == Matrix(pr, [[1]]) and s.B == Matrix(pr, [[f]])
    # Cok(1) is the zero module: free of rank 0
    v = is_free(mf_cokernel(s))
    assert v.free and v.rank == 0


def test_direct_sum():
    f = x * y
    m1, m2 = one_by_one(f), MatrixFactorization.from_rows([[1]], [[f]], f, S)
    s = mf_direct_sum(m1, m2)
    assert s.size == 2 and mf_verify(s).ok
    assert s.A == Matrix(pr, [[f, 0], [0, 1]])
    empty = MatrixFactorization.empty(f, S)
    assert mf_direct_sum(m1, empty) == m1
    assert mf_verify(empty).ok and empty.size == 0
    with pytest.raises(ValueError):
        mf_direct_sum(m1, one_by_one(x))
    with pytest.raises(ValueError):
        mf_direct_sum()


def test_direct_sum_fitting_multiplies():
    # Fitt_0 of a sum of cyclic modules is the product of the summands' ideals
    P = polynomial_ring(("p", "q", "r"))
    p, q, r = P.poly_ring.gens()
    f = p * p * q * r
    mods = [MatrixFactorization.from_rows([[g]], [[f.divide_exact(g)]], f, P) for g in (p, p * q)]
    s = mf_cokernel(mf_direct_sum(*mods))
    assert s.ring.ideal_equal(fitting_ideal(s, 0), [p * p * q])
    assert s.ring.ideal_equal(fitting_ideal(s, 1), [p])


def test_cokernel():
    f = x * y
    M = mf_cokernel(one_by_one(f))
    assert is_free(M).free and is_free(M).rank == 1
    assert mf_cokernel(gen_p2qr(3)).ngens == 3


def test_sheet_examples():
    f = x * y
    g = pr.gen("z")
    sheet = knoerrer_sheet(one_by_one(f), g, var="w")
    w = sheet.ring.poly_ring.gen("w")
    sp = sheet.ring.poly_ring
    gz = g.lift(sp)
    assert sheet.A == Matrix(sp, [[f.lift(sp), -w], [w * gz, 1]])
    assert sheet.B == Matrix(sp, [[1, w], [-w * gz, f.lift(sp)]])
    assert sheet.f == f.lift(sp) + w * w * gz and mf_verify(sheet).ok
    big = knoerrer_sheet(gen_p2qr(1), PolyRing(("p",)).gen("p") ** 0, var="x")
    assert big.size == 6 and mf_verify(big).ok
    with pytest.raises(IncompatibleRingError):
        knoerrer_sheet(one_by_one(f), g, var="x")


def test_sheet_with_new_symbol():
    mf = gen_x2h(2)
    a = PolyRing(("a",)).gen("a")
    sheet = knoerrer_sheet(mf, a)
    assert "a" in sheet.ring.poly_ring and mf_verify(sheet).ok
    fiber, split = sheet_special_fiber(sheet, mf)
    assert same_profile(fiber, split)[0]


def test_json_roundtrip():
    mf = gen_x2h(3)
    doc = json.loads(json.dumps(mf.to_json()))
    assert MatrixFactorization.from_json(doc) == mf


def test_permutation_equivalent():
    mf = gen_p2qr(2)
    perm = [2, 0, 1]
    moved = MatrixFactorization(mf.A.permute(perm), mf.B.permute(perm), mf.f, mf.ring)
    found = permutation_equivalent(moved, mf)
    assert found is not None
    assert MatrixFactorization(mf.A.permute(found), mf.B.permute(found), mf.f, mf.ring) == moved
    assert permutation_equivalent(mf, gen_p2qr(3)) is None


@settings(max_examples=30, deadline=None)
@given(factorizations)
def test_random_factorizations(mf):
    assert mf_verify(mf).ok
    assert mf_syzygy(mf_syzygy(mf)) == mf
    sheet = knoerrer_sheet(mf, pr.gen("z"))
    assert mf_verify(sheet).ok


@settings(max_examples=15, deadline=None)
@given(factorizations)
def test_sheet_functoriality(m1):
    # the syzygy shares f, so the sum is defined
    m2 = mf_syzygy(m1)
    lhs = knoerrer_sheet(mf_direct_sum(m1, m2), pr.one())
    rhs = mf_direct_sum(knoerrer_sheet(m1, pr.one()), knoerrer_sheet(m2, pr.one()))
    assert permutation_equivalent(lhs, rhs) is not None


@settings(max_examples=10, deadline=None)
@given(factorizations)
def test_special_fiber_profile(mf):
    sheet = knoerrer_sheet(mf, pr.one())
    fiber, split = sheet_special_fiber(sheet, mf)
    assert same_profile(fiber, split)[0]
