import json

import pytest
from hypothesis import given, settings, strategies as st

from mfkit.families import gen_p2qr, gen_x2h, gen_xn_yg, spectrum_p2qr, spectrum_x2h, spectrum_xn_yg
from mfkit.ideal import minors_ideal
from mfkit.matrix import Matrix
from mfkit.mf import mf_cokernel
from mfkit.modules import (ModulePresentation, PrimeDecl, SpectrumDeclaration, base_change,
                           classify_punctured_locus, complex_check, cyclic_mcm_enumerate,
                           direct_sum, distinguish, fitting_gb, fitting_ideal, has_free_summand,
                           is_free, localize_at, minimal_generators, minimalize, relation_ideal,
                           ring_quotient, same_profile)
from mfkit.rings import IncompatibleRingError, localize, make_quotient, polynomial_ring

from oracles import sympy_minors

S = polynomial_ring(("p", "q", "r"))
p, q, r = S.poly_ring.gens()
R = make_quotient(S, [p * p * q * r])
SPEC = spectrum_p2qr(gen_p2qr(1))


def cyc(g, ring=R):
    return ModulePresentation.cyclic(g, ring)


def test_minimalize_unit_and_zero():
    assert minimalize(ModulePresentation([[1]], R)).shape == (0, 0)
    assert minimalize(ModulePresentation([[p * p * q * r]], R)).shape == (1, 0)
    P = ModulePresentation([[1 + p, q], [r, p]], R)
    mp = minimalize(P)
    assert mp.shape == (1, 1)
    # pivoting on 1 + p localizes further; Fitt_0 is the determinant there
    assert mp.ring.ideal_equal(relation_ideal(mp), fitting_ideal(base_change(P, mp.ring), 0))


def test_minimalize_local_shapes():
    for i in (1, 4):
        M = mf_cokernel(gen_p2qr(i))
        mp = minimalize(localize_at(M, SPEC.prime("p")))
        assert mp.shape == (2, 1)
        assert mp.ring.ideal_equal(relation_ideal(mp), [p])
        mf = gen_x2h(i)
        mp = minimalize(localize_at(mf_cokernel(mf), spectrum_x2h(mf).prime("p")))
        assert mp.shape == (2, 1)
        assert mp.ring.ideal_equal(relation_ideal(mp), [mf.ring.poly_ring.gen("x")])


def test_fitting_examples():
    for i in (1, 5):
        M = mf_cokernel(gen_p2qr(i))
        assert R.ideal_equal(fitting_ideal(M, 2), [p, r ** i])
    mf = gen_x2h(3)
    M = mf_cokernel(mf)
    x, y = mf.ring.poly_ring.gen("x"), mf.ring.poly_ring.gen("y")
    assert M.ring.ideal_equal(fitting_ideal(M, 2), [x, y ** 3])
    assert R.ideal_equal(fitting_ideal(cyc(p * q), 0), [p * q])
    assert fitting_gb(ModulePresentation.free(2, R), 2).is_unit
    assert fitting_gb(ModulePresentation.free(2, R), 1) == R.gb
    with pytest.raises(ValueError):
        fitting_ideal(M, -1)


def test_fitting_against_sympy_minors():
    M = mf_cokernel(gen_p2qr(2))
    rows = M.matrix.rows
    for k in range(4):
        s = 3 - k
        want = sympy_minors(rows, s, S.poly_ring) if s else [S.poly_ring.one()]
        assert R.ideal_equal(fitting_ideal(M, k), want)


def test_base_change():
    M = mf_cokernel(gen_p2qr(2))
    assert base_change(M, M.ring) is M
    with pytest.raises(IncompatibleRingError):
        base_change(M, S)
    with pytest.raises(IncompatibleRingError):
        base_change(M, polynomial_ring(("p", "q")))
    Rr = make_quotient(R, [r])
    want = direct_sum(cyc(p, Rr), cyc(p, Rr), ModulePresentation.free(1, Rr))
    assert same_profile(base_change(M, Rr), want)[0]
    N = ModulePresentation(gen_p2qr(2).B, R)
    Rq = make_quotient(R, [q])
    want = direct_sum(cyc(p, Rq), ModulePresentation.free(2, Rq))
    assert same_profile(base_change(N, Rq), want)[0]


def test_is_free_examples():
    assert is_free(cyc(p * p * q * r)).rank == 1
    M = mf_cokernel(gen_p2qr(3))
    assert not is_free(localize_at(M, SPEC.prime("p"))).free
    v = is_free(localize_at(M, SPEC.prime("q")))
    assert v.free
    assert v.to_json()["rels"] == 0
    # the zero-module corner: R/(p) at q, where p is a unit
    z = is_free(localize_at(cyc(p), SPEC.prime("q")))
    assert z.free and z.rank == 0


def test_has_free_summand():
    Rp = localize(R, [q, r], prime=[p])
    assert has_free_summand(ModulePresentation([[0], [p]], Rp))
    mf = gen_xn_yg(2, 4)
    L = localize_at(mf_cokernel(mf), spectrum_xn_yg(mf).prime("p"))
    assert not has_free_summand(L)
    assert not has_free_summand(ModulePresentation([[1]], R))


def test_classify():
    M = mf_cokernel(gen_p2qr(1))
    c = classify_punctured_locus(M, SPEC)
    assert c.per_prime == {"p": "not_free", "q": "free", "r": "free"}
    assert c.verdict == "CM_plus"
    assert classify_punctured_locus(cyc(p * q), SPEC).verdict == "CM_plus"
    assert classify_punctured_locus(ModulePresentation.free(1, R), SPEC).verdict == "CM0"
    assert c.to_json()["verdict"] == "CM_plus"


def test_distinguish():
    M2, M3 = mf_cokernel(gen_p2qr(2)), mf_cokernel(gen_p2qr(3))
    d = distinguish(M2, M3)
    assert d and d.reason == "Fitt_2"
    assert not distinguish(M2, M2)
    X2, X3 = mf_cokernel(gen_x2h(2)), mf_cokernel(gen_x2h(3))
    assert distinguish(X2, X3).reason == "Fitt_2"
    with pytest.raises(IncompatibleRingError):
        distinguish(M2, X2)


def test_cyclic_enumeration():
    mods = cyclic_mcm_enumerate([(p, 2), (q, 1), (r, 1)], SPEC, S)
    assert len(mods) == 12
    plus = {str(c.divisor) for c in mods if c.verdict == "CM_plus"}
    assert plus == {"p", "p*q", "p*r", "p*q*r"}
    mf = gen_x2h(1)
    pr = mf.ring.poly_ring
    from mfkit.families import h_poly
    h = h_poly(mf.ring)
    mods = cyclic_mcm_enumerate([(pr.gen("x"), 2), (h, 1)], spectrum_x2h(mf), mf.ring)
    plus = {c.exponents for c in mods if c.verdict == "CM_plus"}
    assert plus == {(1, 0), (1, 1)}
    # a regular hypersurface: no CM_plus cyclic
    one = cyclic_mcm_enumerate([(p, 1)], SpectrumDeclaration((PrimeDecl("q", (q,), (r,)),)), S)
    assert [c.verdict for c in one] == ["CM0", "CM0"]
    with pytest.raises(ValueError):
        cyclic_mcm_enumerate([], SPEC)


def test_complex_check():
    Tpq = make_quotient(S, [p * q])
    pr = S.poly_ring
    seq = [Matrix(pr, [[p, r ** 2], [0, p]]), Matrix(pr, [[q], [0]]), Matrix(pr, [[p]]),
           Matrix(pr, [[q]])]
    assert complex_check(seq, Tpq)
    mf = gen_p2qr(2)
    assert complex_check([mf.A, mf.B, mf.A], R)
    assert complex_check([Matrix(pr, [[p, q]])], R)
    assert not complex_check([Matrix(pr, [[1]])], R)
    assert not complex_check([Matrix(pr, [[p]]), Matrix(pr, [[r]])], Tpq)
    with pytest.raises(ValueError):
        complex_check([Matrix(pr, [[p, q]]), Matrix(pr, [[p, q]])], R)


def test_json_and_helpers():
    M = mf_cokernel(gen_p2qr(2))
    back = ModulePresentation.from_json(json.loads(json.dumps(M.to_json())))
    assert back == M
    assert ring_quotient(p * q, p, R) == q
    assert ring_quotient(p, q, R) is None
    assert minimal_generators([p, p * q, r, S.poly_ring.zero()], R) == [p, r]
    spec = SpectrumDeclaration.from_json(SPEC.to_json(), R)
    assert spec == SPEC
    with pytest.raises(KeyError):
        SPEC.prime("m")


# property: minimalization preserves every Fitting ideal

X = polynomial_ring(("x", "y"))
xr, yr = X.poly_ring.gens()
LOCAL = make_quotient(X, [xr * xr])
atoms = st.sampled_from([0, 0, 1, -1, 2, xr, yr, xr * yr, 1 + xr, yr * yr, xr + yr, 1 - yr])
presentations = st.integers(1, 3).flatmap(
    lambda m: st.integers(1, 3).flatmap(
        lambda n: st.lists(st.lists(atoms, min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=40, deadline=None)
@given(presentations)
def test_minimalize_preserves_fitting(rows):
    P = ModulePresentation([[LOCAL.poly_ring(a) for a in r] for r in rows], LOCAL)
    mp = minimalize(P)
    assert not any(a.terms and mp.ring.is_unit(a) for a in mp.matrix.entries())
    Q = base_change(P, mp.ring)
    for k in range(P.ngens + 1):
        assert fitting_gb(Q, k) == fitting_gb(mp, k)


@settings(max_examples=40, deadline=None)
@given(presentations)
def test_is_free_matches_fitting_criterion(rows):
    P = ModulePresentation([[LOCAL.poly_ring(a) for a in r] for r in rows], LOCAL)
    v = is_free(P)
    if v.free:
        ring = v.minimal.ring
        Q = base_change(P, ring)
        assert fitting_gb(Q, v.rank).is_unit
        if v.rank:
            assert all(ring.max_gb.contains(g) for g in fitting_gb(Q, v.rank - 1).generators)
