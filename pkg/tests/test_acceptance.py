"""Acceptance gate: ten criteria, exact arithmetic, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import random
from itertools import combinations

import pytest

from mfkit.families import (gen_p2qr, gen_x2h, gen_xn_yg, gen_xy_zn, h_poly, spectrum_p2qr,
                            spectrum_x2h, spectrum_xn_yg, spectrum_xy_zn)
from mfkit.ideal import groebner, normal_form
from mfkit.matrix import Matrix
from mfkit.mf import knoerrer_sheet, mf_cokernel, mf_syzygy, mf_verify, sheet_special_fiber
from mfkit.modules import (ModulePresentation, base_change, classify_punctured_locus,
                           complex_check, cyclic_mcm_enumerate, direct_sum, fitting_gb,
                           fitting_ideal, is_free, localize_at, minimalize, relation_ideal,
                           same_profile)
from mfkit.poly import DEFAULT_PRIME, PolyRing
from mfkit.rings import annihilator, is_self_annihilating, make_quotient, polynomial_ring

MAX_I = 8
RESULTS = {}


def members():
    """Every family member named by the criteria, with its declared spectrum."""
    for i in range(1, MAX_I + 1):
        yield f"p2qr.i{i}", gen_p2qr(i), spectrum_p2qr
        yield f"x2h.i{i}", gen_x2h(i), spectrum_x2h
        yield f"xy-zn.n{i}", gen_xy_zn(i), spectrum_xy_zn
        for n in (4, 5):
            yield f"xn-yg.n{n}.i{i}", gen_xn_yg(i, n), spectrum_xn_yg


def gens(ring, *names):
    return [ring.poly_ring.gen(v) for v in names]


def cyc(g, R):
    return ModulePresentation.cyclic(g, R)


def pres(R, rows):
    return ModulePresentation([[R.lift(R.poly_ring(a)) for a in r] for r in rows], R)


# --------------------------------------------------------------------------

def crit_factorization_identities():
    bad = [name for name, mf, _ in members() if not mf_verify(mf).ok]
    return not bad, bad


def crit_sheet_identity():
    bad = []
    for name, mf, _ in members():
        pr = mf.ring.poly_ring
        a = pr.gen("a") if "a" in pr else PolyRing(("a",)).gen("a")
        for g in (pr.one(), a):
            sheet = knoerrer_sheet(mf, g)
            want_f = mf.f.lift(sheet.ring.poly_ring) + sheet.ring.poly_ring.gen("w") ** 2 * \
                g.lift(sheet.ring.poly_ring)
            fiber, split = sheet_special_fiber(sheet, mf)
            if sheet.f != want_f or not mf_verify(sheet).ok or not same_profile(fiber, split)[0]:
                bad.append(f"{name} g={g}")
    return not bad, bad


def crit_fitting_distinctness():
    bad = []
    fitt = {}
    for i in range(1, MAX_I + 1):
        M = mf_cokernel(gen_p2qr(i))
        p, r = gens(M.ring, "p", "r")
        if not M.ring.ideal_equal(fitting_ideal(M, 2), [p, r ** i]):
            bad.append(f"p2qr.i{i}")
        fitt[i] = fitting_gb(M, 2)
        X = mf_cokernel(gen_x2h(i))
        x, y = gens(X.ring, "x", "y")
        if not X.ring.ideal_equal(fitting_ideal(X, 2), [x, y ** i]):
            bad.append(f"x2h.i{i}")
        Z = mf_cokernel(gen_xy_zn(i))
        x, y, a, b = gens(Z.ring, "x", "y", "a", "b")
        if not Z.ring.ideal_equal(fitting_ideal(Z, 1), [x, y, a ** i * b]):
            bad.append(f"xy-zn.n{i}")
        fitt[("z", i)] = fitting_gb(Z, 1)
        for n in (4, 5):
            W = mf_cokernel(gen_xn_yg(i, n))
            x, y, z = gens(W.ring, "x", "y", "z")
            if not W.ring.ideal_equal(fitting_ideal(W, 3), [x * x, x * z ** i, y]):
                bad.append(f"xn-yg.n{n}.i{i}")
    for i, j in combinations(range(1, MAX_I + 1), 2):
        if fitt[i] == fitt[j]:
            bad.append(f"p2qr {i}={j}")
        if fitt[("z", i)] == fitt[("z", j)]:
            bad.append(f"xy-zn {i}={j}")
    return not bad, bad


def crit_localization_shapes():
    bad = []
    for i in range(1, MAX_I + 1):
        for mf, spec, var in ((gen_p2qr(i), spectrum_p2qr, "p"), (gen_x2h(i), spectrum_x2h, "x")):
            M = mf_cokernel(mf)
            mp = minimalize(localize_at(M, spec(mf).prime("p")))
            if mp.shape != (2, 1) or not mp.ring.ideal_equal(relation_ideal(mp),
                                                              gens(mp.ring, var)):
                bad.append(f"{var}-family i{i} at p: {mp.shape}")
        mf = gen_p2qr(i)
        M = mf_cokernel(mf)
        for name in ("q", "r"):
            if not is_free(localize_at(M, spectrum_p2qr(mf).prime(name))).free:
                bad.append(f"p2qr.i{i} at {name}")
    return not bad, bad


def crit_cm_plus():
    bad = []
    for name, mf, spectrum in members():
        spec = spectrum(mf)
        v1 = classify_punctured_locus(mf_cokernel(mf), spec).verdict
        v2 = classify_punctured_locus(mf_cokernel(mf_syzygy(mf)), spec).verdict
        if not v1 == v2 == "CM_plus":
            bad.append(f"{name}: {v1}/{v2}")
    return not bad, bad


def crit_cyclic_enumerations():
    S = polynomial_ring(("p", "q", "r"))
    p, q, r = gens(S, "p", "q", "r")
    mods = cyclic_mcm_enumerate([(p, 2), (q, 1), (r, 1)], spectrum_p2qr(gen_p2qr(1)), S)
    got1 = {str(c.divisor) for c in mods if c.verdict == "CM_plus"}
    H = polynomial_ring(("x", "y", "s", "t", "u"))
    x, h = H.poly_ring.gen("x"), h_poly(H)
    mods = cyclic_mcm_enumerate([(x, 2), (h, 1)], spectrum_x2h(gen_x2h(1)), H)
    got2 = {c.divisor for c in mods if c.verdict == "CM_plus"}
    ok = got1 == {"p", "p*q", "p*r", "p*q*r"} and got2 == {x, x * h}
    return ok, [sorted(got1), sorted(map(str, got2))]


def crit_quotient_profiles():
    bad = []
    for n in range(1, MAX_I + 1):
        mf = gen_p2qr(n)
        M, N = mf_cokernel(mf), mf_cokernel(mf_syzygy(mf))
        R = M.ring
        p, q, r = gens(R, "p", "q", "r")
        Rr, Rq = make_quotient(R, [r]), make_quotient(R, [q])
        want = {
            "M/rM": (M, Rr, direct_sum(cyc(p, Rr), cyc(p, Rr), ModulePresentation.free(1, Rr))),
            "M/qM": (M, Rq, direct_sum(ModulePresentation.free(1, Rq),
                                       pres(Rq, [[p, r ** n], [0, p]]))),
            "N/qN": (N, Rq, direct_sum(cyc(p, Rq), ModulePresentation.free(2, Rq))),
        }
        for label, (X, T, W) in want.items():
            if not same_profile(base_change(X, T), W)[0]:
                bad.append(f"{label} n{n}")
        # with r a free variable, r^n is not in (p, q)
        if normal_form(r ** n, groebner([p, q])).terms == {}:
            bad.append(f"r^n in (p,q) n{n}")
        # variable model r = p + q: r^n lies in (p, q) and M/qM simplifies
        S2 = polynomial_ring(("p", "q"))
        mf2 = gen_p2qr(n, r="p + q", ring=S2)
        M2 = mf_cokernel(mf2)
        p2, q2 = gens(M2.ring, "p", "q")
        if normal_form((p2 + q2) ** n, groebner([p2, q2])).terms:
            bad.append(f"(p+q)^n not in (p,q) n{n}")
        R2q = make_quotient(M2.ring, [q2])
        simple = direct_sum(ModulePresentation.free(1, R2q), cyc(p2, R2q), cyc(p2, R2q))
        if not (mf_verify(mf2).ok and same_profile(base_change(M2, R2q), simple)[0]):
            bad.append(f"r=p+q branch n{n}")
    return not bad, bad


def crit_annihilators():
    T0 = polynomial_ring(("u", "v", "z"))
    u, v, z = gens(T0, "u", "v", "z")
    T = make_quotient(T0, [u * z - (u * u + v ** 3), z * z])
    X = polynomial_ring(("x", "y", "z"))
    x, y, zz = gens(X, "x", "y", "z")
    R6 = make_quotient(X, [x * y * zz])
    S2 = polynomial_ring(("x", "y"))
    x2 = S2.poly_ring.gen("x")
    res = {"T": T.ideal_equal(annihilator(z, T), [z]),
           "xyz": R6.ideal_equal(annihilator(x * y, R6), [zz]),
           "x^2": is_self_annihilating(x2, make_quotient(S2, [x2 * x2]))}
    return all(res.values()), res


def crit_resolution_complexes():
    S = polynomial_ring(("p", "q", "r"))
    pr = S.poly_ring
    p, q, r = pr.gens()
    Tpq = make_quotient(S, [p * q])
    bad = []
    for i in range(1, MAX_I + 1):
        seq = [Matrix(pr, [[p, r ** i], [0, p]]), Matrix(pr, [[q], [0]]), Matrix(pr, [[p]]),
               Matrix(pr, [[q]]), Matrix(pr, [[p]]), Matrix(pr, [[q]])]
        if not complex_check(seq, Tpq):
            bad.append(f"S/(pq) i{i}")
        for mf in (gen_p2qr(i), gen_x2h(i)):
            R = make_quotient(mf.ring, [mf.f])
            if not complex_check([mf.A, mf.B, mf.A, mf.B], R):
                bad.append(f"periodic {mf.f} i{i}")
    return not bad, bad


def random_ideal(rnd, ring):
    polys = []
    for _ in range(rnd.randint(1, 3)):
        terms = {}
        for _ in range(rnd.randint(1, 3)):
            exp = tuple(rnd.randint(0, 2) for _ in range(ring.nvars))
            terms[exp] = rnd.choice([-3, -2, -1, 1, 2, 3])
        polys.append(ring.from_terms(terms))
    return [g for g in polys if g.terms] or [ring.gen(ring.names[0])]


def crit_property_suites():
    bad = []
    rnd = random.Random(20240601)
    rings = (PolyRing(("x", "y", "z")), PolyRing(("x", "y", "z"), DEFAULT_PRIME))
    for k in range(200):
        ring = rings[k % 2]
        I = random_ideal(rnd, ring)
        gb = groebner(I)
        h = random_ideal(rnd, ring)
        combo = h[0] * I[0] + h[-1] * I[-1]
        nf = normal_form(h[0], gb)
        if (groebner(list(gb.generators)) != gb or not gb.contains(combo)
                or normal_form(nf, gb) != nf or not gb.contains(h[0] - nf)
                or not all(gb.contains(g) for g in I)):
            bad.append(f"ideal {k}")
    for name, mf, spectrum in members():
        if mf_syzygy(mf_syzygy(mf)) != mf:
            bad.append(f"involution {name}")
        spec = spectrum(mf)
        for M in (mf_cokernel(mf), mf_cokernel(mf_syzygy(mf))):
            for pd in spec.primes:
                L = localize_at(M, pd)
                mp = minimalize(L)
                Q = base_change(L, mp.ring)
                if any(fitting_gb(Q, t) != fitting_gb(mp, t) for t in range(L.ngens + 1)):
                    bad.append(f"fitting {name} at {pd.name}")
                v = is_free(L)
                fit = [fitting_gb(Q, t) for t in range(L.ngens + 1)]
                crit = [t for t in range(L.ngens + 1)
                        if fit[t].is_unit and (t == 0 or fit[t - 1] == mp.ring.gb)]
                if v.free != bool(crit) or (v.free and crit[0] != v.rank):
                    bad.append(f"free/fitting {name} at {pd.name}")
    return not bad, bad


CRITERIA = [
    ("factorization identities", crit_factorization_identities),
    ("sheet identity and special fiber", crit_sheet_identity),
    ("fitting ideals and distinctness", crit_fitting_distinctness),
    ("localization shapes", crit_localization_shapes),
    ("CM_plus classification", crit_cm_plus),
    ("cyclic enumerations", crit_cyclic_enumerations),
    ("quotient profiles", crit_quotient_profiles),
    ("annihilator identities", crit_annihilators),
    ("resolution complexes", crit_resolution_complexes),
    ("property suites", crit_property_suites),
]


def line(k, name, ok, detail):
    text = f"criterion {k:2d} {name}: {'PASS' if ok else 'FAIL'}"
    return text if ok else f"{text} {detail}"


@pytest.mark.parametrize("k", range(1, len(CRITERIA) + 1))
def test_criterion(k):
    name, fn = CRITERIA[k - 1]
    try:
        ok, detail = fn()
    except Exception as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    RESULTS[k] = line(k, name, ok, detail)
    print(RESULTS[k])
    assert ok, detail


if __name__ == "__main__":
    for k, (name, fn) in enumerate(CRITERIA, 1):
        print(line(k, name, *fn()), flush=True)
