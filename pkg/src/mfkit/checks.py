"""The reproduction suite: named checks over every family and ring example.

Each check returns ``(ok, witness)``; the runner wraps it into a
:class:`CheckReport`.  Reports are sorted by ``check_id`` so output is stable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .families import (FAMILIES, gen_a_inf_dim1, gen_p2qr, gen_x2h, gen_xn_yg, gen_xy_zn,
                       h_poly, spectrum_a_inf, spectrum_p2qr, spectrum_x2h, spectrum_xn_yg,
                       spectrum_xy_zn, spectrum_xy_zn_witness, xy_zn_witness)
from .ideal import eliminate
from .matrix import Matrix
from .mf import (MatrixFactorization, knoerrer_sheet, mf_cokernel, mf_syzygy, mf_verify,
                 sheet_special_fiber)
from .modules import (ModulePresentation, base_change, classify_punctured_locus, complex_check,
                      cyclic_mcm_enumerate, direct_sum, distinguish, fitting_gb, fitting_ideal,
                      has_free_summand, is_free, localize_at, minimalize, relation_ideal,
                      same_profile)
from .poly import PolyRing
from .rings import (annihilator, is_self_annihilating, make_quotient, polynomial_ring)

SUITE_GROUPS = ("p2qr", "x2h", "xy-zn", "xn-yg", "a-inf-1d", "rings")


@dataclass
class CheckReport:
    check_id: str
    status: str
    witness: dict
    claim: str = ""
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self, timings: bool = False) -> dict:
        doc = {"check_id": self.check_id, "status": self.status, "witness": self.witness}
        if timings:
            doc["wall_time"] = round(self.wall_time, 6)
        return doc


@dataclass
class SuiteConfig:
    max_i: int = 8
    groups: tuple = SUITE_GROUPS
    modulus: int | None = None
    inject_fault: bool = False
    xn_exponents: tuple = (4, 5)

    def __post_init__(self):
        if self.max_i < 1:
            raise ValueError("max_i must be at least 1")
        unknown = [g for g in self.groups if g not in SUITE_GROUPS]
        if unknown:
            raise ValueError(f"unknown check groups {unknown}; known: {list(SUITE_GROUPS)}")


@dataclass
class _Check:
    check_id: str
    claim: str
    run: Callable[[], tuple]


# --------------------------------------------------------------------------
# helpers

def _faulty(mf: MatrixFactorization) -> MatrixFactorization:
    """Flip the sign of ``A[0,0]``: the test-mode fault."""
    rows = [list(r) for r in mf.A.rows]
    rows[0][0] = -rows[0][0]
    return MatrixFactorization(Matrix(mf.A.ring, rows), mf.B, mf.f, mf.ring)


def _gens(gb_or_list):
    return [str(g) for g in gb_or_list]


def _verify_witness(mf):
    rep = mf_verify(mf)
    return rep.ok, rep.to_json()


def _periodic_resolution_ok(mf):
    R = make_quotient(mf.ring, [mf.f])
    return complex_check([mf.A, mf.B, mf.A, mf.B], R)


def _check_factorization(mf):
    ok, w = _verify_witness(mf)
    inv = mf_syzygy(mf_syzygy(mf)) == mf
    per = _periodic_resolution_ok(mf) if ok else False
    w.update(syzygy_involution=inv, periodic_resolution=per, size=mf.size, f=str(mf.f))
    return ok and inv and per, w


def _with_symbol(mf: MatrixFactorization, name: str):
    pr = mf.ring.poly_ring
    if name in pr:
        return pr.gen(name)
    return PolyRing(pr.names + (name,), pr.modulus).gen(name)


def _check_sheet(mf):
    """Sheet verifies for g = 1 and g = a, and its special fiber matches A + B."""
    pr = mf.ring.poly_ring
    w = {}
    ok = True
    for label, g in (("g=1", pr.one()), ("g=a", _with_symbol(mf, "a"))):
        sheet = knoerrer_sheet(mf, g)
        rep = mf_verify(sheet)
        fiber, split = sheet_special_fiber(sheet, mf)
        same, prof = same_profile(fiber, split)
        w[label] = {"verify": rep.to_json(), "special_fiber_profile": same, **prof,
                    "f": str(sheet.f)}
        ok = ok and rep.ok and same
    return ok, w


def _ideal_check(ring, got, want):
    ok = ring.ideal_equal(got, want)
    return ok, {"got": _gens(got), "expected": _gens(want)}


def _localize_shape(M, prime, want_shape, want_ideal):
    L = localize_at(M, prime)
    mp = minimalize(L)
    rel = relation_ideal(mp)
    ok = mp.shape == want_shape and mp.ring.ideal_equal(rel, [mp.ring.lift(g) for g in want_ideal])
    return ok, {"shape": list(mp.shape), "relation_ideal": [mp.ring.show(g) for g in rel],
                "free_summand": has_free_summand(L)}


def _free_at(M, prime):
    v = is_free(localize_at(M, prime))
    return v.free, v.to_json()


def _classify_pair(mf, spec):
    c1 = classify_punctured_locus(mf_cokernel(mf), spec)
    c2 = classify_punctured_locus(mf_cokernel(mf_syzygy(mf)), spec)
    ok = c1.verdict == "CM_plus" and c2.verdict == c1.verdict
    return ok, {"M": c1.to_json(), "syzygy": c2.to_json()}


def _pairwise_distinct(mods, r):
    """All pairs distinct via ``distinguish`` and ``Fitt_r`` pairwise unequal."""
    bad = []
    for (i, a), (j, b) in combinations(sorted(mods.items()), 2):
        if not distinguish(a, b) or fitting_gb(a, r) == fitting_gb(b, r):
            bad.append([i, j])
    self_ok = all(not distinguish(m, m) for m in mods.values())
    return not bad and self_ok, {"indices": sorted(mods), "fitting_index": r,
                                 "undistinguished_pairs": bad, "self_indistinguishable": self_ok}


# --------------------------------------------------------------------------
# p2qr

def _p2qr_checks(cfg: SuiteConfig):
    mod = cfg.modulus

    def fam(i, **kw):
        mf = gen_p2qr(i, modulus=mod, **kw)
        return _faulty(mf) if cfg.inject_fault else mf

    out = []
    for i in range(1, cfg.max_i + 1):
        def verify(i=i):
            return _check_factorization(fam(i))

        def sheet(i=i):
            return _check_sheet(fam(i))

        def fitting(i=i):
            mf = fam(i)
            M = mf_cokernel(mf)
            R = M.ring
            pr = R.poly_ring
            ok, w = _ideal_check(R, fitting_ideal(M, 2), [pr.gen("p"), pr.gen("r") ** i])
            N = mf_cokernel(mf_syzygy(mf))
            from .ideal import minors_ideal
            linked = all(
                R.ideal_equal(fitting_ideal(N, k),
                              minors_ideal(mf.B.rows, 3 - k, pr) if 3 - k > 0 else [pr.one()])
                for k in range(4))
            w["syzygy_fitting_matches_minors"] = linked
            return ok and linked, w

        def localize(i=i):
            mf = fam(i)
            M = mf_cokernel(mf)
            spec = spectrum_p2qr(mf)
            pr = mf.ring.poly_ring
            ok, w = _localize_shape(M, spec.prime("p"), (2, 1), [pr.gen("p")])
            wit = {"p": w}
            for name in ("q", "r"):
                free, wf = _free_at(M, spec.prime(name))
                wit[name] = wf
                ok = ok and free
            return ok, wit

        def classify(i=i):
            mf = fam(i)
            return _classify_pair(mf, spectrum_p2qr(mf))

        out += [
            _Check(f"lemma23.verify.i{i}", "p2qr factorization identity", verify),
            _Check(f"lemma40.verify.p2qr.i{i}", "sheet factorization and special fiber", sheet),
            _Check(f"lemma23.fitting.i{i}", "Fitt_2 = (p, r^i)", fitting),
            _Check(f"lemma23.localize.i{i}", "local shapes at p, q, r", localize),
            _Check(f"lemma23.classify.i{i}", "CM_plus verdict, syzygy invariant", classify),
        ]

    def distinct():
        mods = {i: mf_cokernel(fam(i)) for i in range(1, cfg.max_i + 1)}
        return _pairwise_distinct(mods, 2)

    def cyclic():
        base = polynomial_ring(("p", "q", "r"), mod)
        pr = base.poly_ring
        p, q, r = pr.gen("p"), pr.gen("q"), pr.gen("r")
        spec = spectrum_p2qr(gen_p2qr(1, modulus=mod))
        mods = cyclic_mcm_enumerate([(p, 2), (q, 1), (r, 1)], spec, base)
        plus = sorted(str(c.divisor) for c in mods if c.verdict == "CM_plus")
        want = sorted(str(g) for g in (p, p * q, p * r, p * q * r))
        return plus == want, {"CM_plus": plus, "expected": want,
                              "all": {str(c.divisor): c.verdict for c in mods}}

    def quotients():
        return _p2qr_quotients(cfg)

    def complexes():
        return _p2qr_complexes(cfg)

    out += [
        _Check("lemma23.distinct", "p2qr modules pairwise distinct", distinct),
        _Check("lemma26.cyclic", "CM_plus cyclics over S/(p^2qr)", cyclic),
        _Check("lemma24.quotients", "quotient profiles of M_n and N_n", quotients),
        _Check("lemma25.complex", "resolution complexes compose to zero", complexes),
    ]
    return out


def _cyc(g, R):
    return ModulePresentation([[R.lift(g)]], R)


def _mat(R, rows):
    pr = R.poly_ring
    return ModulePresentation([[R.lift(pr(x)) for x in r] for r in rows], R)


def _p2qr_quotients(cfg: SuiteConfig):
    mod = cfg.modulus
    w = {}
    ok = True
    for n in range(1, cfg.max_i + 1):
        entry = {}
        # polynomial model: p, q, r independent variables
        mf = gen_p2qr(n, modulus=mod)
        M, N = mf_cokernel(mf), mf_cokernel(mf_syzygy(mf))
        R = M.ring
        pr = R.poly_ring
        p, q, r = pr.gen("p"), pr.gen("q"), pr.gen("r")
        Rr, Rq, Rpq, Rpr = (make_quotient(R, [e]) for e in (r, q, p * q, p * r))
        rn = r ** n
        cases = {
            "M/rM": (base_change(M, Rr), direct_sum(_cyc(p, Rr), _cyc(p, Rr),
                                                   ModulePresentation.free(1, Rr))),
            "M/qM": (base_change(M, Rq), direct_sum(ModulePresentation.free(1, Rq),
                                                   _mat(Rq, [[p, rn], [0, p]]))),
            "M/pqM": (base_change(M, Rpq), direct_sum(ModulePresentation.free(1, Rpq),
                                                     _mat(Rpq, [[p, rn], [0, p]]))),
            "N/rN": (base_change(N, Rr), direct_sum(_cyc(p, Rr), ModulePresentation.free(2, Rr))),
            "N/qN": (base_change(N, Rq), direct_sum(_cyc(p, Rq), ModulePresentation.free(2, Rq))),
            "N/prN": (base_change(N, Rpr), direct_sum(_mat(Rpr, [[p], [q * rn]]),
                                                     ModulePresentation.free(1, Rpr))),
        }
        for name, (got, want) in cases.items():
            same, prof = same_profile(got, want)
            entry[name] = same
            ok = ok and same
        # r^n is not in (p, q) when r is a free variable, so the simplified form must differ
        simplified = direct_sum(ModulePresentation.free(1, Rq), _cyc(p, Rq), _cyc(p, Rq))
        entry["M/qM simplified (free r)"] = same_profile(base_change(M, Rq), simplified)[0]
        ok = ok and not entry["M/qM simplified (free r)"]

        # variable model: r = p + q inside Q[p, q], so r^n lies in (p, q)
        S2 = polynomial_ring(("p", "q"), mod)
        mf2 = gen_p2qr(n, r="p + q", ring=S2)
        M2 = mf_cokernel(mf2)
        R2 = M2.ring
        p2, q2 = R2.poly_ring.gen("p"), R2.poly_ring.gen("q")
        r_in = S2.ideal([p2, q2]).contains((p2 + q2) ** n)
        R2q = make_quotient(R2, [q2])
        want2 = direct_sum(ModulePresentation.free(1, R2q), _cyc(p2, R2q), _cyc(p2, R2q))
        same2 = same_profile(base_change(M2, R2q), want2)[0]
        entry["r=p+q: r^n in (p,q)"] = r_in
        entry["r=p+q: M/qM simplified"] = same2
        ok = ok and r_in and same2 and mf_verify(mf2).ok
        w[f"n{n}"] = entry
    return ok, w


def _p2qr_complexes(cfg: SuiteConfig):
    mod = cfg.modulus
    S = polynomial_ring(("p", "q", "r"), mod)
    pr = S.poly_ring
    p, q, r = pr.gen("p"), pr.gen("q"), pr.gen("r")
    z = pr.zero()
    Tpq = make_quotient(S, [p * q])
    Tpr = make_quotient(S, [p * r])
    one = lambda e: Matrix(pr, [[e]])
    w = {}
    ok = True
    for i in range(1, cfg.max_i + 1):
        seq1 = [Matrix(pr, [[p, r ** i], [z, p]]), Matrix(pr, [[q], [z]]), one(p), one(q), one(p),
                one(q)]
        c1 = complex_check(seq1, Tpq)
        c2 = complex_check([Matrix(pr, [[p], [q * r ** i]])], Tpr)
        w[f"i{i}"] = {"over S/(pq)": c1, "over S/(pr)": c2}
        ok = ok and c1 and c2
    # resolution of S/(p) over S/(pr): alternating p and r
    periodic = complex_check([one(p), one(r), one(p), one(r)], Tpr)
    literal_q = complex_check([one(p), one(q), one(p)], Tpr)
    w["S/(p) over S/(pr), alternating p, r"] = periodic
    w["S/(p) over S/(pr), alternating p, q"] = literal_q
    return ok and periodic and not literal_q, w


# --------------------------------------------------------------------------
# x2h

def _x2h_checks(cfg: SuiteConfig):
    mod = cfg.modulus

    def fam(i):
        mf = gen_x2h(i, modulus=mod)
        return _faulty(mf) if cfg.inject_fault else mf

    out = []
    for i in range(1, cfg.max_i + 1):
        def verify(i=i):
            return _check_factorization(fam(i))

        def sheet(i=i):
            return _check_sheet(fam(i))

        def fitting(i=i):
            M = mf_cokernel(fam(i))
            pr = M.ring.poly_ring
            return _ideal_check(M.ring, fitting_ideal(M, 2), [pr.gen("x"), pr.gen("y") ** i])

        def localize(i=i):
            mf = fam(i)
            M = mf_cokernel(mf)
            spec = spectrum_x2h(mf)
            ok, w = _localize_shape(M, spec.prime("p"), (2, 1), [mf.ring.poly_ring.gen("x")])
            free, wq = _free_at(M, spec.prime("q"))
            return ok and free, {"p": w, "q": wq}

        def classify(i=i):
            mf = fam(i)
            return _classify_pair(mf, spectrum_x2h(mf))

        out += [
            _Check(f"lemma37.verify.i{i}", "x2h factorization identity", verify),
            _Check(f"lemma40.verify.x2h.i{i}", "sheet factorization and special fiber", sheet),
            _Check(f"lemma37.fitting.i{i}", "Fitt_2 = (x, y^i)", fitting),
            _Check(f"lemma37.localize.i{i}", "local shapes at (x) and (h)", localize),
            _Check(f"lemma37.classify.i{i}", "CM_plus verdict, syzygy invariant", classify),
        ]

    def distinct():
        return _pairwise_distinct({i: mf_cokernel(fam(i)) for i in range(1, cfg.max_i + 1)}, 2)

    def cyclic():
        base = polynomial_ring(("x", "y", "s", "t", "u"), mod)
        pr = base.poly_ring
        x, h = pr.gen("x"), h_poly(base)
        spec = spectrum_x2h(gen_x2h(1, modulus=mod))
        mods = cyclic_mcm_enumerate([(x, 2), (h, 1)], spec, base)
        plus = sorted(str(c.divisor) for c in mods if c.verdict == "CM_plus")
        want = sorted(str(g) for g in (x, x * h))
        return plus == want, {"CM_plus": plus, "expected": want,
                              "all": {str(c.divisor): c.verdict for c in mods}}

    def quotients():
        return _x2h_quotients(cfg)

    out += [
        _Check("lemma37.distinct", "x2h modules pairwise distinct", distinct),
        _Check("lemma36.cyclic", "CM_plus cyclics over S/(x^2h)", cyclic),
        _Check("lemma38.quotients", "quotient reductions of M_i and N_i", quotients),
    ]
    return out


def _x2h_quotients(cfg: SuiteConfig):
    mod = cfg.modulus
    S = polynomial_ring(("x", "y", "s", "t", "u"), mod)
    pr = S.poly_ring
    x, y, s, u = pr.gen("x"), pr.gen("y"), pr.gen("s"), pr.gen("u")
    h = h_poly(S)
    w = {}
    # R/(xy) = S/(x^4 s, xy)
    ok = S.ideal_equal([x * x * h, x * y], [x ** 4 * s, x * y])
    w["R/(xy) = S/(x^4 s, xy)"] = ok
    T4 = make_quotient(S, [x ** 4, x * y])
    ann = annihilator(x, T4)
    ann_ok = T4.ideal_equal(ann, [x ** 3, y])
    w["(0:x) over S/(x^4, xy)"] = [T4.show(g) for g in ann]
    ok = ok and ann_ok
    Txh = make_quotient(S, [x * h])
    xh_ok = Txh.ideal_equal([x, h], [x, y * y * u]) and not Txh.ideal_contains([x, y * y * u], y)
    w["(x,h) = (x,y^2u) and y not in it"] = xh_ok
    ok = ok and xh_ok
    for i in range(1, cfg.max_i + 1):
        mf = gen_x2h(i, modulus=mod)
        M, N = mf_cokernel(mf), mf_cokernel(mf_syzygy(mf))
        R = M.ring
        yi = y ** i
        Rxy = make_quotient(R, [x * y])
        want_m = direct_sum(_mat(Rxy, [[x, yi], [0, x]]), _cyc(x * h, Rxy))
        m_ok = same_profile(base_change(M, Rxy), want_m)[0]
        Rxh = make_quotient(R, [x * h])
        want_n = direct_sum(ModulePresentation.free(1, Rxh),
                            _mat(Rxh, [[yi * h, yi * y], [0, x]]))
        n_ok = same_profile(base_change(N, Rxh), want_n)[0]
        cx = complex_check([Matrix(pr, [[x, yi], [0, x]]),
                            Matrix(pr, [[y, x ** 3, 0], [0, 0, x ** 3]])], T4)
        w[f"i{i}"] = {"M/xyM": m_ok, "N/xhN": n_ok, "complex over S/(x^4,xy)": cx}
        ok = ok and m_ok and n_ok and cx
    return ok, w


# --------------------------------------------------------------------------
# xy-zn

def _xy_zn_checks(cfg: SuiteConfig):
    mod = cfg.modulus

    def fam(n):
        mf = gen_xy_zn(n, modulus=mod)
        return _faulty(mf) if cfg.inject_fault else mf

    def wit(n):
        mf = xy_zn_witness(n, modulus=mod)
        return _faulty(mf) if cfg.inject_fault else mf

    out = []
    for n in range(1, cfg.max_i + 1):
        def verify(n=n):
            ok, w = _check_factorization(fam(n))
            ok2, w2 = _check_factorization(wit(n))
            w["specialization"] = w2
            return ok and ok2, w

        def sheet(n=n):
            return _check_sheet(fam(n))

        def fitting(n=n):
            M = mf_cokernel(fam(n))
            pr = M.ring.poly_ring
            want = [pr.gen("x"), pr.gen("y"), pr.gen("a") ** n * pr.gen("b")]
            return _ideal_check(M.ring, fitting_ideal(M, 1), want)

        def classify(n=n):
            mf = fam(n)
            ok, w = _classify_pair(mf, spectrum_xy_zn(mf))
            mw = wit(n)
            ok2, w2 = _classify_pair(mw, spectrum_xy_zn_witness(mw))
            w["specialization"] = w2
            return ok and ok2, w

        out += [
            _Check(f"theorem22.verify.n{n}", "xy factorization identity", verify),
            _Check(f"lemma40.verify.xy-zn.n{n}", "sheet factorization and special fiber", sheet),
            _Check(f"theorem22.fitting.n{n}", "I_1 = (x, y, a^n b)", fitting),
            _Check(f"theorem22.classify.n{n}", "CM_plus verdict, symbolic and specialized", classify),
        ]

    def distinct():
        return _pairwise_distinct({n: mf_cokernel(fam(n)) for n in range(1, cfg.max_i + 1)}, 1)

    out.append(_Check("theorem22.distinct", "xy modules pairwise distinct", distinct))
    return out


# --------------------------------------------------------------------------
# xn-yg

def _xn_yg_checks(cfg: SuiteConfig):
    mod = cfg.modulus

    def fam(i, n):
        mf = gen_xn_yg(i, n, modulus=mod)
        return _faulty(mf) if cfg.inject_fault else mf

    out = []
    for n in cfg.xn_exponents:
        for i in range(1, cfg.max_i + 1):
            def verify(i=i, n=n):
                return _check_factorization(fam(i, n))

            def sheet(i=i, n=n):
                return _check_sheet(fam(i, n))

            def fitting(i=i, n=n):
                M = mf_cokernel(fam(i, n))
                pr = M.ring.poly_ring
                x, y, z = pr.gen("x"), pr.gen("y"), pr.gen("z")
                return _ideal_check(M.ring, fitting_ideal(M, 3), [x * x, x * z ** i, y])

            def classify(i=i, n=n):
                mf = fam(i, n)
                spec = spectrum_xn_yg(mf)
                ok, w = _classify_pair(mf, spec)
                L = localize_at(mf_cokernel(mf), spec.prime("p"))
                fs = has_free_summand(L)
                w["free_summand_at_p"] = fs
                w["minimal_shape_at_p"] = list(minimalize(L).shape)
                return ok and not fs, w

            tag = f"n{n}.i{i}"
            out += [
                _Check(f"example57.verify.{tag}", "x^n + yg factorization identity", verify),
                _Check(f"lemma40.verify.xn-yg.{tag}", "sheet factorization and special fiber",
                       sheet),
                _Check(f"example57.fitting.{tag}", "Fitt_3 = (x^2, x z^i, y)", fitting),
                _Check(f"example57.classify.{tag}", "CM_plus, no free summand at (x,y)", classify),
            ]

        def distinct(n=n):
            mods = {i: mf_cokernel(fam(i, n)) for i in range(1, cfg.max_i + 1)}
            return _pairwise_distinct(mods, 3)

        out.append(_Check(f"example57.distinct.n{n}", "x^n + yg modules pairwise distinct",
                          distinct))
    return out


# --------------------------------------------------------------------------
# a-inf-1d

def _a_inf_checks(cfg: SuiteConfig):
    mod = cfg.modulus

    def fam(j):
        mf = gen_a_inf_dim1(j, modulus=mod)
        return _faulty(mf) if cfg.inject_fault else mf

    out = []
    for j in range(1, cfg.max_i + 1):
        def verify(j=j):
            return _check_factorization(fam(j))

        def sheet(j=j):
            return _check_sheet(fam(j))

        def fitting(j=j):
            M = mf_cokernel(fam(j))
            pr = M.ring.poly_ring
            return _ideal_check(M.ring, fitting_ideal(M, 1), [pr.gen("x"), pr.gen("y") ** j])

        def localize(j=j):
            # y^j becomes a unit at (x), so the cokernel is free of rank one there
            mf = fam(j)
            M = mf_cokernel(mf)
            v = is_free(localize_at(M, spectrum_a_inf(mf).prime("p")))
            return v.free and v.rank == 1, v.to_json()

        out += [
            _Check(f"ainf.verify.j{j}", "x^2 factorization identity", verify),
            _Check(f"lemma40.verify.a-inf-1d.j{j}", "sheet factorization and special fiber", sheet),
            _Check(f"ainf.fitting.j{j}", "Fitt_1 = (x, y^j)", fitting),
            _Check(f"ainf.localize.j{j}", "free of rank 1 at (x)", localize),
        ]

    def distinct():
        return _pairwise_distinct({j: mf_cokernel(fam(j)) for j in range(1, cfg.max_i + 1)}, 1)

    out.append(_Check("ainf.distinct", "x^2 modules pairwise distinct", distinct))
    return out


# --------------------------------------------------------------------------
# ring-level examples

def _ring_checks(cfg: SuiteConfig):
    mod = cfg.modulus

    def t_ring():
        S = polynomial_ring(("u", "v", "z"), mod)
        pr = S.poly_ring
        u, v, z = pr.gen("u"), pr.gen("v"), pr.gen("z")
        return make_quotient(S, [u * z - (u * u + v ** 3), z * z]), (u, v, z)

    def annihilator_z():
        T, (u, v, z) = t_ring()
        ann = annihilator(z, T)
        ok = T.ideal_equal(ann, [z]) and is_self_annihilating(z, T)
        return ok, {"annihilator": [T.show(g) for g in ann]}

    def kernel():
        T, (u, v, z) = t_ring()
        p = u * u + v ** 3
        ker = eliminate(list(T.relations), ["z"])
        S = polynomial_ring(("u", "v"), mod)
        ker = [g.lift(S.poly_ring) for g in ker]
        ok = S.ideal_equal(ker, [p.lift(S.poly_ring) ** 2])
        return ok, {"kernel": _gens(ker)}

    def annihilator_xy():
        S = polynomial_ring(("x", "y", "z"), mod)
        pr = S.poly_ring
        x, y, z = pr.gen("x"), pr.gen("y"), pr.gen("z")
        R = make_quotient(S, [x * y * z])
        ann = annihilator(x * y, R)
        return R.ideal_equal(ann, [z]), {"annihilator": [R.show(g) for g in ann]}

    def detector():
        S = polynomial_ring(("x", "y"), mod)
        x = S.poly_ring.gen("x")
        pos = is_self_annihilating(x, make_quotient(S, [x * x]))
        neg = is_self_annihilating(x, make_quotient(S, [x ** 3]))
        return pos and not neg, {"S/(x^2)": pos, "S/(x^3)": neg}

    return [
        _Check("theorem32.annihilator", "(0:z) = (z) in the z^2 = 0 extension", annihilator_z),
        _Check("theorem32.kernel", "kernel of S -> T is (p^2)", kernel),
        _Check("section6.annihilator", "(0:xy) = (z) over S/(xyz)", annihilator_xy),
        _Check("corollary30.detector", "(0:x) = (x) detector", detector),
    ]


_GROUP_BUILDERS = {
    "p2qr": _p2qr_checks,
    "x2h": _x2h_checks,
    "xy-zn": _xy_zn_checks,
    "xn-yg": _xn_yg_checks,
    "a-inf-1d": _a_inf_checks,
    "rings": _ring_checks,
}


def build_suite(cfg: SuiteConfig) -> list[_Check]:
    checks = []
    for g in SUITE_GROUPS:
        if g in cfg.groups:
            checks.extend(_GROUP_BUILDERS[g](cfg))
    ids = [c.check_id for c in checks]
    if len(ids) != len(set(ids)):
        raise RuntimeError("duplicate check ids in suite")
    return checks


def run_check(check: _Check) -> CheckReport:
    t0 = time.perf_counter()
    try:
        ok, witness = check.run()
    except Exception as exc:  # failures are reported, not raised
        ok, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
    return CheckReport(check.check_id, "pass" if ok else "fail", witness, check.claim,
                       time.perf_counter() - t0)


def run_suite(cfg: SuiteConfig) -> list[CheckReport]:
    reports = [run_check(c) for c in build_suite(cfg)]
    return sorted(reports, key=lambda r: r.check_id)


def summary_table(reports: list[CheckReport]) -> str:
    width = max((len(r.check_id) for r in reports), default=8)
    lines = [f"{'check_id':<{width}}  status  claim"]
    for r in reports:
        lines.append(f"{r.check_id:<{width}}  {r.status:<6}  {r.claim}")
    passed = sum(r.passed for r in reports)
    lines.append(f"{passed}/{len(reports)} checks passed")
    return "\n".join(lines)
