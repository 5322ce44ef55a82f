"""Finitely presented modules over a modeled local ring.

A presentation is an ``m x n`` matrix: ``m`` generators, ``n`` relations
(columns).  Isomorphism is never decided positively; modules are compared
through invariants only (Fitting ideals and generator counts).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

from .ideal import GroebnerBasis, groebner
from .matrix import Matrix, block_diag
from .poly import Polynomial
from .rings import (IncompatibleRingError, RingDescriptor, localize, make_quotient,
                    polynomial_ring, prune_generators)


class ModulePresentation:
    __slots__ = ("matrix", "ring", "source")

    def __init__(self, matrix: Matrix | Sequence[Sequence], ring: RingDescriptor, source=None):
        pr = ring.poly_ring
        if not isinstance(matrix, Matrix):
            rows = [list(r) for r in matrix]
            matrix = Matrix(pr, rows, ncols=len(rows[0]) if rows else 0)
        self.matrix = matrix.map(lambda a: ring.normal_form(a), pr)
        self.ring = ring
        self.source = source

    @classmethod
    def cyclic(cls, g: Polynomial, ring: RingDescriptor) -> "ModulePresentation":
        """Presentation of ``R/(g)``."""
        return cls([[ring.lift(g)]], ring)

    @classmethod
    def free(cls, rank: int, ring: RingDescriptor) -> "ModulePresentation":
        return cls(Matrix(ring.poly_ring, [[] for _ in range(rank)], ncols=0), ring)

    @property
    def ngens(self) -> int:
        return self.matrix.nrows

    @property
    def nrels(self) -> int:
        return self.matrix.ncols

    @property
    def shape(self):
        return self.matrix.shape

    def __eq__(self, other):
        return (isinstance(other, ModulePresentation) and self.ring == other.ring
                and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.matrix, self.ring))

    def __repr__(self):
        return f"ModulePresentation({self.matrix!r})"

    def to_json(self) -> dict:
        m = self.matrix
        return {"rows": m.nrows, "cols": m.ncols,
                "entries": [[self.ring.show(x) for x in r] for r in m.rows],
                "ring": self.ring.to_json()}

    @classmethod
    def from_json(cls, doc: dict, ring: RingDescriptor | None = None) -> "ModulePresentation":
        if ring is None:
            ring = RingDescriptor.from_json(doc["ring"])
        return cls(Matrix.from_json(ring.poly_ring, doc), ring)


def direct_sum(*pres: ModulePresentation) -> ModulePresentation:
    ring = pres[0].ring
    if any(p.ring != ring for p in pres):
        raise IncompatibleRingError("direct sum of presentations over different rings")
    return ModulePresentation(block_diag(*(p.matrix for p in pres), ring=ring.poly_ring), ring)


# --------------------------------------------------------------------------
# minimalization

def _drop_zero_columns(rows, ncols):
    keep = [j for j in range(ncols) if any(r[j].terms for r in rows)]
    return [[r[j] for j in keep] for r in rows], len(keep)


def _monomial_gcd(polys):
    exps = [e for p in polys for e in p.terms]
    return tuple(min(col) for col in zip(*exps))


def ring_quotient(a: Polynomial, b: Polynomial, ring: RingDescriptor) -> Polynomial | None:
    """Some ``lam`` with ``a == lam * b`` in ``ring``, found cheaply, or None.

    Tries exact polynomial division, then cancels the common monomial factor
    and inverts what is left of ``b`` when its inverse is visible.
    """
    if not a.terms:
        return ring.poly_ring.zero()
    if not b.terms:
        return None
    try:
        lam = a.divide_exact(b)
    except ValueError:
        pr = ring.poly_ring
        m = pr.monomial(_monomial_gcd([a, b]))
        inv = ring.inverse_of(b.divide_exact(m))
        if inv is None:
            return None
        lam = ring.normal_form(a.divide_exact(m) * inv)
    return lam if ring.equal(a, lam * b) else None


def _column_multiple(cj, ck, ring):
    """Return True if ``cj == lam * ck`` for some ring element ``lam``."""
    i = next((t for t, a in enumerate(ck) if a.terms), None)
    if i is None:
        return False
    lam = ring_quotient(cj[i], ck[i], ring)
    return lam is not None and all(ring.equal(a, lam * b) for a, b in zip(cj, ck))


def _clear_rows(rows, ncols, ring):
    """Row operations: in each column, an entry dividing the others clears them."""
    for j in range(ncols):
        nz = [i for i, r in enumerate(rows) if r[j].terms]
        if len(nz) < 2:
            continue
        for k in nz:
            lams = {i: ring_quotient(rows[i][j], rows[k][j], ring) for i in nz if i != k}
            if all(v is not None for v in lams.values()):
                for i, lam in lams.items():
                    rows[i] = [ring.normal_form(a - lam * b) for a, b in zip(rows[i], rows[k])]
                break
    return rows


def _drop_multiple_columns(rows, ncols, ring):
    cols = [list(c) for c in zip(*rows)] if rows else []
    keep = list(range(ncols))
    for j in range(ncols):
        others = [k for k in keep if k != j]
        if any(_column_multiple(cols[j], cols[k], ring) for k in others):
            keep.remove(j)
    return [[r[j] for j in keep] for r in rows], len(keep)


def _strip_unit_factors(rows, ncols, ring):
    """Divide each column by the invertible variables common to its entries."""
    pr = ring.poly_ring
    for j in range(ncols):
        col = [r[j] for r in rows if r[j].terms]
        if not col:
            continue
        g = _monomial_gcd(col)
        unit = [0] * len(g)
        for k, e in enumerate(g):
            if e and ring.inverse_of(pr.gen(pr.names[k])) is not None:
                unit[k] = e
        if any(unit):
            m = pr.monomial(tuple(unit))
            for r in rows:
                r[j] = r[j].divide_exact(m) if r[j].terms else r[j]
    return rows


def minimalize(p: ModulePresentation) -> ModulePresentation:
    """Pivot away unit entries, then simplify by divisibility and drop columns.

    Pivots are taken at the first unit entry in row-major order.  A pivot
    without a visible inverse in the model ring is inverted by localizing
    further; this does not change the modeled local ring, since the pivot is
    outside its maximal ideal.
    """
    ring = p.ring
    rows = [list(r) for r in p.matrix.rows]
    ncols = p.matrix.ncols
    while True:
        rows, ncols = _drop_zero_columns(rows, ncols)
        pivot = None
        for i, r in enumerate(rows):
            for j, a in enumerate(r):
                if a.terms and ring.is_unit(a):
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        inv = ring.inverse_of(rows[i][j])
        if inv is None:
            new_ring = localize(ring, [rows[i][j]], prime=ring.maximal)
            rows = [[new_ring.lift(a) for a in r] for r in rows]
            ring = new_ring
            inv = ring.inverse_of(rows[i][j])
        col = [r[j] for r in rows]
        prow = rows[i]
        out = []
        for k, r in enumerate(rows):
            if k == i:
                continue
            f = col[k]
            if f.terms:
                f = f * inv
                nr = [ring.normal_form(a - f * b) for t, (a, b) in enumerate(zip(r, prow)) if t != j]
            else:
                nr = [a for t, a in enumerate(r) if t != j]
            out.append(nr)
        rows = out
        ncols -= 1
    rows = _clear_rows(rows, ncols, ring)
    rows, ncols = _drop_zero_columns(rows, ncols)
    rows, ncols = _drop_multiple_columns(rows, ncols, ring)
    rows = _strip_unit_factors(rows, ncols, ring)
    return ModulePresentation(Matrix(ring.poly_ring, rows, ncols=ncols), ring, source=p.source)


def relation_ideal(p: ModulePresentation) -> list[Polynomial]:
    """Nonzero entries of the presentation matrix (they generate ``I_1``)."""
    out = []
    for a in p.matrix.entries():
        if a.terms and a not in out:
            out.append(a)
    return out


# --------------------------------------------------------------------------
# Fitting ideals

class _Minors:
    """All minors of a matrix, each computed once by Laplace expansion."""

    def __init__(self, rows, ring):
        self.rows = rows
        self.ring = ring
        self.memo: dict = {}

    def minor(self, rs, cs):
        memo = self.memo
        k = (rs, cs)
        v = memo.get(k)
        if v is not None:
            return v
        rows = self.rows
        if len(rs) == 1:
            v = rows[rs[0]][cs[0]]
        else:
            r0, rest = rs[0], rs[1:]
            v = self.ring.zero()
            for idx, c in enumerate(cs):
                a = rows[r0][c]
                if not a.terms:
                    continue
                sub = self.minor(rest, cs[:idx] + cs[idx + 1:])
                if sub.terms:
                    v = v + a * sub if idx % 2 == 0 else v - a * sub
        memo[k] = v
        return v

    def of_size(self, s):
        m = len(self.rows)
        n = len(self.rows[0]) if m else 0
        seen = set()
        for rs in combinations(range(m), s):
            for cs in combinations(range(n), s):
                d = self.minor(rs, cs)
                if d.terms and d not in seen and -d not in seen:
                    seen.add(d)
        return seen


@lru_cache(maxsize=2048)
def _fitting_profile(matrix: Matrix, ring: RingDescriptor) -> tuple[GroebnerBasis, ...]:
    m, n = matrix.shape
    rels = list(ring.full_relations())
    pr = ring.poly_ring
    calc = _Minors(matrix.rows, pr)
    out = []
    for r in range(m + 1):
        s = m - r
        if s == 0:
            out.append(groebner([pr.one()], ring=pr))
        elif s > n:
            out.append(ring.gb)
        else:
            out.append(groebner(rels + sorted(calc.of_size(s), key=str), ring=pr))
    return tuple(out)


def fitting_gb(p: ModulePresentation, r: int) -> GroebnerBasis:
    if r < 0:
        raise ValueError("Fitting index must be nonnegative")
    prof = _fitting_profile(p.matrix, p.ring)
    if r >= len(prof):
        return prof[-1]
    return prof[r]


def fitting_ideal(p: ModulePresentation, r: int) -> list[Polynomial]:
    """``Fitt_r = I_{m-r}`` plus the ring's relations, as a reduced Groebner basis."""
    return list(fitting_gb(p, r).generators)


def fitting_profile(p: ModulePresentation, upto: int | None = None) -> list[GroebnerBasis]:
    upto = p.ngens if upto is None else upto
    return [fitting_gb(p, r) for r in range(upto + 1)]


def base_change(p: ModulePresentation, target: RingDescriptor) -> ModulePresentation:
    """Tensor the presentation with ``target`` (a quotient or localization of its ring)."""
    src = p.ring
    if target == src:
        return p
    missing = [v for v in src.poly_ring.names if v not in target.poly_ring]
    if missing:
        raise IncompatibleRingError(f"target ring lacks variables {missing}")
    for rel in src.full_relations():
        if not target.is_zero(rel.lift(target.poly_ring)):
            raise IncompatibleRingError(f"relation {rel} does not vanish in the target ring")
    m = p.matrix.lift(target.poly_ring)
    return ModulePresentation(m, target, source=p.source)


# --------------------------------------------------------------------------
# freeness and local classification

@dataclass(frozen=True)
class FreeVerdict:
    free: bool
    rank: int | None
    minimal: ModulePresentation = field(compare=False, repr=False)

    def __bool__(self):
        return self.free

    def to_json(self):
        return {"free": self.free, "rank": self.rank,
                "gens": self.minimal.ngens, "rels": self.minimal.nrels}


def is_free(p: ModulePresentation) -> FreeVerdict:
    mp = minimalize(p)
    if mp.nrels == 0:
        return FreeVerdict(True, mp.ngens, mp)
    return FreeVerdict(False, None, mp)


def has_free_summand(p: ModulePresentation) -> bool:
    """Zero-row test on the minimal presentation (a sufficient criterion)."""
    mp = minimalize(p)
    return any(not any(a.terms for a in r) for r in mp.matrix.rows)


@dataclass(frozen=True)
class PrimeDecl:
    name: str
    generators: tuple[Polynomial, ...]
    invert: tuple[Polynomial, ...]


@dataclass(frozen=True)
class SpectrumDeclaration:
    """Declared nonmaximal primes (with the elements to invert) and the maximal ideal."""

    primes: tuple[PrimeDecl, ...]
    maximal: tuple[Polynomial, ...] = ()

    def prime(self, name: str) -> PrimeDecl:
        for pd in self.primes:
            if pd.name == name:
                return pd
        raise KeyError(f"unknown prime {name!r}; declared: {[p.name for p in self.primes]}")

    @classmethod
    def from_json(cls, doc: dict, ring: RingDescriptor) -> "SpectrumDeclaration":
        pr = ring.poly_ring
        primes = tuple(PrimeDecl(d["name"], tuple(pr.parse(g) for g in d["generators"]),
                                 tuple(pr.parse(g) for g in d.get("invert", [])))
                       for d in doc["primes"])
        maximal = tuple(pr.parse(g) for g in doc.get("maximal", []))
        return cls(primes, maximal)

    def to_json(self) -> dict:
        return {"primes": [{"name": p.name, "generators": [str(g) for g in p.generators],
                            "invert": [str(s) for s in p.invert]} for p in self.primes],
                "maximal": [str(g) for g in self.maximal]}


def localize_at(p: ModulePresentation, prime: PrimeDecl) -> ModulePresentation:
    ring = localize(p.ring, list(prime.invert), prime=list(prime.generators))
    return base_change(p, ring)


@dataclass(frozen=True)
class Classification:
    per_prime: dict
    verdict: str

    def to_json(self):
        return {**self.per_prime, "verdict": self.verdict}


def classify_punctured_locus(p: ModulePresentation, spec: SpectrumDeclaration) -> Classification:
    """Free/not-free at each declared nonmaximal prime; CM_plus iff some is not free."""
    per = {}
    for pd in spec.primes:
        per[pd.name] = "free" if is_free(localize_at(p, pd)).free else "not_free"
    verdict = "CM_plus" if "not_free" in per.values() else "CM0"
    return Classification(per, verdict)


@dataclass(frozen=True)
class Distinction:
    distinct: bool
    reason: str | None = None

    def __bool__(self):
        return self.distinct


def distinguish(p1: ModulePresentation, p2: ModulePresentation,
                max_fitting_index: int | None = None) -> Distinction:
    """Report ``distinct`` when an invariant separates the modules; never claims isomorphism."""
    if p1.ring != p2.ring:
        raise IncompatibleRingError("distinguish needs presentations over the same ring")
    if p1 == p2:
        return Distinction(False)
    top = max(p1.ngens, p2.ngens) if max_fitting_index is None else max_fitting_index
    # high indices first: their ideals come from the smallest minors
    for r in range(top, -1, -1):
        if fitting_gb(p1, r) != fitting_gb(p2, r):
            return Distinction(True, f"Fitt_{r}")
    n1, n2 = minimalize(p1).ngens, minimalize(p2).ngens
    if n1 != n2:
        return Distinction(True, "minimal number of generators")
    return Distinction(False)


def _common_ring(p1: ModulePresentation, p2: ModulePresentation):
    if p1.ring == p2.ring:
        return p1, p2
    try:
        return p1, base_change(p2, p1.ring)
    except IncompatibleRingError:
        return base_change(p1, p2.ring), p2


def same_profile(p1: ModulePresentation, p2: ModulePresentation) -> tuple[bool, dict]:
    """Compare minimal presentation shapes and every Fitting ideal.

    Both sides are minimalized first; if that localized one of them further,
    the other is carried over by base change.
    """
    m1, m2 = _common_ring(minimalize(p1), minimalize(p2))
    witness = {"shape": [list(m1.shape), list(m2.shape)]}
    if m1.shape != m2.shape:
        witness["mismatch"] = "shape"
        return False, witness
    for r in range(max(p1.ngens, p2.ngens) + 1):
        if fitting_gb(m1, r) != fitting_gb(m2, r):
            witness["mismatch"] = f"Fitt_{r}"
            return False, witness
    return True, witness


# --------------------------------------------------------------------------
# cyclic modules and complexes

@dataclass(frozen=True)
class CyclicModule:
    divisor: Polynomial
    exponents: tuple[int, ...]
    presentation: ModulePresentation = field(repr=False)
    classification: Classification

    @property
    def verdict(self):
        return self.classification.verdict


def cyclic_mcm_enumerate(f_factors: Sequence[tuple[Polynomial, int]], spec: SpectrumDeclaration,
                         base: RingDescriptor | None = None) -> list[CyclicModule]:
    """One ``R/(g)`` per divisor ``g`` of ``f``, tagged CM0 or CM_plus."""
    if not f_factors:
        raise ValueError("empty factorization")
    pr = f_factors[0][0].ring
    if base is None:
        base = polynomial_ring(pr.names, pr.modulus)
    f = base.poly_ring.one()
    for phi, k in f_factors:
        f = f * base.lift(phi) ** k
    R = make_quotient(base, [f])
    out = []
    for exps in product(*(range(k + 1) for _, k in f_factors)):
        g = R.poly_ring.one()
        for (phi, _), e in zip(f_factors, exps):
            g = g * R.lift(phi) ** e
        pres = ModulePresentation([[g]], R)
        out.append(CyclicModule(g, exps, pres, classify_punctured_locus(pres, spec)))
    return out


def complex_check(mats: Sequence[Matrix], ring: RingDescriptor) -> bool:
    """Consecutive products vanish in ``ring`` and no entry is a unit."""
    mats = [m if isinstance(m, Matrix) else Matrix(ring.poly_ring, m) for m in mats]
    mats = [m.lift(ring.poly_ring) for m in mats]
    for a, b in zip(mats, mats[1:]):
        if a.ncols != b.nrows:
            raise ValueError(f"dimension mismatch in complex: {a.shape} then {b.shape}")
    for m in mats:
        if any(x.terms and ring.is_unit(x) for x in m.entries()):
            return False
    for a, b in zip(mats, mats[1:]):
        if any(x.terms and not ring.is_zero(x) for x in (a @ b).entries()):
            return False
    return True


def minimal_generators(gens: Sequence[Polynomial], ring: RingDescriptor) -> list[Polynomial]:
    return prune_generators([ring.normal_form(g) for g in gens if not ring.is_zero(g)], ring)
