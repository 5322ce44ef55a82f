"""Groebner bases and the ideal operations built on them.

Buchberger's algorithm with the normal selection strategy (smallest lcm
first) and the Gebauer-Moeller pair criteria.  Generators are inserted one at a time and the
basis is completed after each insertion, so redundant generators (the bulk of
a minor ideal) reduce to zero cheaply and never enter the pair queue.
"""

from __future__ import annotations

import heapq
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .poly import MonomialOrder, PolyRing, Polynomial, RingMismatchError


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple([x if x > y else y for x, y in zip(a, b)])


def _disjoint(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Entry:
    __slots__ = ("lm", "terms")

    def __init__(self, lm, terms):
        self.lm = lm
        self.terms = terms


def _reduce(terms, basis, key, mod, full=True):
    """Normal form of ``terms`` by monic ``basis`` entries (dict in, dict out)."""
    if not terms:
        return {}
    p = dict(terms)
    heap = [(_neg(key(e)), e) for e in p]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        for g in basis:
            if _divides(g.lm, m):
                q = tuple([x - y for x, y in zip(m, g.lm)])
                glm = g.lm
                for e, gc in g.terms.items():
                    if e == glm:
                        continue
                    t = tuple([x + y for x, y in zip(q, e)])
                    old = p.get(t)
                    v = (0 if old is None else old) - c * gc
                    if mod:
                        v %= mod
                    if v:
                        p[t] = v
                        if old is None:
                            heapq.heappush(heap, (_neg(key(t)), t))
                    elif old is not None:
                        del p[t]
                break
        else:
            rem[m] = c
            if not full:
                rem.update(p)
                return rem
    return rem


def _neg(k):
    return tuple([-x for x in k])


def _monic(terms, key, ring):
    lm = max(terms, key=key)
    c = terms[lm]
    if c != 1:
        inv = ring.cinv(c)
        mod = ring.modulus
        if mod:
            terms = {e: v * inv % mod for e, v in terms.items()}
        else:
            terms = {e: ring.coerce(v * inv) for e, v in terms.items()}
    return lm, terms


class _Builder:
    """Mutable Buchberger state."""

    def __init__(self, ring: PolyRing, order: MonomialOrder):
        self.ring = ring
        self.order = order
        self.key = order.key
        self.mod = ring.modulus
        self.G: list[_Entry] = []
        self.pairs: list = []
        self.unit = False

    def insert(self, terms):
        if self.unit or not terms:
            return
        h = _reduce(terms, self.G, self.key, self.mod)
        if not h:
            return
        self._update(h)
        self._complete()

    def _update(self, h_terms):
        lm, terms = _monic(h_terms, self.key, self.ring)
        if not any(lm):
            self.unit = True
            self.G = [_Entry(lm, terms)]
            self.pairs = []
            return
        h = _Entry(lm, terms)
        hl = h.lm
        # Gebauer-Moeller: prune new pairs (g, h)
        cands = [(g, _lcm(g.lm, hl)) for g in self.G]
        kept = []
        for idx, (g, l) in enumerate(cands):
            if _disjoint(g.lm, hl):
                kept.append((g, l, True))
                continue
            dominated = False
            for jdx, (g2, l2) in enumerate(cands):
                if jdx == idx:
                    continue
                if _divides(l2, l) and (l2 != l or jdx < idx):
                    dominated = True
                    break
            if not dominated:
                kept.append((g, l, False))
        new_pairs = [(g, h, l) for g, l, disj in kept if not disj]
        # prune old pairs whose lcm is divisible by lm(h) strictly
        old = []
        for (a, b, l) in self.pairs:
            if _divides(hl, l) and _lcm(a.lm, hl) != l and _lcm(b.lm, hl) != l:
                continue
            old.append((a, b, l))
        self.pairs = old + new_pairs
        self.G = [g for g in self.G if not _divides(hl, g.lm)]
        self.G.append(h)

    def _complete(self):
        # sugar selection was tried first; it let rational coefficients swell
        # badly on elimination orders
        key = self.key
        mod = self.mod
        while self.pairs and not self.unit:
            best = min(range(len(self.pairs)), key=lambda k: key(self.pairs[k][2]))
            a, b, l = self.pairs.pop(best)
            s = self._spoly(a, b, l, mod)
            h = _reduce(s, self.G, key, mod)
            if h:
                self._update(h)

    @staticmethod
    def _spoly(a, b, l, mod):
        out: dict = {}
        qa = tuple([x - y for x, y in zip(l, a.lm)])
        for e, c in a.terms.items():
            if e == a.lm:
                continue
            t = tuple([x + y for x, y in zip(qa, e)])
            out[t] = out.get(t, 0) + c
        qb = tuple([x - y for x, y in zip(l, b.lm)])
        for e, c in b.terms.items():
            if e == b.lm:
                continue
            t = tuple([x + y for x, y in zip(qb, e)])
            out[t] = out.get(t, 0) - c
        if mod:
            return {e: c % mod for e, c in out.items() if c % mod}
        return {e: c for e, c in out.items() if c}

    def reduced(self):
        key = self.key
        G = sorted(self.G, key=lambda g: key(g.lm))
        minimal = [g for g in G if not any(h is not g and _divides(h.lm, g.lm) for h in G)]
        out = []
        for g in minimal:
            others = [h for h in minimal if h is not g]
            tail = {e: c for e, c in g.terms.items() if e != g.lm}
            tail = _reduce(tail, others, key, self.mod)
            tail[g.lm] = g.terms[g.lm]
            out.append(_Entry(g.lm, tail))
        return out


class GroebnerBasis:
    """Reduced Groebner basis of an ideal for a fixed monomial order."""

    __slots__ = ("ring", "order", "_entries", "generators")

    def __init__(self, ring: PolyRing, order: MonomialOrder, entries):
        self.ring = ring
        self.order = order
        self._entries = tuple(entries)
        self.generators = tuple(Polynomial(ring, dict(e.terms)) for e in self._entries)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and self.order == other.order
                and set(self.generators) == set(other.generators))

    def __hash__(self):
        return hash((self.ring, self.order, frozenset(self.generators)))

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(str(g) for g in self.generators)}])"

    @property
    def is_unit(self) -> bool:
        return len(self._entries) == 1 and not any(self._entries[0].lm)

    @property
    def is_zero(self) -> bool:
        return not self._entries

    def reduce(self, p: Polynomial) -> Polynomial:
        if p.ring != self.ring:
            raise RingMismatchError(f"{p.ring!r} vs {self.ring!r}")
        return Polynomial(self.ring, _reduce(p.terms, self._entries, self.order.key,
                                             self.ring.modulus))

    def contains(self, p: Polynomial) -> bool:
        return not self.reduce(p).terms

    def extend(self, gens: Iterable[Polynomial]) -> "GroebnerBasis":
        return groebner(list(self.generators) + list(gens), self.order, ring=self.ring)


def _as_order(ring, order):
    if order is None:
        return ring.order
    if isinstance(order, str):
        return MonomialOrder(order, nvars=ring.nvars)
    return order


def groebner(gens: Sequence[Polynomial], order: MonomialOrder | str | None = None,
             ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = [g for g in gens]
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError(f"{g.ring!r} vs {ring!r}")
    order = _as_order(ring, order)
    return _groebner_cached(ring, order, frozenset(g for g in gens if g.terms))


@lru_cache(maxsize=4096)
def _groebner_cached(ring, order, gens):
    key = order.key
    b = _Builder(ring, order)
    # small generators first: cheap ones settle the ideal early
    ordered = sorted(gens, key=lambda g: (len(g.terms), key(max(g.terms, key=key)),
                                          sorted(g.terms.items(), key=lambda t: key(t[0]))))
    for g in ordered:
        b.insert(g.terms)
        if b.unit:
            break
    return GroebnerBasis(ring, order, b.reduced())


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.reduce(p)


def ideal_equal(I: Sequence[Polynomial], J: Sequence[Polynomial],
                order: MonomialOrder | str | None = None,
                ring: PolyRing | None = None) -> bool:
    """Equality of ideals, by comparison of reduced Groebner bases."""
    ring = ring or _ring_of(I, J)
    return groebner(I, order, ring) == groebner(J, order, ring)


def ideal_contains(I: Sequence[Polynomial], J: Sequence[Polynomial],
                   order=None, ring: PolyRing | None = None) -> bool:
    """True iff every element of ``J`` lies in the ideal generated by ``I``."""
    ring = ring or _ring_of(I, J)
    gb = groebner(I, order, ring)
    return all(gb.contains(g.lift(ring)) for g in J)


def _ring_of(*seqs):
    for s in seqs:
        for g in s:
            return g.ring
    raise ValueError("cannot infer the ring from empty generator lists")


def eliminate(I: Sequence[Polynomial], drop_vars: Iterable[str],
              ring: PolyRing | None = None) -> list[Polynomial]:
    """Generators of ``I`` intersected with the subring free of ``drop_vars``.

    Computed with a block order that puts ``drop_vars`` first; the result is
    a Groebner basis of the elimination ideal for the induced order.
    """
    ring = ring or _ring_of(I)
    drop = [ring.index(v) for v in drop_vars]
    order = MonomialOrder.elimination(ring.nvars, drop)
    gb = groebner(I, order, ring)
    return [g for g in gb.generators if not any(e[i] for e in g.terms for i in drop)]


def _restrict(polys, ring):
    return [p.lift(ring) for p in polys]


def standard_monomials(gb: GroebnerBasis) -> list[tuple] | None:
    """Monomials outside the initial ideal, or None if there are infinitely many."""
    n = gb.ring.nvars
    lms = [e.lm for e in gb._entries]
    bound = [None] * n
    for lm in lms:
        nz = [i for i, k in enumerate(lm) if k]
        if len(nz) == 1:
            i = nz[0]
            bound[i] = lm[i] if bound[i] is None else min(bound[i], lm[i])
    if any(b is None for b in bound):
        return None
    out = [()]
    for b in bound:
        out = [m + (k,) for m in out for k in range(b)]
    return [m for m in out if not any(_divides(lm, m) for lm in lms)]


def _nullspace(rows, ring):
    """Basis of ``{c : sum_j c_j * column_j = 0}`` for a dense matrix over the field."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    a = [list(r) for r in rows]
    mod = ring.modulus
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = ring.cinv(a[r][c])
        a[r] = [ring.coerce(v * inv) for v in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [ring.coerce(v - f * w) for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * n
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = ring.coerce(-a[i][fc])
        basis.append(vec)
    return basis


def _colon_zero_dim(gb: GroebnerBasis, g: Polynomial, basis) -> list[Polynomial]:
    # kernel of multiplication by g on the finite-dimensional quotient
    ring = gb.ring
    index = {b: k for k, b in enumerate(basis)}
    cols = []
    for b in basis:
        nf = gb.reduce(g * ring.monomial(b))
        col = [0] * len(basis)
        for e, c in nf.terms.items():
            col[index[e]] = c
        cols.append(col)
    rows = [list(r) for r in zip(*cols)]
    extra = [ring.from_terms({b: c for b, c in zip(basis, vec) if c})
             for vec in _nullspace(rows, ring)]
    return list(gb.generators) + extra


def colon_ideal(I: Sequence[Polynomial], g: Polynomial,
                order=None) -> list[Polynomial]:
    """Generators of ``(I : g)``, as a reduced Groebner basis.

    Zero-dimensional ``I`` is handled by linear algebra on the quotient;
    otherwise ``I ∩ (g) = (t*I + (1-t)*g) ∩ k[vars]`` is divided by ``g``.
    """
    if not g.terms:
        raise ValueError("colon by the zero polynomial")
    ring = g.ring
    I = [f.lift(ring) for f in I if f.terms]
    if not I:
        return []
    gb = groebner(I, ring=ring)
    g = gb.reduce(g)
    if not g.terms:
        return list(groebner([ring.one()], order, ring).generators)
    basis = standard_monomials(gb)
    if basis is not None:
        return list(groebner(_colon_zero_dim(gb, g, basis), order, ring).generators)
    t_name = ring.fresh_name("_t")
    big = ring.extend(t_name)
    t = big.gen(t_name)
    gens = [t * f.lift(big) for f in gb.generators] + [(1 - t) * g.lift(big)]
    inter = _restrict(eliminate(gens, [t_name], big), ring)
    quot = [h.divide_exact(g) for h in inter]
    return list(groebner(quot, order, ring).generators)


def saturate(I: Sequence[Polynomial], g: Polynomial, order=None) -> list[Polynomial]:
    """Generators of ``(I : g^oo)`` via ``(I + (1 - w*g)) ∩ k[vars]``."""
    if not g.terms:
        raise ValueError("saturation by the zero polynomial")
    ring = g.ring
    w_name = ring.fresh_name("_w")
    big = ring.extend(w_name)
    w = big.gen(w_name)
    gens = [f.lift(big) for f in I] + [1 - w * g.lift(big)]
    out = _restrict(eliminate(gens, [w_name], big), ring)
    return list(groebner(out, order, ring).generators)


# --------------------------------------------------------------------------
# determinants and minors

def _cofactor_det(rows, ring):
    n = len(rows)
    if n == 0:
        return ring.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ring.zero()
    for j in range(n):
        a = rows[0][j]
        if not a.terms:
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        d = _cofactor_det(sub, ring)
        total = total + a * d if j % 2 == 0 else total - a * d
    return total


def _bareiss_det(rows, ring):
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if not m[k][k].terms:
            swap = next((i for i in range(k + 1, n) if m[i][k].terms), None)
            if swap is None:
                return ring.zero()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.divide_exact(prev)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def determinant(rows: Sequence[Sequence[Polynomial]], ring: PolyRing | None = None) -> Polynomial:
    """Determinant: cofactor expansion up to 4x4, fraction-free Bareiss above."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if ring is None:
        if n == 0:
            raise ValueError("ring required for a 0x0 determinant")
        ring = rows[0][0].ring
    rows = [tuple(r) for r in rows]
    if n <= 4:
        return _cofactor_det(rows, ring)
    return _bareiss_det(rows, ring)


def all_minors(rows: Sequence[Sequence[Polynomial]], s: int, ring: PolyRing) -> list[Polynomial]:
    """All ``s x s`` minors, by Laplace expansion along the first chosen row.

    Every smaller minor is computed once and shared, which is much cheaper than
    one determinant per minor when the whole ideal of minors is needed.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    if not 1 <= s <= min(m, n):
        raise ValueError(f"minor size {s} out of range for a {m}x{n} matrix")
    zero = ring.zero()
    memo: dict = {}
    cols_all = tuple(range(n))

    def minor(rs, cs):
        k = (rs, cs)
        if k in memo:
            return memo[k]
        if len(rs) == 1:
            v = rows[rs[0]][cs[0]]
        else:
            r0 = rs[0]
            rest = rs[1:]
            v = zero
            for idx, c in enumerate(cs):
                a = rows[r0][c]
                if not a.terms:
                    continue
                sub = minor(rest, cs[:idx] + cs[idx + 1:])
                if not sub.terms:
                    continue
                v = v + a * sub if idx % 2 == 0 else v - a * sub
        memo[k] = v
        return v

    out = []
    for rs in combinations(range(m), s):
        for cs in combinations(cols_all, s):
            d = minor(rs, cs)
            if d.terms:
                out.append(d)
    return out


def minors_ideal(rows: Sequence[Sequence[Polynomial]], s: int,
                 ring: PolyRing | None = None) -> list[Polynomial]:
    """Distinct nonzero ``s``-minors (up to sign), generating ``I_s``."""
    if ring is None:
        ring = rows[0][0].ring
    seen = set()
    out = []
    for d in all_minors(rows, s, ring):
        if d in seen or -d in seen:
            continue
        seen.add(d)
        out.append(d)
    return out
