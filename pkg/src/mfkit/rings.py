"""Ring towers: a polynomial base, quotients, and localizations.

A :class:`RingDescriptor` models a local ring as a polynomial ring (with
hidden inverse variables) modulo a relation ideal, localized at a declared
prime ``maximal``.  Equality and zero tests are exact in the model ring; the
local unit test is "not in ``maximal``".
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .ideal import GroebnerBasis, colon_ideal, groebner
from .poly import PolyRing, Polynomial, RingMismatchError, field_name, field_modulus

INVERSE_STEM = "_inv"


class IncompatibleRingError(ValueError):
    pass


class RingDescriptor:
    __slots__ = ("base_vars", "poly_ring", "relations", "inverted", "inverse_vars",
                 "maximal", "order", "gb", "max_gb", "_key")

    def __init__(self, base_vars: Sequence[str], *, relations: Sequence[Polynomial] = (),
                 inverted: Sequence[Polynomial] = (), inverse_vars: Sequence[str] = (),
                 maximal: Sequence[Polynomial] | None = None, modulus: int | None = None):
        base_vars = tuple(base_vars)
        inverse_vars = tuple(inverse_vars)
        if len(inverted) != len(inverse_vars):
            raise ValueError("one inverse variable per inverted element")
        ring = PolyRing(base_vars + inverse_vars, modulus)
        self.base_vars = base_vars
        self.poly_ring = ring
        self.inverse_vars = inverse_vars
        self.relations = tuple(ring(r) for r in relations)
        self.inverted = tuple(ring(s) for s in inverted)
        if maximal is None:
            maximal = [ring.gen(v) for v in base_vars]
        self.maximal = tuple(ring(m) for m in maximal)
        self.order = ring.order
        self.gb = groebner(self.full_relations(), ring=ring)
        self.max_gb = groebner(list(self.full_relations()) + list(self.maximal), ring=ring)
        if self.max_gb.is_unit:
            raise ValueError("declared maximal ideal is not proper in this ring")
        self._key = (ring, frozenset(self.gb.generators), frozenset(self.max_gb.generators),
                     self.inverted)

    # construction -------------------------------------------------------
    @classmethod
    def polynomial(cls, names: Iterable[str], modulus: int | None = None) -> "RingDescriptor":
        return cls(tuple(names), modulus=modulus)

    def full_relations(self) -> tuple[Polynomial, ...]:
        ring = self.poly_ring
        inv = tuple(ring.gen(u) * s - 1 for u, s in zip(self.inverse_vars, self.inverted))
        return self.relations + inv

    @property
    def modulus(self):
        return self.poly_ring.modulus

    def __eq__(self, other):
        return isinstance(other, RingDescriptor) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        rel = ", ".join(self.show(r) for r in self.relations)
        inv = ", ".join(self.show(s) for s in self.inverted)
        return (f"RingDescriptor(vars={list(self.base_vars)}, relations=[{rel}], "
                f"inverted=[{inv}])")

    # elements -----------------------------------------------------------
    def __call__(self, value) -> Polynomial:
        return self.normal_form(self.poly_ring(value))

    def element(self, text: str) -> Polynomial:
        return self.normal_form(self.poly_ring.parse(text))

    def lift(self, e: Polynomial) -> Polynomial:
        if e.ring == self.poly_ring:
            return e
        if e.ring.modulus != self.poly_ring.modulus and self.poly_ring.modulus is None:
            raise RingMismatchError("element from a prime field used over QQ")
        return e.lift(self.poly_ring)

    def normal_form(self, e: Polynomial) -> Polynomial:
        return self.gb.reduce(self.lift(e))

    def is_zero(self, e: Polynomial) -> bool:
        return not self.normal_form(e).terms

    def equal(self, a: Polynomial, b: Polynomial) -> bool:
        return self.is_zero(self.lift(a) - self.lift(b))

    def is_unit(self, e: Polynomial) -> bool:
        """Unit of the modeled local ring: outside the declared maximal ideal."""
        return bool(self.max_gb.reduce(self.lift(e)).terms)

    def inverse_of(self, e: Polynomial) -> Polynomial | None:
        """An inverse of ``e`` inside the model ring, when one is visible.

        Handles nonzero constants and constant multiples of products of
        inverted elements and their inverse variables; returns None otherwise.
        """
        ring = self.poly_ring
        e = self.normal_form(e)
        if not e.terms:
            return None
        if len(e.terms) != 1:
            lm, lc = e.leading_term(self.order)
            for s, u in zip(self.inverted, self.inverse_vars):
                s = self.normal_form(s)
                if not s.terms or s.leading_term(self.order)[0] != lm:
                    continue
                c = lc * ring.cinv(s.leading_term(self.order)[1])
                if self.equal(e, s.scale(c)):
                    return self.normal_form(ring.gen(u).scale(ring.cinv(c)))
            return None
        (exp, c), = e.terms.items()
        inv = ring.const(ring.cinv(c))
        for i, k in enumerate(exp):
            if not k:
                continue
            name = ring.names[i]
            if name in self.inverse_vars:
                partner = self.inverted[self.inverse_vars.index(name)]
            else:
                var = ring.gen(name)
                if var not in self.inverted:
                    return None
                partner = ring.gen(self.inverse_vars[self.inverted.index(var)])
            inv = inv * partner ** k
        return self.normal_form(inv)

    def ideal(self, gens: Iterable[Polynomial]) -> GroebnerBasis:
        """Groebner basis of ``gens`` plus the full relation ideal, in the model ring."""
        gens = [self.lift(g) for g in gens]
        return groebner(list(self.full_relations()) + gens, ring=self.poly_ring)

    def ideal_equal(self, I: Iterable[Polynomial], J: Iterable[Polynomial]) -> bool:
        return self.ideal(I) == self.ideal(J)

    def ideal_contains(self, I: Iterable[Polynomial], e: Polynomial) -> bool:
        return self.ideal(I).contains(self.lift(e))

    def show(self, e: Polynomial) -> str:
        """Print with inverse variables written as ``inv(s)``."""
        from .poly import poly_format
        names = list(self.poly_ring.names)
        for u, s in zip(self.inverse_vars, self.inverted):
            body = str(s)
            names[names.index(u)] = f"inv({body})"
        return poly_format(self.lift(e), tuple(names))

    # serialization ------------------------------------------------------
    def to_json(self) -> dict:
        doc = {"vars": list(self.base_vars),
               "relations": [str(r) for r in self.relations],
               "inverted": [str(s) for s in self.inverted],
               "maximal": [str(m) for m in self.maximal],
               "field": field_name(self.modulus)}
        if self.inverse_vars != tuple(f"{INVERSE_STEM}{k}" for k in range(len(self.inverted))):
            doc["inverse_vars"] = list(self.inverse_vars)
        return doc

    @classmethod
    def from_json(cls, doc: dict, modulus: int | None = None) -> "RingDescriptor":
        if "field" in doc and modulus is None:
            modulus = field_modulus(doc["field"])
        base = cls.polynomial(doc["vars"], modulus)
        rels = [base.poly_ring.parse(t) for t in doc.get("relations", [])]
        ring = make_quotient(base, rels)
        inverted = doc.get("inverted", [])
        maximal = doc.get("maximal")
        if inverted:
            prime = None
            if maximal is not None:
                prime = maximal
            ring = localize(ring, [ring.poly_ring.parse(t) for t in inverted], prime=prime,
                            names=doc.get("inverse_vars"))
        elif maximal is not None:
            ring = with_maximal(ring, maximal)
        return ring


def _replace(base: RingDescriptor, **kw) -> RingDescriptor:
    args = dict(relations=base.relations, inverted=base.inverted,
                inverse_vars=base.inverse_vars, maximal=base.maximal,
                modulus=base.modulus)
    args.update(kw)
    return RingDescriptor(base.base_vars, **args)


def polynomial_ring(names: Iterable[str], modulus: int | None = None) -> RingDescriptor:
    return RingDescriptor.polynomial(names, modulus)


def make_quotient(base: RingDescriptor, new_relations: Sequence[Polynomial]) -> RingDescriptor:
    if not new_relations:
        return base
    rels = []
    for r in new_relations:
        if isinstance(r, str):
            r = base.poly_ring.parse(r)
        try:
            rels.append(base.lift(r))
        except RingMismatchError as exc:
            raise IncompatibleRingError(f"relation {r} is not in the base ring") from exc
    return _replace(base, relations=base.relations + tuple(rels))


def with_maximal(base: RingDescriptor, maximal: Sequence) -> RingDescriptor:
    ring = base.poly_ring
    return _replace(base, maximal=tuple(ring(m) for m in maximal))


def adjoin_variables(base: RingDescriptor, names: Sequence[str]) -> RingDescriptor:
    """Polynomial extension ``base[names]``; new variables join the maximal ideal."""
    clash = [n for n in names if n in base.poly_ring]
    if clash:
        raise IncompatibleRingError(f"variables already present: {clash}")
    ring = PolyRing(base.base_vars + tuple(names) + base.inverse_vars, base.modulus)
    return RingDescriptor(base.base_vars + tuple(names), modulus=base.modulus,
                          relations=[r.lift(ring) for r in base.relations],
                          inverted=[s.lift(ring) for s in base.inverted],
                          inverse_vars=base.inverse_vars,
                          maximal=[m.lift(ring) for m in base.maximal]
                          + [ring.gen(n) for n in names])


def localize(base: RingDescriptor, invert: Sequence[Polynomial], prime: Sequence | None = None,
             names: Sequence[str] | None = None) -> RingDescriptor:
    """Adjoin inverses of ``invert``; ``prime`` is the prime being localized at.

    Without ``prime`` the base's maximal ideal is kept, minus any generator
    being inverted; a ValueError is raised if that is no longer proper.
    """
    invert = [base.poly_ring(s) if isinstance(s, str) else base.lift(s) for s in invert]
    if not invert:
        return base if prime is None else with_maximal(base, prime)
    for s in invert:
        if base.is_zero(s):
            raise ValueError(f"cannot invert {s}: it is zero in the ring")
    count = len(base.inverse_vars)
    if names is None:
        names = []
        taken = set(base.poly_ring.names)
        k = count
        while len(names) < len(invert):
            n = f"{INVERSE_STEM}{k}"
            if n not in taken:
                names.append(n)
            k += 1
    names = tuple(names)
    ring = base.poly_ring.extend(*names)
    if prime is None:
        drop = {base.normal_form(s) for s in invert}
        maximal = [m for m in base.maximal if base.normal_form(m) not in drop]
    else:
        maximal = [ring.parse(m) if isinstance(m, str) else m for m in prime]
    try:
        return RingDescriptor(base.base_vars, relations=[r.lift(ring) for r in base.relations],
                              inverted=[s.lift(ring) for s in base.inverted + tuple(invert)],
                              inverse_vars=base.inverse_vars + names,
                              maximal=[m.lift(ring) for m in maximal], modulus=base.modulus)
    except ValueError as exc:
        if prime is None:
            raise ValueError("localization needs an explicit prime: " + str(exc)) from exc
        raise


def ring_normal_form(e: Polynomial, R: RingDescriptor) -> Polynomial:
    return R.normal_form(e)


def annihilator(e: Polynomial, R: RingDescriptor) -> list[Polynomial]:
    """Generators of ``(0 :_R e)``, reduced into ``R`` (zero ideal gives [])."""
    e = R.lift(e)
    if R.is_zero(e):
        raise ValueError("annihilator of zero is the unit ideal")
    rels = R.full_relations()
    if not rels:
        return []
    gens = []
    for g in colon_ideal(rels, e):
        g = R.normal_form(g)
        if g.terms and g not in gens:
            gens.append(g)
    return prune_generators(gens, R)


def prune_generators(gens: Sequence[Polynomial], R: RingDescriptor) -> list[Polynomial]:
    """Drop generators that lie in the ideal of the remaining ones (plus relations)."""
    out = list(gens)
    for g in sorted(gens, key=lambda h: (h.total_degree(), len(h.terms)), reverse=True):
        rest = [h for h in out if h is not g]
        if R.ideal_contains(rest, g):
            out = rest
    return out


def is_self_annihilating(e: Polynomial, R: RingDescriptor) -> bool:
    """Test ``(0 : e) = (e)``, the hypothesis shape used for ``x^2 = 0`` rings."""
    return R.ideal_equal(annihilator(e, R), [e])
