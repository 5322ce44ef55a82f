"""Sparse multivariate polynomials over QQ or a prime field.

A polynomial is a map from exponent tuples to nonzero coefficients.  Every
polynomial belongs to a :class:`PolyRing`, which fixes the variable names and
the coefficient field.  Rings compare by value, so two independently built
rings with the same variables and field are interchangeable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

DEFAULT_PRIME = 32003

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class RingMismatchError(ValueError):
    pass


class PolynomialSyntaxError(ValueError):
    pass


def field_modulus(name: str | None) -> int | None:
    """Map a field name (``q``/``QQ`` or ``gf<p>``) to a modulus; None means QQ."""
    if name is None:
        return None
    key = name.strip().lower()
    if key in ("q", "qq", "rational", "rationals"):
        return None
    if key.startswith("gf") and key[2:].isdigit():
        p = int(key[2:])
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"gf modulus must be prime, got {p}")
        return p
    raise ValueError(f"unknown coefficient field {name!r}")


def field_name(modulus: int | None) -> str:
    return "q" if modulus is None else f"gf{modulus}"


class MonomialOrder:
    """A monomial order on exponent tuples.

    ``kind`` is ``degrevlex``, ``lex`` or ``block``.  ``perm`` lists variable
    indices from most to least significant.  For ``block`` the first ``split``
    entries of ``perm`` form the eliminated block, each block compared by
    degrevlex.
    """

    __slots__ = ("kind", "split", "perm", "key")

    def __init__(self, kind: str = "degrevlex", perm: Iterable[int] | None = None,
                 split: int = 0, nvars: int | None = None):
        if kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if perm is None:
            if nvars is None:
                raise ValueError("need perm or nvars")
            perm = range(nvars)
        perm = tuple(perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError("perm must be a permutation of variable indices")
        if kind == "block" and not 0 <= split <= len(perm):
            raise ValueError("block split out of range")
        self.kind = kind
        self.perm = perm
        self.split = split if kind == "block" else 0
        self.key = _make_key(kind, perm, self.split)

    @classmethod
    def elimination(cls, nvars: int, drop: Iterable[int]) -> "MonomialOrder":
        drop = sorted(set(drop))
        keep = [i for i in range(nvars) if i not in drop]
        return cls("block", perm=drop + keep, split=len(drop))

    def _ident(self):
        return (self.kind, self.perm, self.split)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder('block', perm={self.perm}, split={self.split})"
        return f"MonomialOrder({self.kind!r}, perm={self.perm})"


def _make_key(kind, perm, split):
    # Keys are flat int tuples; larger key means larger monomial.
    rev = perm[::-1]
    if kind == "lex":
        if perm == tuple(range(len(perm))):
            return lambda e: e
        return lambda e: tuple([e[i] for i in perm])
    if kind == "degrevlex":
        def key(e):
            return (sum(e),) + tuple([-e[i] for i in rev])
        return key
    first, second = perm[:split], perm[split:]
    r1, r2 = first[::-1], second[::-1]

    def block_key(e):
        return ((sum([e[i] for i in first]),) + tuple([-e[i] for i in r1])
                + (sum([e[i] for i in second]),) + tuple([-e[i] for i in r2]))
    return block_key


class PolyRing:
    """Polynomial ring over named variables; ``modulus`` None means QQ."""

    __slots__ = ("names", "modulus", "_index", "_hash", "order")

    def __init__(self, names: Iterable[str], modulus: int | None = None):
        names = tuple(names)
        for n in names:
            if not _IDENT.match(n):
                raise ValueError(f"invalid variable name {n!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self.modulus = modulus
        self._index = {n: i for i, n in enumerate(names)}
        self._hash = hash((names, modulus))
        self.order = MonomialOrder("degrevlex", nvars=len(names))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.modulus == other.modulus)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PolyRing({list(self.names)}, field={field_name(self.modulus)})"

    def __contains__(self, name):
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    def extend(self, *names: str) -> "PolyRing":
        return PolyRing(self.names + tuple(names), self.modulus)

    def fresh_name(self, stem: str) -> str:
        if stem not in self._index:
            return stem
        k = 0
        while f"{stem}{k}" in self._index:
            k += 1
        return f"{stem}{k}"

    # coefficients -------------------------------------------------------
    def coerce(self, c):
        if self.modulus is None:
            if isinstance(c, int):
                return c
            if isinstance(c, Fraction):
                return c.numerator if c.denominator == 1 else c
            raise TypeError(f"cannot use {c!r} as a rational coefficient")
        p = self.modulus
        if isinstance(c, int):
            return c % p
        if isinstance(c, Fraction):
            if c.denominator % p == 0:
                raise ValueError(f"coefficient {c} is not representable mod {p}")
            return c.numerator * pow(c.denominator, -1, p) % p
        raise TypeError(f"cannot use {c!r} as a coefficient mod {p}")

    def cinv(self, c):
        if self.modulus is None:
            if c == 1 or c == -1:
                return c
            r = Fraction(1) / c
            return r.numerator if r.denominator == 1 else r
        return pow(c, -1, self.modulus)

    # constructors -------------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.coerce(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.gen(n) for n in self.names)

    def monomial(self, exp, coeff=1) -> "Polynomial":
        c = self.coerce(coeff)
        return Polynomial(self, {tuple(exp): c} if c else {})

    def from_terms(self, terms: Mapping) -> "Polynomial":
        out = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != self.nvars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e}")
            c = self.coerce(c)
            if c:
                out[e] = c
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        return poly_parse(text, self)

    def __call__(self, value) -> "Polynomial":
        """Coerce an int, Fraction, string or polynomial into this ring."""
        if isinstance(value, Polynomial):
            return value if value.ring == self else value.lift(self)
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)


class Polynomial:
    """Immutable sparse polynomial.  Treat ``terms`` as read-only."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # structure ----------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __len__(self):
        return len(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> tuple[str, ...]:
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return tuple(self.ring.names[i] for i in sorted(used))

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def is_constant(self) -> bool:
        zero = (0,) * self.ring.nvars
        return all(e == zero for e in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading_term(self, order: MonomialOrder | None = None):
        """Return ``(exponent, coefficient)`` of the leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = (order or self.ring.order).key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self.scale(self.ring.cinv(c))

    # arithmetic ---------------------------------------------------------
    def _other(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError(f"unsupported operand {other!r}")

    def __add__(self, other):
        other = self._other(other)
        mod = self.ring.modulus
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if mod:
                v %= mod
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        mod = self.ring.modulus
        if mod:
            return Polynomial(self.ring, {e: (-c) % mod for e, c in self.terms.items()})
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) + (-self)

    def scale(self, c) -> "Polynomial":
        c = self.ring.coerce(c)
        if not c:
            return self.ring.zero()
        mod = self.ring.modulus
        if mod:
            return Polynomial(self.ring, {e: v * c % mod for e, v in self.terms.items()})
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._other(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero()
        if len(a) < len(b):
            a, b = b, a
        mod = self.ring.modulus
        out: dict = {}
        get = out.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple([x + y for x, y in zip(e1, e2)])
                out[e] = get(e, 0) + c1 * c2
        if mod:
            out = {e: c % mod for e, c in out.items() if c % mod}
        else:
            out = {e: c for e, c in out.items() if c}
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divide_exact(self, other: "Polynomial") -> "Polynomial":
        """Return ``q`` with ``q*other == self``; ValueError if none exists."""
        other = self._other(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        order = self.ring.order
        key = order.key
        lm, lc = other.leading_term(order)
        lc_inv = self.ring.cinv(lc)
        mod = self.ring.modulus
        rem = dict(self.terms)
        quot = {}
        while rem:
            m = max(rem, key=key)
            if any(x < y for x, y in zip(m, lm)):
                raise ValueError("polynomial is not divisible")
            q = tuple([x - y for x, y in zip(m, lm)])
            c = rem[m] * lc_inv
            if mod:
                c %= mod
            quot[q] = c
            for e, v in other.terms.items():
                t = tuple([x + y for x, y in zip(q, e)])
                nv = rem.get(t, 0) - c * v
                if mod:
                    nv %= mod
                if nv:
                    rem[t] = nv
                else:
                    rem.pop(t, None)
        return Polynomial(self.ring, quot)

    # ring changes -------------------------------------------------------
    def lift(self, ring: PolyRing) -> "Polynomial":
        """Re-express in ``ring`` by variable name (up, down or permuted)."""
        if ring == self.ring:
            return self
        if ring.modulus != self.ring.modulus:
            if ring.modulus is None:
                raise RingMismatchError("cannot lift a prime-field polynomial to QQ")
        pos = []
        for i, n in enumerate(self.ring.names):
            pos.append(ring._index.get(n))
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    j = pos[i]
                    if j is None:
                        raise RingMismatchError(
                            f"variable {self.ring.names[i]!r} not in {ring!r}")
                    ne[j] = x
            c = ring.coerce(c)
            if c:
                ne = tuple(ne)
                out[ne] = ring.coerce(out.get(ne, 0) + c)
                if not out[ne]:
                    del out[ne]
        return Polynomial(ring, out)

    def subs(self, values: Mapping[str, "Polynomial | int"]) -> "Polynomial":
        """Substitute polynomials (in the same ring) for named variables."""
        ring = self.ring
        idx = {ring.index(n): ring(v) for n, v in values.items()}
        result = ring.zero()
        cache: dict = {}
        for e, c in self.terms.items():
            kept = list(e)
            term = ring.const(c)
            for i, v in idx.items():
                if e[i]:
                    kept[i] = 0
                    k = (i, e[i])
                    if k not in cache:
                        cache[k] = v ** e[i]
                    term = term * cache[k]
            result = result + term * Polynomial(ring, {tuple(kept): 1})
        return result

    # printing -----------------------------------------------------------
    def __str__(self):
        return poly_format(self)

    def __repr__(self):
        return f"Polynomial({poly_format(self)!r})"


def is_local_unit(p: Polynomial) -> bool:
    """True iff ``p`` has nonzero constant term (a unit at the origin)."""
    return bool(p.constant_coeff())


# --------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^|\*|/|\+|-))")


def _tokens(text):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError(f"malformed token at {text[pos:]!r}")
        pos = m.end()
        if m.group(1) is not None:
            yield ("num", int(m.group(1)))
        elif m.group(2) is not None:
            yield ("var", m.group(2))
        else:
            yield ("op", m.group(3))


def poly_parse(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``[+-] term ([+-] term)*`` with ``term = factor (* factor)*``.

    A factor is an integer, a rational ``a/b``, or ``v`` / ``v^k``.
    """
    toks = list(_tokens(text))
    if not toks:
        raise PolynomialSyntaxError("empty polynomial text")
    pos = 0
    result: dict = {}
    nv = ring.nvars

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        if pos >= len(toks):
            raise PolynomialSyntaxError(f"unexpected end of input in {text!r}")
        t = toks[pos]
        pos += 1
        return t

    first = True
    while pos < len(toks):
        sign = 1
        kind, val = peek()
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        elif not first:
            raise PolynomialSyntaxError(f"expected + or - in {text!r}")
        first = False
        coeff = Fraction(sign)
        exp = [0] * nv
        while True:
            kind, val = take()
            if kind == "num":
                num = Fraction(val)
                if peek() == ("op", "/"):
                    take()
                    k2, den = take()
                    if k2 != "num":
                        raise PolynomialSyntaxError(f"bad rational in {text!r}")
                    if den == 0:
                        raise PolynomialSyntaxError(f"zero denominator in {text!r}")
                    num = Fraction(val, den)
                coeff *= num
            elif kind == "var":
                power = 1
                if peek() == ("op", "^"):
                    take()
                    k2, power = take()
                    if k2 != "num":
                        raise PolynomialSyntaxError(f"bad exponent in {text!r}")
                if val not in ring:
                    raise PolynomialSyntaxError(f"unknown variable {val!r} in {text!r}")
                exp[ring.index(val)] += power
            else:
                raise PolynomialSyntaxError(f"unexpected {val!r} in {text!r}")
            if peek() == ("op", "*"):
                take()
                continue
            break
        try:
            c = ring.coerce(coeff)
        except ValueError as exc:
            raise PolynomialSyntaxError(str(exc)) from exc
        e = tuple(exp)
        v = ring.coerce(result.get(e, 0) + c)
        if v:
            result[e] = v
        else:
            result.pop(e, None)
    return Polynomial(ring, result)


def _fmt_coeff(c, modulus):
    if modulus and c > modulus // 2:
        c = c - modulus
    return c


def poly_format(p: Polynomial, names: tuple[str, ...] | None = None) -> str:
    if not p.terms:
        return "0"
    ring = p.ring
    names = names or ring.names
    parts = []
    for e in sorted(p.terms, key=ring.order.key, reverse=True):
        c = _fmt_coeff(p.terms[e], ring.modulus)
        mono = "*".join(
            names[i] if x == 1 else f"{names[i]}^{x}" for i, x in enumerate(e) if x)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)
