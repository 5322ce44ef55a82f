"""Generators for the explicit matrix factorization families.

Each generator returns a :class:`MatrixFactorization` over a polynomial base
ring, plus (through :data:`FAMILIES`) a declared spectrum for the
hypersurface it factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .mf import MatrixFactorization
from .modules import PrimeDecl, SpectrumDeclaration
from .poly import Polynomial
from .rings import RingDescriptor, polynomial_ring


@dataclass(frozen=True)
class FamilySpec:
    family_id: str
    index: int
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "family_id", FAMILY_ALIASES.get(self.family_id, self.family_id))
        if self.family_id not in FAMILIES:
            raise ValueError(f"unknown family {self.family_id!r}; known: {sorted(FAMILIES)}")

    def build(self, modulus: int | None = None) -> MatrixFactorization:
        return FAMILIES[self.family_id].generate(self.index, modulus=modulus, **self.parameters)

    def spectrum(self, mf: MatrixFactorization) -> SpectrumDeclaration:
        return FAMILIES[self.family_id].spectrum(mf, **self.parameters)


def _check_index(name, value, least=1):
    if not isinstance(value, int) or value < least:
        raise ValueError(f"{name} must be an integer >= {least}, got {value!r}")


def _binding(ring: RingDescriptor, value, default: str) -> Polynomial:
    pr = ring.poly_ring
    if value is None:
        return pr.gen(default)
    if isinstance(value, str):
        return pr.parse(value)
    if isinstance(value, Polynomial):
        return value.lift(pr)
    return pr(value)


def _mf(ring, A, B, f):
    return MatrixFactorization.from_rows(A, B, f, ring)


# --------------------------------------------------------------------------
# f = p^2 q r

def gen_p2qr(i: int, p=None, q=None, r=None, *, modulus: int | None = None,
             ring: RingDescriptor | None = None) -> MatrixFactorization:
    """``A_i = ((p,0,r^i),(0,pq,p),(0,0,pr))`` and its mate for ``f = p^2 q r``.

    ``p, q, r`` may be bound to other elements of ``ring`` (for instance
    ``r = p + q`` over ``Q[p,q]``).
    """
    _check_index("i", i)
    ring = ring or polynomial_ring(("p", "q", "r"), modulus)
    p, q, r = (_binding(ring, v, n) for v, n in ((p, "p"), (q, "q"), (r, "r")))
    z = ring.poly_ring.zero()
    ri = r ** i
    A = [[p, z, ri], [z, p * q, p], [z, z, p * r]]
    B = [[p * q * r, z, -q * ri], [z, p * r, -p], [z, z, p * q]]
    return _mf(ring, A, B, p * p * q * r)


def spectrum_p2qr(mf: MatrixFactorization, **_) -> SpectrumDeclaration:
    pr = mf.ring.poly_ring
    p, q, r = pr.gen("p"), pr.gen("q"), pr.gen("r")
    return SpectrumDeclaration((PrimeDecl("p", (p,), (q, r)), PrimeDecl("q", (q,), (p, r)),
                                PrimeDecl("r", (r,), (p, q))), (p, q, r))


# --------------------------------------------------------------------------
# f = x^2 h, h = x^2 s + x y t + y^2 u

def h_poly(ring: RingDescriptor, s=None, t=None, u=None) -> Polynomial:
    pr = ring.poly_ring
    x, y = pr.gen("x"), pr.gen("y")
    s, t, u = (_binding(ring, v, n) for v, n in ((s, "s"), (t, "t"), (u, "u")))
    return x * x * s + x * y * t + y * y * u


def gen_x2h(i: int, s=None, t=None, u=None, *, modulus: int | None = None) -> MatrixFactorization:
    """``A_i = ((x,0,y^i),(0,xy,x),(0,xh,0))`` and its mate for ``f = x^2 h``."""
    _check_index("i", i)
    ring = polynomial_ring(("x", "y", "s", "t", "u"), modulus)
    pr = ring.poly_ring
    x, y, z = pr.gen("x"), pr.gen("y"), pr.zero()
    h = h_poly(ring, s, t, u)
    yi = y ** i
    A = [[x, z, yi], [z, x * y, x], [z, x * h, z]]
    B = [[x * h, -yi * h, yi * y], [z, z, x], [z, x * h, -x * y]]
    return _mf(ring, A, B, x * x * h)


def spectrum_x2h(mf: MatrixFactorization, s=None, t=None, u=None) -> SpectrumDeclaration:
    pr = mf.ring.poly_ring
    x, y = pr.gen("x"), pr.gen("y")
    h = h_poly(mf.ring, s, t, u)
    return SpectrumDeclaration((PrimeDecl("p", (x,), (y, h)), PrimeDecl("q", (h,), (x, y))),
                               tuple(pr.gens()))


# --------------------------------------------------------------------------
# f = x y, z_n = a^n b

def gen_xy_zn(n: int, a=None, b=None, *, x=None, y=None, modulus: int | None = None,
              ring: RingDescriptor | None = None) -> MatrixFactorization:
    """``A_n = ((x, z_n),(0,-y))``, ``B_n = ((y, z_n),(0,-x))`` with ``z_n = a^n b``."""
    _check_index("n", n)
    ring = ring or polynomial_ring(("x", "y", "a", "b"), modulus)
    x, y, a, b = (_binding(ring, v, k) for v, k in ((x, "x"), (y, "y"), (a, "a"), (b, "b")))
    zn = a ** n * b
    z = ring.poly_ring.zero()
    return _mf(ring, [[x, zn], [z, -y]], [[y, zn], [z, -x]], x * y)


def spectrum_xy_zn(mf: MatrixFactorization, **_) -> SpectrumDeclaration:
    """Minimal primes ``(x)``, ``(y)`` and the two components of ``V(x, y, a^n b)``.

    The cokernel is free at the minimal primes; ``(x,y,a)`` and ``(x,y,b)``
    are nonmaximal primes where it is not.
    """
    pr = mf.ring.poly_ring
    x, y, a, b = (pr.gen(v) for v in ("x", "y", "a", "b"))
    return SpectrumDeclaration((PrimeDecl("x", (x,), (y, a, b)), PrimeDecl("y", (y,), (x, a, b)),
                                PrimeDecl("xya", (x, y, a), (b,)),
                                PrimeDecl("xyb", (x, y, b), (a,))), (x, y, a, b))


def xy_zn_witness(n: int, *, modulus: int | None = None) -> MatrixFactorization:
    """A specialization whose minimal primes are visible as single variables.

    Over ``Q[u,v,w]`` take ``x = u^2, y = u v, a = w, b = u``; then
    ``xy = u^3 v`` has minimal primes ``(u)`` and ``(v)``, so the punctured
    spectrum is visible to the declared-prime machinery.
    """
    ring = polynomial_ring(("u", "v", "w"), modulus)
    return gen_xy_zn(n, a="w", b="u", x="u^2", y="u*v", ring=ring)


def spectrum_xy_zn_witness(mf: MatrixFactorization, **_) -> SpectrumDeclaration:
    pr = mf.ring.poly_ring
    u, v, w = pr.gen("u"), pr.gen("v"), pr.gen("w")
    return SpectrumDeclaration((PrimeDecl("u", (u,), (v, w)), PrimeDecl("v", (v,), (u, w))),
                               (u, v, w))


# --------------------------------------------------------------------------
# f = x^n + y g, g = x^2 a + y b

def gen_xn_yg(i: int, n: int = 4, a=None, b=None, *, modulus: int | None = None) -> MatrixFactorization:
    """The 4x4 pair ``((A, -yE),(gE, B))``, ``((B, yE),(-gE, A))`` for ``x^n + y g``.

    Here ``A = ((x^2, x z^i),(0, -x^2))`` and
    ``B = ((x^(n-2), x^(n-3) z^i),(0, -x^(n-2)))``.
    """
    _check_index("i", i, least=0)
    _check_index("n", n, least=4)
    ring = polynomial_ring(("x", "y", "z", "a", "b"), modulus)
    pr = ring.poly_ring
    x, y, zv, zero = pr.gen("x"), pr.gen("y"), pr.gen("z"), pr.zero()
    a, b = _binding(ring, a, "a"), _binding(ring, b, "b")
    g = x * x * a + y * b
    zi = zv ** i
    A = [[x * x, x * zi], [zero, -x * x]]
    B = [[x ** (n - 2), x ** (n - 3) * zi], [zero, -x ** (n - 2)]]

    def blocks(P, Q, c, d):
        # ((P, c E), (d E, Q))
        return [P[0] + [c, zero], P[1] + [zero, c], [d, zero] + Q[0], [zero, d] + Q[1]]

    A2 = blocks(A, B, -y, g)
    B2 = blocks(B, A, y, -g)
    return _mf(ring, A2, B2, x ** n + y * g)


def spectrum_xn_yg(mf: MatrixFactorization, **_) -> SpectrumDeclaration:
    pr = mf.ring.poly_ring
    x, y = pr.gen("x"), pr.gen("y")
    return SpectrumDeclaration(
        (PrimeDecl("p", (x, y), (pr.gen("z"), pr.gen("a"), pr.gen("b"))),), tuple(pr.gens()))


# --------------------------------------------------------------------------
# f = x^2 over Q[x, y]

def gen_a_inf_dim1(j: int, *, modulus: int | None = None) -> MatrixFactorization:
    """``((x, y^j),(0, x))`` with mate ``((x, -y^j),(0, x))``, factoring ``x^2``."""
    _check_index("j", j)
    ring = polynomial_ring(("x", "y"), modulus)
    pr = ring.poly_ring
    x, yj, z = pr.gen("x"), pr.gen("y") ** j, pr.zero()
    return _mf(ring, [[x, yj], [z, x]], [[x, -yj], [z, x]], x * x)


def spectrum_a_inf(mf: MatrixFactorization, **_) -> SpectrumDeclaration:
    pr = mf.ring.poly_ring
    x, y = pr.gen("x"), pr.gen("y")
    return SpectrumDeclaration((PrimeDecl("p", (x,), (y,)),), (x, y))


@dataclass(frozen=True)
class Family:
    name: str
    generate: Callable[..., MatrixFactorization]
    spectrum: Callable[..., SpectrumDeclaration]


FAMILIES = {
    "p2qr": Family("p2qr", gen_p2qr, spectrum_p2qr),
    "x2h": Family("x2h", gen_x2h, spectrum_x2h),
    "xy-zn": Family("xy-zn", gen_xy_zn, spectrum_xy_zn),
    "xn-yg": Family("xn-yg", gen_xn_yg, spectrum_xn_yg),
    "a-inf-1d": Family("a-inf-1d", gen_a_inf_dim1, spectrum_a_inf),
}

# identifier-style spellings of the CLI names
FAMILY_ALIASES = {"xy_zn": "xy-zn", "xn_plus_yg": "xn-yg", "xn_yg": "xn-yg",
                  "a_inf_dim1": "a-inf-1d"}
