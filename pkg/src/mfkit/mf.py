"""Matrix factorizations ``A B = B A = f E`` and operations on them."""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import Matrix, block, block_diag
from .modules import ModulePresentation
from .poly import Polynomial
from .rings import IncompatibleRingError, RingDescriptor, adjoin_variables, make_quotient


class MatrixFactorization:
    __slots__ = ("A", "B", "f", "ring")

    def __init__(self, A: Matrix, B: Matrix, f: Polynomial, ring: RingDescriptor):
        pr = ring.poly_ring
        if A.nrows != A.ncols or B.nrows != B.ncols or A.shape != B.shape:
            raise ValueError(f"dimension mismatch: A is {A.shape}, B is {B.shape}")
        self.A = A.lift(pr)
        self.B = B.lift(pr)
        self.f = ring.lift(f)
        self.ring = ring

    @classmethod
    def from_rows(cls, A, B, f, ring: RingDescriptor) -> "MatrixFactorization":
        pr = ring.poly_ring
        conv = lambda rows: Matrix(pr, [[pr(x) for x in r] for r in rows])
        return cls(conv(A), conv(B), pr(f), ring)

    @classmethod
    def empty(cls, f: Polynomial, ring: RingDescriptor) -> "MatrixFactorization":
        z = Matrix(ring.poly_ring, [], ncols=0)
        return cls(z, z, f, ring)

    @property
    def size(self) -> int:
        return self.A.nrows

    def __eq__(self, other):
        return (isinstance(other, MatrixFactorization) and self.ring == other.ring
                and self.A == other.A and self.B == other.B and self.f == other.f)

    def __hash__(self):
        return hash((self.A, self.B, self.f))

    def __repr__(self):
        return f"MatrixFactorization(size={self.size}, f={self.f})"

    def to_json(self) -> dict:
        return {"A": self.A.to_json(), "B": self.B.to_json(), "f": str(self.f),
                "ring": self.ring.to_json()}

    @classmethod
    def from_json(cls, doc: dict, modulus: int | None = None) -> "MatrixFactorization":
        ring = RingDescriptor.from_json(doc["ring"], modulus)
        pr = ring.poly_ring
        return cls(Matrix.from_json(pr, doc["A"]), Matrix.from_json(pr, doc["B"]),
                   pr.parse(doc["f"]), ring)


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    failing: tuple | None = None  # (product, row, col, expected, got)

    def __bool__(self):
        return self.ok

    def to_json(self):
        doc = {"ok": self.ok}
        if self.failing:
            prod, i, j, want, got = self.failing
            doc["failing"] = {"product": prod, "row": i, "col": j,
                              "expected": want, "got": got}
        return doc


def mf_verify(mf: MatrixFactorization) -> VerifyReport:
    """Check ``AB = BA = fE`` entrywise; report the first failing entry."""
    ring = mf.ring
    n = mf.size
    for name, prod in (("AB", mf.A @ mf.B), ("BA", mf.B @ mf.A)):
        for i in range(n):
            for j in range(n):
                want = mf.f if i == j else ring.poly_ring.zero()
                got = prod[i, j]
                if not ring.equal(got, want):
                    return VerifyReport(False, (name, i, j, str(want), str(ring.normal_form(got))))
    return VerifyReport(True)


def mf_syzygy(mf: MatrixFactorization) -> MatrixFactorization:
    return MatrixFactorization(mf.B, mf.A, mf.f, mf.ring)


def mf_direct_sum(*mfs: MatrixFactorization) -> MatrixFactorization:
    if not mfs:
        raise ValueError("direct sum needs at least one factorization")
    ring, f = mfs[0].ring, mfs[0].f
    for m in mfs[1:]:
        if m.ring != ring:
            raise IncompatibleRingError("summands live over different rings")
        if m.f != f:
            raise ValueError(f"mismatched f: {f} vs {m.f}")
    pr = ring.poly_ring
    return MatrixFactorization(block_diag(*(m.A for m in mfs), ring=pr),
                               block_diag(*(m.B for m in mfs), ring=pr), f, ring)


def mf_cokernel(mf: MatrixFactorization) -> ModulePresentation:
    """``Cok A`` as a module over ``S/(f)``."""
    R = make_quotient(mf.ring, [mf.f])
    return ModulePresentation(mf.A, R, source=mf)


def hypersurface(mf: MatrixFactorization) -> RingDescriptor:
    return make_quotient(mf.ring, [mf.f])


def knoerrer_sheet(mf: MatrixFactorization, g: Polynomial, var: str = "w") -> MatrixFactorization:
    """Factorization of ``f + var^2 g`` over ``S[var]`` built from 2x2 blocks.

    ``g`` may use variables outside ``S``; they are adjoined first.
    """
    S = mf.ring
    if var in S.poly_ring or var in g.ring:
        raise IncompatibleRingError(f"variable {var!r} already present")
    extra = [v for v in g.ring.names if v not in S.poly_ring]
    ring = adjoin_variables(S, extra + [var]) if extra else adjoin_variables(S, [var])
    pr = ring.poly_ring
    g = g.lift(pr)
    x = pr.gen(var)
    n = mf.size
    A, B = mf.A.lift(pr), mf.B.lift(pr)
    xE = Matrix.identity(pr, n, x)
    mxE = Matrix.identity(pr, n, -x)
    xgE = Matrix.identity(pr, n, x * g)
    mxgE = Matrix.identity(pr, n, -x * g)
    A2 = block([[A, mxE], [xgE, B]])
    B2 = block([[B, xE], [mxgE, A]])
    return MatrixFactorization(A2, B2, mf.f.lift(pr) + x * x * g, ring)


def sheet_special_fiber(sheet: MatrixFactorization, mf: MatrixFactorization, var: str = "w"):
    """Return (``Cok`` of the sheet mod ``var``, ``Cok(A) + Cok(B)``) over one ring."""
    from .modules import base_change
    R2 = hypersurface(sheet)
    target = make_quotient(R2, [R2.poly_ring.gen(var)])
    fiber = base_change(ModulePresentation(sheet.A, R2), target)
    pr = target.poly_ring
    split = ModulePresentation(block_diag(mf.A.lift(pr), mf.B.lift(pr), ring=pr), target)
    return fiber, split


def _fingerprint(mats, i):
    return tuple(sorted((str(m.rows[i][k]), str(m.rows[k][i]))
                        for m in mats for k in range(m.nrows))) + tuple(str(m.rows[i][i]) for m in mats)


def permutation_equivalent(m1: MatrixFactorization, m2: MatrixFactorization) -> list[int] | None:
    """A simultaneous row/column permutation taking ``m2`` to ``m1``, or None.

    Backtracking over positions, restricted to indices with matching
    row/column fingerprints.
    """
    if m1.size != m2.size or m1.ring != m2.ring or m1.f != m2.f:
        return None
    n = m1.size
    p1, p2 = (m1.A, m1.B), (m2.A, m2.B)
    fp1 = [_fingerprint(p1, i) for i in range(n)]
    fp2 = [_fingerprint(p2, i) for i in range(n)]
    if sorted(fp1) != sorted(fp2):
        return None
    perm: list[int] = []
    used = [False] * n

    def ok(i, c):
        for k in range(i):
            d = perm[k]
            for a, b in zip(p1, p2):
                if a.rows[i][k] != b.rows[c][d] or a.rows[k][i] != b.rows[d][c]:
                    return False
        return all(a.rows[i][i] == b.rows[c][c] for a, b in zip(p1, p2))

    def search(i):
        if i == n:
            return True
        for c in range(n):
            if not used[c] and fp2[c] == fp1[i] and ok(i, c):
                used[c] = True
                perm.append(c)
                if search(i + 1):
                    return True
                perm.pop()
                used[c] = False
        return False

    return list(perm) if search(0) else None
