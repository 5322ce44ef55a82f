"""Dense matrices of polynomials (row-major, immutable)."""

from __future__ import annotations

from typing import Callable, Sequence

from .poly import PolyRing, Polynomial


class Matrix:
    __slots__ = ("ring", "rows", "nrows", "ncols", "_hash")

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence], ncols: int | None = None):
        rows = tuple(tuple(ring(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix rows")
        self.ring = ring
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None

    @classmethod
    def identity(cls, ring: PolyRing, n: int, scale=1) -> "Matrix":
        c = ring(scale)
        z = ring.zero()
        return cls(ring, [[c if i == j else z for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, ring: PolyRing, m: int, n: int) -> "Matrix":
        z = ring.zero()
        return cls(ring, [[z] * n for _ in range(m)], ncols=n)

    @classmethod
    def parse(cls, ring: PolyRing, rows: Sequence[Sequence[str]], ncols: int | None = None):
        return cls(ring, [[ring.parse(str(x)) for x in r] for r in rows], ncols=ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.shape == other.shape
                and self.rows == other.rows)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix[{self.nrows}x{self.ncols}]({body})"

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"dimension mismatch: {self.shape} @ {other.shape}")
        z = self.ring.zero()
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = z
                for a, b in zip(r, c):
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(self.ring, out, ncols=other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("dimension mismatch in matrix sum")
        return Matrix(self.ring, [[a + b for a, b in zip(r, s)]
                                  for r, s in zip(self.rows, other.rows)], ncols=self.ncols)

    def __neg__(self):
        return self.map(lambda a: -a)

    def scale(self, c) -> "Matrix":
        c = self.ring(c)
        return self.map(lambda a: a * c)

    def map(self, fn: Callable[[Polynomial], Polynomial], ring: PolyRing | None = None) -> "Matrix":
        ring = ring or self.ring
        return Matrix(ring, [[fn(a) for a in r] for r in self.rows], ncols=self.ncols)

    def lift(self, ring: PolyRing) -> "Matrix":
        if ring == self.ring:
            return self
        return self.map(lambda a: a.lift(ring), ring)

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, [list(c) for c in zip(*self.rows)] if self.nrows else [],
                      ncols=self.nrows)

    def delete(self, row: int | None = None, col: int | None = None) -> "Matrix":
        rows = [r for i, r in enumerate(self.rows) if i != row]
        if col is not None:
            rows = [r[:col] + r[col + 1:] for r in rows]
        ncols = self.ncols - (col is not None)
        return Matrix(self.ring, rows, ncols=ncols)

    def permute(self, perm: Sequence[int]) -> "Matrix":
        """Simultaneous row/column permutation: result[i][j] = self[perm[i]][perm[j]]."""
        return Matrix(self.ring, [[self.rows[a][b] for b in perm] for a in perm], ncols=self.ncols)

    def entries(self):
        for r in self.rows:
            yield from r

    def to_json(self) -> dict:
        return {"rows": self.nrows, "cols": self.ncols,
                "entries": [[str(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, ring: PolyRing, doc: dict) -> "Matrix":
        entries = doc.get("entries", [])
        m = cls.parse(ring, entries, ncols=doc.get("cols"))
        if "rows" in doc and doc["rows"] != m.nrows:
            raise ValueError(f"matrix declares {doc['rows']} rows, has {m.nrows}")
        return m


def block(blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a block matrix from a grid of conformable blocks."""
    ring = blocks[0][0].ring
    rows = []
    for brow in blocks:
        h = brow[0].nrows
        if any(b.nrows != h for b in brow):
            raise ValueError("block rows of unequal height")
        for i in range(h):
            rows.append([x for b in brow for x in b.rows[i]])
    ncols = sum(b.ncols for b in blocks[0])
    return Matrix(ring, rows, ncols=ncols)


def block_diag(*mats: Matrix, ring: PolyRing | None = None) -> Matrix:
    ring = ring or (mats[0].ring if mats else None)
    if ring is None:
        raise ValueError("ring required for an empty block sum")
    m = sum(a.nrows for a in mats)
    n = sum(a.ncols for a in mats)
    z = ring.zero()
    rows = [[z] * n for _ in range(m)]
    r0 = c0 = 0
    for a in mats:
        for i, r in enumerate(a.rows):
            rows[r0 + i][c0:c0 + a.ncols] = [x.lift(ring) for x in r]
        r0 += a.nrows
        c0 += a.ncols
    return Matrix(ring, rows, ncols=n)
