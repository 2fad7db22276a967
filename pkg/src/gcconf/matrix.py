"""Dense matrices of MPoly entries.

Sizes in this library are tiny (N up to ~6, module rank up to ~24), so
storage is a dense tuple of rows.  Products skip zero entries, which matters
because matrix-unit actions are mostly zero.
"""

from .errors import DimensionMismatch
from .poly import ZERO, ONE, MPoly, as_poly, fmt_scalar, poly_to_json, scalar


class PolyMatrix:
    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries):
        rows = [tuple(as_poly(x) for x in row) for row in entries]
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        self._e = tuple(rows)
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0

    @classmethod
    def _wrap(cls, rows):
        m = object.__new__(cls)
        m._e = rows
        m.rows = len(rows)
        m.cols = len(rows[0]) if rows else 0
        return m

    @classmethod
    def zeros(cls, r, c=None):
        c = r if c is None else c
        return cls._wrap(tuple((ZERO,) * c for _ in range(r)))

    @classmethod
    def identity(cls, n):
        return cls._wrap(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def unit(cls, n, i, j):
        """Matrix unit E_ij (0-based indices)."""
        return cls._wrap(tuple(tuple(ONE if (a, b) == (i, j) else ZERO for b in range(n)) for a in range(n)))

    @classmethod
    def constant(cls, grid):
        return cls([[MPoly(scalar(x)) for x in row] for row in grid])

    @classmethod
    def diag(cls, items):
        n = len(items)
        return cls([[items[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, blocks):
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[ZERO] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b._e[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls._wrap(tuple(tuple(r) for r in out))

    # -- access ----------------------------------------------------------
    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def tolist(self):
        return [list(r) for r in self._e]

    def entries(self):
        """Iterate (i, j, poly) over nonzero entries."""
        for i, row in enumerate(self._e):
            for j, p in enumerate(row):
                if p:
                    yield i, j, p

    def submatrix(self, rows, cols):
        return PolyMatrix._wrap(tuple(tuple(self._e[i][j] for j in cols) for i in rows))

    def is_zero(self):
        return not any(p for row in self._e for p in row)

    def is_square(self):
        return self.rows == self.cols

    def is_constant(self):
        return all(p.is_constant() for row in self._e for p in row)

    def scalars(self):
        """Nested list of Scalars; the matrix must be constant."""
        return [[p.constant_value() for p in row] for row in self._e]

    def variables(self):
        used = set()
        for row in self._e:
            for p in row:
                used |= p.variables()
        return used

    # -- arithmetic ------------------------------------------------------
    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other):
        self._check_same(other)
        return PolyMatrix._wrap(
            tuple(tuple(a + b if b else a for a, b in zip(r, s)) for r, s in zip(self._e, other._e))
        )

    def __sub__(self, other):
        self._check_same(other)
        return PolyMatrix._wrap(
            tuple(tuple(a - b if b else a for a, b in zip(r, s)) for r, s in zip(self._e, other._e))
        )

    def __neg__(self):
        return PolyMatrix._wrap(tuple(tuple(-a if a else a for a in r) for r in self._e))

    def __mul__(self, c):
        """Entrywise product with a scalar or MPoly."""
        if isinstance(c, PolyMatrix):
            raise TypeError("use @ for matrix products")
        c = as_poly(c)
        if not c:
            return PolyMatrix.zeros(self.rows, self.cols)
        return PolyMatrix._wrap(tuple(tuple(a * c if a else a for a in r) for r in self._e))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.cols
        right = [[(j, p) for j, p in enumerate(row) if p] for row in other._e]
        out = []
        for row in self._e:
            acc = [None] * cols
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, b in right[k]:
                    t = a * b
                    acc[j] = t if acc[j] is None else acc[j] + t
            out.append(tuple(ZERO if x is None else x for x in acc))
        return PolyMatrix._wrap(tuple(out))

    @property
    def T(self):
        return PolyMatrix._wrap(tuple(zip(*self._e)) if self.rows else ())

    def map(self, f):
        return PolyMatrix._wrap(tuple(tuple(f(a) if a else a for a in r) for r in self._e))

    def subs(self, v, replacement):
        replacement = as_poly(replacement)
        return self.map(lambda p: p.subs(v, replacement))

    def kron_identity(self, m):
        """I_m ⊗ self."""
        return PolyMatrix.block_diag([self] * m)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self._e == other._e

    def __hash__(self):
        return hash(self._e)

    def first_difference(self, other):
        """(i, j, self_ij - other_ij) for the first differing entry, or None."""
        self._check_same(other)
        for i, (r, s) in enumerate(zip(self._e, other._e)):
            for j, (a, b) in enumerate(zip(r, s)):
                if a != b:
                    return i, j, a - b
        return None

    def __str__(self):
        return "[" + "; ".join(", ".join(str(p) for p in r) for r in self._e) + "]"

    __repr__ = __str__

    def to_json(self):
        return [[poly_to_json(p) for p in r] for r in self._e]

    def to_scalar_json(self):
        return [[fmt_scalar(x) for x in r] for r in self.scalars()]
