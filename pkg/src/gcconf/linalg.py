"""Exact linear algebra over the rationals.

Gaussian elimination scans columns left to right and takes the first row
(top to bottom) with a nonzero entry as pivot, so every result is
deterministic.
"""

from dataclasses import dataclass, field

from .errors import DimensionMismatch, SingularMatrix
from .matrix import PolyMatrix
from .poly import Scalar, scalar


def _rows(M):
    if isinstance(M, PolyMatrix):
        if not M.is_constant():
            raise ValueError("matrix has non-constant entries")
        return M.scalars()
    return [[scalar(x) for x in row] for row in M]


def rref(M):
    """Reduced row echelon form and pivot columns."""
    A = [list(r) for r in _rows(M)]
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M):
    return len(rref(M)[1])


@dataclass
class Solution:
    rank: int
    particular: list | None
    kernel: list = field(default_factory=list)

    @property
    def consistent(self):
        return self.particular is not None


def exact_solve(M, b):
    """Solve M x = b exactly.

    Returns the rank, one particular solution (None when inconsistent) and a
    kernel basis.  An inconsistent system is a normal result, not an error.
    """
    A = _rows(M)
    b = [scalar(x) for x in b]
    if len(A) != len(b):
        raise DimensionMismatch(f"{len(A)} equations but {len(b)} right-hand sides")
    ncols = len(A[0]) if A else 0
    R, piv = rref([row + [bi] for row, bi in zip(A, b)])
    if ncols in piv:
        sol = None
        piv = [p for p in piv if p != ncols]
    else:
        sol = [Scalar(0)] * ncols
        for i, c in enumerate(piv):
            sol[c] = R[i][ncols]
    free = [c for c in range(ncols) if c not in piv]
    kernel = []
    for f in free:
        v = [Scalar(0)] * ncols
        v[f] = Scalar(1)
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
        kernel.append(v)
    return Solution(len(piv), sol, kernel)


def det(M):
    A = [list(r) for r in _rows(M)]
    n = len(A)
    if any(len(r) != n for r in A):
        raise DimensionMismatch("determinant of a non-square matrix")
    d = Scalar(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return Scalar(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        inv = 1 / A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d


def constant_inverse(M):
    """Exact inverse of a constant square matrix, as a PolyMatrix."""
    A = _rows(M)
    n = len(A)
    if any(len(r) != n for r in A):
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = [row + [Scalar(1) if i == j else Scalar(0) for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return PolyMatrix.constant([r[n:] for r in R])


def image_basis(M):
    """Columns of M at the pivot positions (first independent columns)."""
    A = _rows(M)
    _, piv = rref(A)
    return [[A[i][c] for i in range(len(A))] for c in piv]


def matmul(A, B):
    """Product of plain nested-list Scalar matrices."""
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), Scalar(0)) for col in Bt] for row in A]


def kron(A, B):
    return [[a * b for a in ra for b in rb] for ra in A for rb in B]


def identity(n):
    return [[Scalar(1) if i == j else Scalar(0) for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(c) for c in zip(*A)]
