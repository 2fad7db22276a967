"""Virasoro elements of gc_N: verification, standardness, constructors and
the exhaustive degree-one grid check."""

import itertools
from dataclasses import dataclass, field

from .errors import ConstraintViolated, DimensionMismatch, NotIdempotent, NotVirasoro
from .gc import GcElement, GcLambdaValue, J, gc_sum, lambda_bracket
from .linalg import exact_solve
from .matrix import PolyMatrix
from .poly import D, DEL, LAMBDA, MPoly, Scalar, as_poly, scalar

VIR_FACTOR = DEL + 2 * LAMBDA


@dataclass
class VirasoroCertificate:
    element: GcElement
    is_virasoro: bool
    residual: GcLambdaValue
    degree: int | None
    is_standard: bool | None = None


def virasoro_residual(g):
    """[g_λ g] - (∂+2λ)g."""
    return lambda_bracket(g, g) - g * VIR_FACTOR


def is_virasoro(g):
    res = virasoro_residual(g)
    cert = VirasoroCertificate(g, res.is_zero(), res, g.degree)
    if cert.is_virasoro:
        cert.is_standard = has_standard_factorization(g)
    return cert


def _factor(P):
    """(f, C) with P = f(∂)·C for a constant matrix C, or None.

    f is the first nonzero entry in row-major order; C holds the constant
    ratios of each entry to f.
    """
    nz = list(P.entries())
    if not nz:
        return MPoly(), PolyMatrix.zeros(P.rows, P.cols)
    f = nz[0][2]
    grid = [[Scalar(0)] * P.cols for _ in range(P.rows)]
    for i, j, p in nz:
        c = p.ratio_to(f)
        if c is None:
            return None
        grid[i][j] = c
    return f, PolyMatrix.constant(grid)


def has_standard_factorization(g):
    """Every structure matrix is a scalar polynomial times a constant matrix."""
    return all(_factor(P) is not None for P in g.terms.values())


def is_standard(g, require_virasoro=True):
    if require_virasoro and not is_virasoro(g).is_virasoro:
        raise NotVirasoro(f"{g} is not a Virasoro element")
    return has_standard_factorization(g)


# -- constructors --------------------------------------------------------


def _const(A, N=None, name="matrix"):
    if isinstance(A, PolyMatrix):
        M = A
    else:
        M = PolyMatrix.constant(A)
    if not M.is_constant():
        raise ValueError(f"{name} must have constant entries")
    if not M.is_square() or (N is not None and M.rows != N):
        raise DimensionMismatch(f"{name} has shape {M.shape}")
    return M


def _check_idempotent(A, name="A"):
    if A.is_zero():
        raise NotIdempotent(f"{name} is zero")
    if A @ A != A:
        raise NotIdempotent(f"{name}^2 != {name}")


def make_gc1_virasoro(a, b):
    """(a∂+b)J^0 + J^1 in gc_1."""
    f = DEL * scalar(a) + scalar(b)
    return J(0, [[1]], f) + J(1, [[1]])


def make_canonical(a, b, N):
    """Π(L_{a,b}) = (a∂+b)J^0_{I_N} + J^1_{I_N}."""
    I = PolyMatrix.identity(N)
    return J(0, I, DEL * scalar(a) + scalar(b)) + J(1, I)


def make_standard_deg1(form, a, b, A, B):
    """Form 1: (a∂+b)J^0_{ABA} + J^1_A.  Form 2: aJ^0_{AB} + J^1_A (b unused)."""
    A = _const(A, name="A")
    B = _const(B, A.rows, name="B")
    _check_idempotent(A)
    if form == 1:
        if b is None:
            raise ValueError("form 1 needs b")
        return J(0, A @ B @ A, DEL * scalar(a) + scalar(b)) + J(1, A)
    if form == 2:
        return J(0, A @ B, scalar(a)) + J(1, A)
    raise ValueError("form must be 1 or 2")


def make_standard_higher(A, coeffs):
    """J^1_A + Σ a_i J^i_{A B_i} for (i, a_i, B_i) in coeffs, i ≥ 2, A B_i A = 0."""
    A = _const(A, name="A")
    _check_idempotent(A)
    g = J(1, A)
    for i, a_i, B_i in coeffs:
        if i < 2:
            raise ValueError(f"degree {i} < 2 in higher terms")
        B_i = _const(B_i, A.rows, name=f"B_{i}")
        if not (A @ B_i @ A).is_zero():
            raise ConstraintViolated(f"A·B_{i}·A != 0")
        g = g + J(i, A @ B_i, scalar(a_i))
    return g


def _proportional(X, Y):
    """Nonzero constant matrices X, Y are scalar multiples of each other."""
    i, j, y = next(iter(Y.entries()))
    c = X[i, j].ratio_to(y)
    return c is not None and X == Y * c


def make_nonstandard(kind, A, B, a, C=None, Dm=None, b=None, strict=True):
    """Non-standard Virasoro elements built from orthogonal idempotents.

    T1 = J^1_{ΣA_i} + J^0_{A_1B_1A_1} + Σ_{i≥2} (∂+a_i) J^0_{A_iB_iA_i}
    T2 = J^1_{ΣA_i} + Σ_i (∂+a_i) J^0_{A_iB_iA_i}
    T3 = T1 + J^1_C + Σ_{j≥2} b_j J^j_{C D_j},   T4 = T2 + J^1_C + Σ_j b_j J^j_{C D_j}

    ``A``, ``B``, ``a`` are lists of length k ≥ 2; ``Dm`` and ``b`` list D_j, b_j
    for j = 2..ℓ.  With ``strict`` the extra condition C·D_j·C = 0 is enforced;
    without it the literal hypotheses of the construction are used and the
    result need not be Virasoro.
    """
    kind = kind.upper()
    if kind not in ("T1", "T2", "T3", "T4"):
        raise ValueError(f"unknown kind {kind}")
    k = len(A)
    if k < 2 or len(B) != k or len(a) != k:
        raise ConstraintViolated("need k ≥ 2 matching A_i, B_i, a_i")
    A = [_const(x, name=f"A_{i + 1}") for i, x in enumerate(A)]
    N = A[0].rows
    if N < 2:
        raise ConstraintViolated("N must be at least 2")
    B = [_const(x, N, name=f"B_{i + 1}") for i, x in enumerate(B)]
    a = [scalar(x) for x in a]
    ABA = []
    for i in range(k):
        try:
            _check_idempotent(A[i], f"A_{i + 1}")
        except NotIdempotent as exc:
            raise ConstraintViolated(str(exc)) from exc
        m = A[i] @ B[i] @ A[i]
        if m.is_zero():
            raise ConstraintViolated(f"A_{i + 1}·B_{i + 1}·A_{i + 1} = 0")
        ABA.append(m)
    for i, j in itertools.combinations(range(k), 2):
        if not (A[i] @ A[j]).is_zero() or not (A[j] @ A[i]).is_zero():
            raise ConstraintViolated(f"A_{i + 1} and A_{j + 1} are not orthogonal")
        if _proportional(ABA[i], ABA[j]):
            raise ConstraintViolated(f"A_{i + 1}B_{i + 1}A_{i + 1} and A_{j + 1}B_{j + 1}A_{j + 1} are proportional")
        if a[i] == a[j]:
            raise ConstraintViolated(f"a_{i + 1} = a_{j + 1}")

    total = A[0]
    for x in A[1:]:
        total = total + x
    parts = []
    for i in range(k):
        if kind in ("T1", "T3") and i == 0:
            parts.append(J(0, ABA[0]))
        else:
            parts.append(J(0, ABA[i], DEL + a[i]))

    if kind in ("T3", "T4"):
        if C is None or Dm is None or b is None:
            raise ConstraintViolated(f"{kind} needs C, D_j and b_j")
        if N < 3:
            raise ConstraintViolated("N must be at least 3")
        C = _const(C, N, name="C")
        Dm = [_const(x, N, name=f"D_{j + 2}") for j, x in enumerate(Dm)]
        b = [scalar(x) for x in b]
        if not Dm or len(Dm) != len(b):
            raise ConstraintViolated("need ℓ ≥ 2 with matching D_j, b_j")
        try:
            _check_idempotent(C, "C")
        except NotIdempotent as exc:
            raise ConstraintViolated(str(exc)) from exc
        for i in range(k):
            if not (A[i] @ C).is_zero() or not (C @ A[i]).is_zero():
                raise ConstraintViolated(f"A_{i + 1} and C are not orthogonal")
            for j, Dj in enumerate(Dm):
                if not (C @ Dj @ A[i]).is_zero():
                    raise ConstraintViolated(f"C·D_{j + 2}·A_{i + 1} != 0")
        if strict:
            for j, Dj in enumerate(Dm):
                if not (C @ Dj @ C).is_zero():
                    raise ConstraintViolated(f"C·D_{j + 2}·C != 0 (needed for J^1_C + Σ b_j J^j_(C D_j) to be Virasoro)")
        total = total + C
        for j, (Dj, bj) in enumerate(zip(Dm, b)):
            parts.append(J(j + 2, C @ Dj, bj))
    return gc_sum([J(1, total)] + parts)


# -- degree-one grid -----------------------------------------------------


def _solvable(target, linear_map, N):
    """Is target = linear_map(B) for some constant N×N matrix B?"""
    cols = []
    for p in range(N):
        for q in range(N):
            img = linear_map(PolyMatrix.unit(N, p, q)).scalars()
            cols.append([img[r][c] for r in range(N) for c in range(N)])
    M = [list(row) for row in zip(*cols)]
    t = target.scalars()
    rhs = [t[r][c] for r in range(N) for c in range(N)]
    return exact_solve(M, rhs).consistent


def deg1_forms(g):
    """Which of the degree-one standard forms g matches: subset of {1, 2}."""
    N = g.N
    if g.degree != 1:
        return set()
    A = g.structure_matrix(1)
    if not A.is_constant() or A.is_zero() or A @ A != A:
        return set()
    P0 = g.structure_matrix(0)
    if P0.is_zero():
        return {1, 2}
    fc = _factor(P0)
    if fc is None:
        return set()
    f, Cm = fc
    forms = set()
    if f.degree(D) <= 1 and _solvable(Cm, lambda B: A @ B @ A, N):
        forms.add(1)
    if f.is_constant() and _solvable(Cm, lambda B: A @ B, N):
        forms.add(2)
    return forms


def _gc1_form_ok(g):
    P1 = g.structure_matrix(1)
    P0 = g.structure_matrix(0)
    return g.degree == 1 and P1[0, 0] == 1 and P0[0, 0].degree(D) <= 1


@dataclass
class GridReport:
    N: int
    coeff_set: list
    poly_deg_bound: int
    candidates: int = 0
    virasoro: list = field(default_factory=list)
    standard: int = 0
    counterexamples: list = field(default_factory=list)


def _grid_polys(coeff_set, bound):
    for cs in itertools.product(coeff_set, repeat=bound + 1):
        yield MPoly({(e,): c for e, c in enumerate(cs)})


def classify_deg1_grid(N, coeff_set, poly_deg_bound):
    """Enumerate every element of degree ≤ 1 with coefficients from the grid and
    check each Virasoro element found against the degree-one classification."""
    coeff_set = sorted({scalar(c) for c in coeff_set})
    report = GridReport(N, coeff_set, poly_deg_bound)
    if not coeff_set:
        return report
    polys = list(_grid_polys(coeff_set, poly_deg_bound))
    for entries in itertools.product(polys, repeat=2 * N * N):
        report.candidates += 1
        P0 = PolyMatrix([entries[r * N:(r + 1) * N] for r in range(N)])
        P1 = PolyMatrix([entries[N * N + r * N:N * N + (r + 1) * N] for r in range(N)])
        g = GcElement(N, {0: P0, 1: P1})
        if g.is_zero() or not virasoro_residual(g).is_zero():
            continue
        report.virasoro.append(g)
        if N == 1:
            report.standard += 1
            if not _gc1_form_ok(g):
                report.counterexamples.append(g)
        elif has_standard_factorization(g):
            report.standard += 1
            if not deg1_forms(g):
                report.counterexamples.append(g)
    return report
