"""Finite free conformal modules over Vir, HV and gc_N.

A module of rank k is given by its action on a basis row Y = (v_1, ..., v_k):
for a generator J^n_{E_ij} the action is J^n_{E_ij} λ Y = Y·F(∂, λ) with F a
k×k polynomial matrix, so column c of F is the image of v_c.  Only matrix
units are stored; the action of J^n_A is linear in A.

Vir and HV are treated as the subalgebras of gc_1 spanned by J^1 (which is L)
and by J^0, J^1.  Their modules only carry actions in those degrees.
"""

import threading
from dataclasses import dataclass

from .errors import CutoffExceeded, DimensionMismatch, InputError, NotVirasoro, SingularMatrix
from .gc import bracket_at, unit_element
from .linalg import constant_inverse, det
from .matrix import PolyMatrix
from .poly import D, DEL, LAM, LAMBDA, MU_, MPoly, scalar

ALGEBRA_DEGREES = {"vir": (1,), "hv": (0, 1), "gc": None}
DEFAULT_NMAX = 4


class ConformalModule:
    """An immutable module presented by a recipe.

    Build instances with the recipe functions below (vir_module, gc_standard,
    direct_sum, ...); ``unit_action`` materializes and memoizes the tables.
    """

    def __init__(self, algebra, N, rank, kind, params, cutoff=None):
        if algebra not in ALGEBRA_DEGREES:
            raise ValueError(f"unknown algebra {algebra!r}")
        if algebra != "gc" and N != 1:
            raise DimensionMismatch(f"{algebra} modules have N = 1")
        if rank < 1:
            raise ValueError("rank must be at least 1")
        self.algebra = algebra
        self.N = N
        self.rank = rank
        self.kind = kind
        self.params = params
        self.cutoff = cutoff  # None: exact for every degree
        self._cache = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"ConformalModule({self.algebra}, N={self.N}, rank={self.rank}, {self.kind})"

    @property
    def degrees(self):
        return ALGEBRA_DEGREES[self.algebra]

    def allows(self, n):
        d = self.degrees
        return n >= 0 and (d is None or n in d)

    def unit_action(self, n, i, j):
        """F with J^n_{E_ij} λ Y = Y·F(∂, λ); 0-based i, j."""
        if not self.allows(n):
            raise InputError(f"degree {n} is not part of the {self.algebra} algebra")
        if not (0 <= i < self.N and 0 <= j < self.N):
            raise DimensionMismatch(f"matrix unit E_{i + 1}{j + 1} outside gc_{self.N}")
        if self.cutoff is not None and n > self.cutoff:
            raise CutoffExceeded(f"degree {n} exceeds table cutoff {self.cutoff}")
        key = (n, i, j)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        F = _BUILDERS[self.kind](self, n, i, j)
        with self._lock:
            self._cache.setdefault(key, F)
        return F

    def tables(self, n_max=DEFAULT_NMAX):
        """All unit actions with degree ≤ n_max, keyed by (n, i, j)."""
        out = {}
        for n in range(n_max + 1):
            if not self.allows(n) or (self.cutoff is not None and n > self.cutoff):
                continue
            for i in range(self.N):
                for j in range(self.N):
                    out[n, i, j] = self.unit_action(n, i, j)
        return out


# -- builders -------------------------------------------------------------


def _vir(M, n, i, j):
    delta, alpha = M.params
    return PolyMatrix([[DEL + LAMBDA * delta + alpha]])


def _hv(M, n, i, j):
    delta, alpha, beta = M.params
    if n == 0:
        return PolyMatrix([[MPoly(beta)]])
    return PolyMatrix([[DEL + LAMBDA * delta + alpha]])


def _standard(M, n, i, j):
    (alpha,) = M.params
    return PolyMatrix.unit(M.N, i, j) * (DEL + LAMBDA + alpha) ** n


def _dual_std(M, n, i, j):
    (alpha,) = M.params
    return PolyMatrix.unit(M.N, j, i) * (-((alpha - DEL) ** n))


def _direct_sum(M, n, i, j):
    return PolyMatrix.block_diag([p.unit_action(n, i, j) for p in M.params])


def _basis_change(M, n, i, j):
    inner, U, Uinv = M.params
    return Uinv @ inner.unit_action(n, i, j) @ U


def _explicit(M, n, i, j):
    (table,) = M.params
    return table.get((n, i, j), PolyMatrix.zeros(M.rank))


def _dual(M, n, i, j):
    (inner,) = M.params
    F = inner.unit_action(n, i, j)
    # G(∂, λ) = -F(-∂-λ, λ)^T
    return -(F.subs(D, -DEL - LAMBDA).T)


def _restrict(M, n, i, j):
    g, inner = M.params
    return act_element(inner, g)


_BUILDERS = {
    "vir_module": _vir,
    "hv_module": _hv,
    "gc_standard": _standard,
    "gc_dual": _dual_std,
    "direct_sum": _direct_sum,
    "basis_change": _basis_change,
    "explicit": _explicit,
    "dual": _dual,
    "restrict": _restrict,
}


# -- recipes ---------------------------------------------------------------


def vir_module(delta, alpha):
    """M_{Δ,α}: L λ v = (∂+Δλ+α)v."""
    return ConformalModule("vir", 1, 1, "vir_module", (scalar(delta), scalar(alpha)))


def hv_module(delta, alpha, beta):
    """Rank-one HV module: J^1 λ v = (∂+Δλ+α)v, J^0 λ v = βv."""
    return ConformalModule("hv", 1, 1, "hv_module", (scalar(delta), scalar(alpha), scalar(beta)))


def gc_standard(alpha, N):
    """J^n_A λ v = (∂+λ+α)^n A v on ℂ[∂]^N."""
    return ConformalModule("gc", N, N, "gc_standard", (scalar(alpha),))


def gc_dual(alpha, N):
    """J^n_A λ v = -(-∂+α)^n A^T v on ℂ[∂]^N."""
    return ConformalModule("gc", N, N, "gc_dual", (scalar(alpha),))


def direct_sum(parts):
    parts = list(parts)
    if not parts:
        raise ValueError("direct sum of nothing")
    alg, N = parts[0].algebra, parts[0].N
    for p in parts[1:]:
        if (p.algebra, p.N) != (alg, N):
            raise DimensionMismatch("summands must share the algebra")
    cuts = [p.cutoff for p in parts if p.cutoff is not None]
    return ConformalModule(alg, N, sum(p.rank for p in parts), "direct_sum", tuple(parts), min(cuts) if cuts else None)


def _constant_matrix(U, name="U"):
    if not isinstance(U, PolyMatrix):
        U = PolyMatrix.constant(U)
    if not U.is_constant():
        raise ValueError(f"{name} must be constant")
    return U


def basis_change(inner, U):
    """New basis Y' = Y·U, so every F becomes U⁻¹ F U."""
    U = _constant_matrix(U)
    if U.shape != (inner.rank, inner.rank):
        raise DimensionMismatch(f"basis change of shape {U.shape} for rank {inner.rank}")
    if det(U) == 0:
        raise SingularMatrix("basis change matrix is singular")
    return ConformalModule(inner.algebra, inner.N, inner.rank, "basis_change", (inner, U, constant_inverse(U)), inner.cutoff)


def explicit(algebra, N, rank, table, n_max):
    """Module from a finite table {(n, i, j): F} defined for n ≤ n_max (0-based i, j)."""
    clean = {}
    for (n, i, j), F in table.items():
        if not isinstance(F, PolyMatrix):
            F = PolyMatrix(F)
        if F.shape != (rank, rank):
            raise DimensionMismatch(f"action ({n},{i},{j}) has shape {F.shape}, expected {(rank, rank)}")
        if F.variables() - {D, LAM}:
            raise ValueError("action entries may only involve ∂ and λ")
        if n > n_max:
            raise CutoffExceeded(f"table entry of degree {n} beyond n_max {n_max}")
        clean[n, i, j] = F
    M = ConformalModule(algebra, N, rank, "explicit", (clean,), n_max)
    for n, i, j in clean:
        if not M.allows(n) or not (0 <= i < N and 0 <= j < N):
            raise InputError(f"table key ({n},{i + 1},{j + 1}) is not a generator of {algebra}")
    return M


def dual_module(M):
    """Conformal dual: G(∂, λ) = -F(-∂-λ, λ)^T on the dual basis."""
    return ConformalModule(M.algebra, M.N, M.rank, "dual", (M,), M.cutoff)


def materialize(M, n_max=DEFAULT_NMAX):
    """Explicit copy of M's tables up to n_max."""
    top = n_max if M.cutoff is None else min(n_max, M.cutoff)
    return explicit(M.algebra, M.N, M.rank, M.tables(top), top)


# -- actions ---------------------------------------------------------------


def act(M, n, A):
    """F with J^n_A λ Y = Y·F(∂, λ) for a constant matrix A."""
    A = _constant_matrix(A, "A")
    if A.shape != (M.N, M.N):
        raise DimensionMismatch(f"A has shape {A.shape}, expected {(M.N, M.N)}")
    out = PolyMatrix.zeros(M.rank)
    for i, j, c in A.entries():
        out = out + M.unit_action(n, i, j) * c
    return out


def act_element(M, x):
    """Action of an element x of gc_N: a term h(∂)J^n_{E_ij} contributes h(-λ)·F_{n,ij}."""
    if x.N != M.N:
        raise DimensionMismatch(f"gc_{x.N} element acting on a gc_{M.N} module")
    out = PolyMatrix.zeros(M.rank)
    for n, i, j, h in x.entries():
        out = out + M.unit_action(n, i, j) * h.subs(D, -LAMBDA)
    return out


def restrict_to_virasoro(g, M):
    """The Vir-module obtained by letting L act as the Virasoro element g."""
    from .virasoro import virasoro_residual

    if M.algebra != "gc":
        raise DimensionMismatch("restriction needs a gc_N module")
    if g.N != M.N:
        raise DimensionMismatch(f"gc_{g.N} element and gc_{M.N} module")
    if not virasoro_residual(g).is_zero():
        raise NotVirasoro(f"{g} is not a Virasoro element")
    if M.cutoff is not None and g.degree > M.cutoff:
        raise CutoffExceeded(f"element degree {g.degree} exceeds table cutoff {M.cutoff}")
    return ConformalModule("vir", 1, M.rank, "restrict", (g, M))


# -- axiom check -----------------------------------------------------------


@dataclass
class ActionWitness:
    m: int
    n: int
    A: tuple
    B: tuple
    residual: PolyMatrix

    def to_json(self):
        return {
            "m": self.m,
            "n": self.n,
            "A": [self.A[0] + 1, self.A[1] + 1],
            "B": [self.B[0] + 1, self.B[1] + 1],
            "residual": self.residual.to_json(),
        }


class _Shifted:
    """Memoized variable-shifted copies of unit actions used by the commutator check."""

    def __init__(self, M):
        self.M = M
        self.memo = {}

    def get(self, n, i, j, which):
        key = (n, i, j, which)
        F = self.memo.get(key)
        if F is None:
            F = self.M.unit_action(n, i, j)
            if which == "lm":  # F(∂+λ, μ)
                F = F.subs(LAM, MU_).subs(D, DEL + LAMBDA)
            elif which == "m":  # F(∂, μ)
                F = F.subs(LAM, MU_)
            elif which == "ml":  # F(∂+μ, λ)
                F = F.subs(D, DEL + MU_)
            elif which == "s":  # F(∂, λ+μ)
                F = F.subs(LAM, LAMBDA + MU_)
            self.memo[key] = F
        return F


def _pairs_to_check(M, n_max):
    degs = [n for n in range(n_max + 1) if M.allows(n)]
    for m in degs:
        for n in degs:
            if M.cutoff is None or m + n <= M.cutoff:
                yield m, n


def check_module_axioms(M, n_max=DEFAULT_NMAX, first_only=False):
    """Check the commutator identity for every generator pair up to n_max.

    For a = J^m_{E_ij}, b = J^n_{E_kl} the identity compared is
        [a λ b]_{λ+μ} Y = a λ (b μ Y) - b μ (a λ Y)
    with a λ (b μ Y) = Y·F_a(∂, λ) F_b(∂+λ, μ), and a bracket term h(∂, λ)J^p_{E_qr}
    acting at λ+μ as h(-λ-μ, λ) F_{p,qr}(∂, λ+μ).  Tables with a finite cutoff
    are checked on pairs with m + n ≤ cutoff, since the bracket reaches degree
    m + n.  Returns the list of failures (empty on success).
    """
    S = _Shifted(M)
    N = M.N
    bad = []
    for m, n in _pairs_to_check(M, n_max):
        for i in range(N):
            for j in range(N):
                a = unit_element(m, i, j, N)
                for k in range(N):
                    for l in range(N):
                        b = unit_element(n, k, l, N)
                        rhs = (
                            S.get(m, i, j, "") @ S.get(n, k, l, "lm")
                            - S.get(n, k, l, "m") @ S.get(m, i, j, "ml")
                        )
                        lhs = PolyMatrix.zeros(M.rank)
                        for p, q, r, h in bracket_at(a, b).entries():
                            lhs = lhs + S.get(p, q, r, "s") * h.subs(D, -LAMBDA - MU_)
                        if lhs != rhs:
                            bad.append(ActionWitness(m, n, (i, j), (k, l), lhs - rhs))
                            if first_only:
                                return bad
    if not bad:
        # (M1) spot check: (∂a) λ v = -λ (a λ v)
        n0 = M.degrees[0] if M.degrees else 0
        x = unit_element(n0, 0, 0, N)
        diff = act_element(M, x.shift_del()) + act_element(M, x) * LAMBDA
        if not diff.is_zero():
            bad.append(ActionWitness(n0, n0, (0, 0), (0, 0), diff))
    return bad


def tables_equal(M1, M2, n_max=DEFAULT_NMAX):
    """Table-exact equality up to n_max; returns the first differing key or None."""
    if (M1.algebra, M1.N, M1.rank) != (M2.algebra, M2.N, M2.rank):
        return ("shape",)
    t1, t2 = M1.tables(n_max), M2.tables(n_max)
    if set(t1) != set(t2):
        return ("keys",)
    for key in sorted(t1):
        if t1[key] != t2[key]:
            return key
    return None
