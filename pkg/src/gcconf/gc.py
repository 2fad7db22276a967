"""Elements of the general conformal algebra gc_N and their λ-brackets.

An element is stored by its structure polynomial matrices: degree n maps to
the N×N matrix P^[n] whose (i, j) entry is the coefficient of J^n_{E_ij}.
Bracket values use the same container with entries that may also involve
λ and μ.
"""

from dataclasses import dataclass
from math import comb

from .errors import DimensionMismatch
from .matrix import PolyMatrix
from .poly import D, DEL, LAM, LAMBDA, MU, MU_, ZERO, MPoly, as_poly, scalar


class GcLambdaValue:
    """A finite sum Σ_n P_n J^n with P_n an N×N matrix over ℚ[∂, λ, μ]."""

    __slots__ = ("N", "terms")

    def __init__(self, N, terms=None):
        if N < 1:
            raise ValueError("N must be at least 1")
        self.N = N
        clean = {}
        for n, P in (terms or {}).items():
            if not isinstance(P, PolyMatrix):
                P = PolyMatrix(P)
            if P.shape != (N, N):
                raise DimensionMismatch(f"degree {n} matrix has shape {P.shape}, expected {(N, N)}")
            if n < 0:
                raise ValueError("degrees are non-negative")
            if not P.is_zero():
                clean[n] = P
        self.terms = dict(sorted(clean.items()))
        self._validate()

    def _validate(self):
        pass

    @classmethod
    def _make(cls, N, terms):
        obj = object.__new__(cls)
        obj.N = N
        obj.terms = dict(sorted((n, P) for n, P in terms.items() if not P.is_zero()))
        return obj

    @classmethod
    def zero(cls, N):
        return cls._make(N, {})

    # -- structure -------------------------------------------------------
    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        """Highest n with a nonzero structure matrix; None for the zero element."""
        return max(self.terms) if self.terms else None

    def structure_matrix(self, n):
        return self.terms.get(n, PolyMatrix.zeros(self.N))

    def entries(self):
        """Iterate (n, i, j, poly) over nonzero coefficients (0-based i, j)."""
        for n, P in self.terms.items():
            for i, j, p in P.entries():
                yield n, i, j, p

    def variables(self):
        used = set()
        for P in self.terms.values():
            used |= P.variables()
        return used

    # -- arithmetic ------------------------------------------------------
    def _check(self, other):
        if self.N != other.N:
            raise DimensionMismatch(f"gc_{self.N} and gc_{other.N}")

    def _combine(self, other, sign):
        self._check(other)
        out = dict(self.terms)
        for n, P in other.terms.items():
            if n in out:
                out[n] = out[n] + P if sign > 0 else out[n] - P
            else:
                out[n] = P if sign > 0 else -P
        cls = type(self) if type(self) is type(other) else GcLambdaValue
        return cls._make(self.N, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return type(self)._make(self.N, {n: -P for n, P in self.terms.items()})

    def __mul__(self, c):
        """Multiply every coefficient by a scalar or polynomial."""
        c = as_poly(c)
        cls = type(self) if not (c.variables() - {D}) else GcLambdaValue
        return cls._make(self.N, {n: P * c for n, P in self.terms.items()})

    __rmul__ = __mul__

    def subs(self, v, replacement):
        return GcLambdaValue._make(self.N, {n: P.subs(v, replacement) for n, P in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, GcLambdaValue):
            return NotImplemented
        return self.N == other.N and self.terms == other.terms

    def __hash__(self):
        return hash((self.N, tuple(self.terms.items())))

    def first_difference(self, other):
        """Witness (degree, row, col, difference) for the first differing entry, or None."""
        self._check(other)
        for n in sorted(set(self.terms) | set(other.terms)):
            d = self.structure_matrix(n).first_difference(other.structure_matrix(n))
            if d is not None:
                i, j, p = d
                return Witness(n, i, j, p)
        return None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for n, i, j, p in self.entries():
            gen = f"J^{n}" if self.N == 1 else f"J^{n}_{{E{i + 1}{j + 1}}}"
            s = str(p)
            if s == "1":
                parts.append(gen)
            elif s == "-1":
                parts.append("-" + gen)
            elif p.is_constant() and "/" not in s:
                parts.append(s + gen)
            else:
                parts.append(f"({s}){gen}")
        out = parts[0]
        for s in parts[1:]:
            out += s if s.startswith("-") else "+" + s
        return out

    def __repr__(self):
        return f"{type(self).__name__}(N={self.N}, {self})"


class GcElement(GcLambdaValue):
    """An element of gc_N: structure polynomial matrices in ∂ only."""

    __slots__ = ()

    def _validate(self):
        for n, P in self.terms.items():
            if P.variables() - {D}:
                raise ValueError(f"degree {n} coefficients must involve ∂ only")

    def shift_del(self):
        """∂·g: every structure polynomial multiplied by ∂."""
        return self * DEL


@dataclass
class Witness:
    degree: int
    row: int
    col: int
    difference: MPoly

    def to_json(self):
        from .poly import poly_to_json

        return {"n": self.degree, "i": self.row + 1, "j": self.col + 1, "difference": poly_to_json(self.difference)}


@dataclass
class CheckResult:
    ok: bool
    witness: Witness | None = None

    def __bool__(self):
        return self.ok


def _matrix(A, N):
    if isinstance(A, PolyMatrix):
        return A
    if A is None:
        return PolyMatrix.identity(N)
    return PolyMatrix([[as_poly(scalar(x) if not isinstance(x, MPoly) else x) for x in row] for row in A])


def J(n, A, f=1, N=None):
    """The element f(∂) J^n_A of gc_N (A given as a matrix or nested list)."""
    if N is None:
        N = len(A) if not isinstance(A, PolyMatrix) else A.rows
    A = _matrix(A, N)
    if A.shape != (N, N):
        raise DimensionMismatch(f"matrix shape {A.shape} is not {(N, N)}")
    return GcElement._make(N, {n: A * as_poly(f)})


def unit_element(n, i, j, N, f=1):
    """f(∂) J^n_{E_ij} with 0-based i, j."""
    return GcElement._make(N, {n: PolyMatrix.unit(N, i, j) * as_poly(f)})


def gc_sum(items, N=None):
    items = list(items)
    if not items:
        return GcElement.zero(N)
    out = items[0]
    for x in items[1:]:
        out = out + x
    return out


def bracket_at(a, b, param=LAMBDA):
    """[a_param b] for gc_N elements whose coefficients may involve λ, μ.

    A coefficient h on the left is evaluated at ∂ = -param and one on the
    right at ∂ -> ∂ + param (sesquilinearity); the generator brackets follow
    [J^m_A J^n_B] = Σ_s C(m,s)(∂+param)^s J^{m+n-s}_{AB} - Σ_s C(n,s)(-param)^s J^{m+n-s}_{BA}.
    """
    a._check(b)
    param = as_poly(param)
    left = {m: P.subs(D, -param) for m, P in a.terms.items()}
    right = {n: Q.subs(D, DEL + param) for n, Q in b.terms.items()}
    plus = DEL + param
    minus = -param
    plus_pows = [MPoly(1)]
    minus_pows = [MPoly(1)]
    out = {}

    def accumulate(deg, M):
        if M.is_zero():
            return
        out[deg] = out[deg] + M if deg in out else M

    for m, P in left.items():
        for n, Q in right.items():
            PQ = P @ Q
            QP = Q @ P
            while len(plus_pows) <= m:
                plus_pows.append(plus_pows[-1] * plus)
            while len(minus_pows) <= n:
                minus_pows.append(minus_pows[-1] * minus)
            if not PQ.is_zero():
                for s in range(m + 1):
                    accumulate(m + n - s, PQ * (plus_pows[s] * comb(m, s)))
            if not QP.is_zero():
                for s in range(n + 1):
                    accumulate(m + n - s, QP * (minus_pows[s] * (-comb(n, s))))
    return GcLambdaValue._make(a.N, out)


def lambda_bracket(a, b):
    """[a_λ b] as a GcLambdaValue with coefficients in ∂, λ."""
    for x in (a, b):
        if x.variables() - {D}:
            raise ValueError("lambda_bracket takes gc_N elements; use bracket_at for λ-dependent values")
    return bracket_at(a, b, LAMBDA)


def check_skew_symmetry(a, b, bracket=bracket_at):
    """Check [a_λ b] = -[b_{-λ-∂} a]; ``bracket`` may be replaced for negative controls."""
    a._check(b)
    lhs = bracket(a, b, LAMBDA)
    rhs = -(bracket(b, a, LAMBDA).subs(LAM, -LAMBDA - DEL))
    w = lhs.first_difference(rhs)
    return CheckResult(w is None, w)


def check_jacobi(a, b, c, bracket=bracket_at):
    """Check [a_λ [b_μ c]] = [[a_λ b]_{λ+μ} c] + [b_μ [a_λ c]]."""
    a._check(b)
    a._check(c)
    lhs = bracket(a, bracket(b, c, MU_), LAMBDA)
    rhs = bracket(bracket(a, b, LAMBDA), c, LAMBDA + MU_) + bracket(b, bracket(a, c, LAMBDA), MU_)
    w = lhs.first_difference(rhs)
    return CheckResult(w is None, w)


def check_sesquilinearity(a, b):
    """(C1): [∂a_λ b] = -λ[a_λ b] and [a_λ ∂b] = (∂+λ)[a_λ b]."""
    base = bracket_at(a, b)
    w = bracket_at(a.shift_del(), b).first_difference(base * (-LAMBDA))
    if w is None:
        w = bracket_at(a, b.shift_del()).first_difference(base * (DEL + LAMBDA))
    return CheckResult(w is None, w)


def canonical_embed(g1, N):
    """Π: gc_1 -> gc_N, f(∂)J^n -> f(∂)J^n_{I_N}."""
    if g1.N != 1:
        raise DimensionMismatch("canonical_embed takes an element of gc_1")
    I = PolyMatrix.identity(N)
    cls = GcElement if isinstance(g1, GcElement) else GcLambdaValue
    return cls._make(N, {n: I * P[0, 0] for n, P in g1.terms.items()})


def combinatorial_identity(which, n):
    """Evaluate both sides of one of three binomial identities in x, y and compare.

    1: Σ_{i=0}^{n} C(n,i)(-y)^i (x+y)^{n-i} = x^n
    2: Σ_{i=2}^{n+1} C(n+1,i)(-y)^i (x+y)^{n+1-i} = (n+1)y(x+y)^n - (x+y)^{n+1} + x^{n+1}
    3: Σ_{i=2}^{n+1} C(n+1,i)(-y)^i x^{n+1-i} = (n+1)y x^n + (x-y)^{n+1} - x^{n+1}
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    x, y = DEL, LAMBDA
    if which == 1:
        lhs = sum(((-y) ** i * (x + y) ** (n - i) * comb(n, i) for i in range(n + 1)), ZERO)
        rhs = x**n
    elif which == 2:
        lhs = sum(((-y) ** i * (x + y) ** (n + 1 - i) * comb(n + 1, i) for i in range(2, n + 2)), ZERO)
        rhs = y * (x + y) ** n * (n + 1) - (x + y) ** (n + 1) + x ** (n + 1)
    elif which == 3:
        lhs = sum(((-y) ** i * x ** (n + 1 - i) * comb(n + 1, i) for i in range(2, n + 2)), ZERO)
        rhs = y * x**n * (n + 1) + (x - y) ** (n + 1) - x ** (n + 1)
    else:
        raise ValueError("which must be 1, 2 or 3")
    return lhs == rhs
