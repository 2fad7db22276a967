"""Exact rationals and sparse polynomials in the formal variables ∂, λ, μ."""

from fractions import Fraction
from math import gcd

from . import _backend
from ._backend import Scalar
from ._pykernels import BITS, MASK, pack, unpack

VARS = ("∂", "λ", "μ")
D, LAM, MU = 0, 1, 2

_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def scalar(x):
    """Coerce ``x`` to an exact Scalar.  Strings may be "p/q", "p" or decimals."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty scalar string")
        try:
            return Scalar(Fraction(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {x!r}") from exc
    if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, float):
        return Scalar(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot make an exact scalar from {type(x).__name__}")


def fmt_scalar(q):
    q = scalar(q)
    n, d = int(q.numerator), int(q.denominator)
    return str(n) if d == 1 else f"{n}/{d}"


def _is_scalar_like(x):
    return isinstance(x, (int, Fraction, Scalar)) and not isinstance(x, bool)


class MPoly:
    """Immutable sparse polynomial in (∂, λ, μ) with exact rational coefficients.

    Build from a mapping of exponent tuples to coefficients::

        MPoly({(1, 0, 0): 1, (0, 1, 0): 2})   # ∂ + 2λ

    Shorter tuples are padded with zeros.  Zero coefficients are never stored,
    so two polynomials are equal iff their term maps are equal.
    """

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        t = {}
        if terms is None:
            pass
        elif isinstance(terms, MPoly):
            t = terms._t
        elif isinstance(terms, dict):
            for exps, c in terms.items():
                exps = tuple(exps) + (0,) * (3 - len(exps))
                if len(exps) != 3 or min(exps) < 0:
                    raise ValueError(f"bad exponent tuple {exps}")
                c = scalar(c)
                if c:
                    k = pack(*exps)
                    s = t.get(k, 0) + c
                    if s:
                        t[k] = s
                    else:
                        t.pop(k, None)
        else:
            c = scalar(terms)
            if c:
                t[0] = c
        self._t = t

    @classmethod
    def _wrap(cls, t):
        p = object.__new__(cls)
        p._t = t
        return p

    @classmethod
    def var(cls, v):
        return cls._wrap({1 << (BITS * v): Scalar(1)})

    # -- inspection ------------------------------------------------------
    def terms(self):
        """Dict of (e_∂, e_λ, e_μ) -> coefficient."""
        return {unpack(k): c for k, c in self._t.items()}

    def coeff(self, *exps):
        exps = tuple(exps) + (0,) * (3 - len(exps))
        return self._t.get(pack(*exps), Scalar(0))

    def __bool__(self):
        return bool(self._t)

    def is_zero(self):
        return not self._t

    def is_constant(self):
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._t.get(0, Scalar(0))

    def degree(self, v=None):
        """Degree in variable ``v`` (total degree when ``v`` is None); -1 for zero."""
        if not self._t:
            return -1
        if v is None:
            return max(sum(unpack(k)) for k in self._t)
        sh = BITS * var_index(v)
        return max((k >> sh) & MASK for k in self._t)

    def variables(self):
        used = set()
        for k in self._t:
            for v, e in enumerate(unpack(k)):
                if e:
                    used.add(v)
        return used

    def ratio_to(self, other):
        """Scalar c with self == c*other, or None.  ``other`` must be nonzero."""
        if len(self._t) != len(other._t):
            return None
        k0 = next(iter(other._t))
        if k0 not in self._t:
            return None
        c = self._t[k0] / other._t[k0]
        for k, v in other._t.items():
            if self._t.get(k) != c * v:
                return None
        return c

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        if _is_scalar_like(other) or isinstance(other, str):
            return MPoly(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return MPoly._wrap(_backend.kernels.add(self._t, o._t))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return MPoly._wrap(_backend.kernels.add(self._t, o._t, Scalar(-1)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return MPoly._wrap(_backend.kernels.scale(self._t, Scalar(-1)))

    def __mul__(self, other):
        if _is_scalar_like(other):
            return MPoly._wrap(_backend.kernels.scale(self._t, scalar(other)))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_constant():
            return MPoly._wrap(_backend.kernels.scale(self._t, o._t.get(0, Scalar(0))))
        if self.is_constant():
            return MPoly._wrap(_backend.kernels.scale(o._t, self._t.get(0, Scalar(0))))
        return MPoly._wrap(_backend.kernels.mul(self._t, o._t))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (Scalar(1) / scalar(c))

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self._t == other._t
        if _is_scalar_like(other):
            return self._t == ({0: scalar(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    # -- substitution ----------------------------------------------------
    def subs(self, v, replacement):
        """Substitute variable ``v`` by ``replacement`` (an MPoly or scalar)."""
        r = replacement if isinstance(replacement, MPoly) else MPoly(replacement)
        sh = BITS * var_index(v)
        groups = {}
        for k, c in self._t.items():
            e = (k >> sh) & MASK
            groups.setdefault(e, {})[k - (e << sh)] = c
        if not groups or list(groups) == [0]:
            return self
        K = _backend.kernels
        top = max(groups)
        acc = groups[top]
        for e in range(top - 1, -1, -1):
            acc = K.mul(acc, r._t)
            g = groups.get(e)
            if g:
                acc = K.add(acc, g)
        return MPoly._wrap(acc)

    def __call__(self, *values):
        """Evaluate at scalars for (∂, λ, μ); missing trailing values stay symbolic."""
        p = self
        for v, x in enumerate(values):
            if x is not None:
                p = p.subs(v, x)
        return p

    # -- display ---------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms().items())

    def __str__(self):
        if not self._t:
            return "0"
        items = sorted(self.terms().items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0])))
        out = []
        for exps, c in items:
            mono = "".join(
                VARS[v] + (str(e).translate(_SUP) if e > 1 else "") for v, e in enumerate(exps) if e
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = fmt_scalar(a)
            elif a == 1:
                body = mono
            elif a.denominator == 1:
                body = f"{fmt_scalar(a)}{mono}"
            else:
                body = f"({fmt_scalar(a)}){mono}"
            if out:
                out.append(("-" if neg else "+") + body)
            else:
                out.append(("-" if neg else "") + body)
        return "".join(out)

    def __repr__(self):
        return f"MPoly({self})"


def var_index(v):
    """Accept 0/1/2 or one of the variable polynomials ∂, λ, μ."""
    if isinstance(v, MPoly):
        if len(v._t) == 1:
            (k, c), = v._t.items()
            if c == 1 and k in (1, 1 << BITS, 1 << (2 * BITS)):
                return (k.bit_length() - 1) // BITS
        raise ValueError(f"{v} is not one of the variables ∂, λ, μ")
    if v not in (0, 1, 2):
        raise ValueError(f"variable index must be 0, 1 or 2, not {v!r}")
    return v


ZERO = MPoly()
ONE = MPoly(1)
DEL = MPoly.var(D)
LAMBDA = MPoly.var(LAM)
MU_ = MPoly.var(MU)


def as_poly(x):
    return x if isinstance(x, MPoly) else MPoly(x)


def rational_roots(p, v=0):
    """Distinct rational roots of a univariate polynomial ``p`` in variable ``v``."""
    if p.variables() - {v}:
        raise ValueError("polynomial is not univariate")
    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    coeffs = [Scalar(0)] * (p.degree(v) + 1)
    for exps, c in p.terms().items():
        coeffs[exps[v]] = c
    roots = []
    # factor out x^k first
    low = next(i for i, c in enumerate(coeffs) if c)
    if low:
        roots.append(Scalar(0))
        coeffs = coeffs[low:]
    if len(coeffs) == 1:
        return roots
    den = 1
    for c in coeffs:
        den = den * int(c.denominator) // gcd(den, int(c.denominator))
    ints = [int(c * den) for c in coeffs]
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        return [d for d in range(1, n + 1) if n % d == 0]

    cands = set()
    for num in divisors(a0):
        for dd in divisors(an):
            cands.add(Scalar(num, dd))
            cands.add(Scalar(-num, dd))
    for x in sorted(cands):
        val = Scalar(0)
        for c in reversed(coeffs):
            val = val * x + c
        if val == 0:
            roots.append(x)
    return sorted(roots)


def poly_from_json(obj, where="poly"):
    """Parse a list of [e_∂, e_λ, e_μ, "p/q"] records."""
    from .errors import InputError

    if not isinstance(obj, list):
        raise InputError(f"{where}: expected a list of [e_∂, e_λ, e_μ, \"p/q\"] records")
    terms = {}
    for n, rec in enumerate(obj):
        if (
            not isinstance(rec, list)
            or len(rec) != 4
            or not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in rec[:3])
        ):
            raise InputError(f"{where}[{n}]: expected [int, int, int, \"p/q\"]")
        try:
            c = scalar(rec[3])
        except (TypeError, ValueError) as exc:
            raise InputError(f"{where}[{n}][3]: expected a rational string ({exc})") from exc
        key = tuple(rec[:3])
        terms[key] = terms.get(key, 0) + c
    return MPoly(terms)


def poly_to_json(p):
    return [[e0, e1, e2, fmt_scalar(c)] for (e0, e1, e2), c in p.sorted_terms()]
