"""Regular actions of Virasoro elements, conformal weights and shifts."""

from dataclasses import dataclass, field

from .errors import DimensionMismatch, InconsistentData, NotRegular, NotVirasoro
from .modules import act_element
from .poly import Scalar, scalar


@dataclass
class RegularityReport:
    regular: bool
    weights: list = field(default_factory=list)  # [(Δ, α)] per basis vector
    offending: tuple | None = None  # (row, col, poly), 0-based

    def __bool__(self):
        return self.regular


def action_of(L, M):
    """Matrix of L's action on M's basis; L is None for the generator of a Vir module."""
    if M.algebra == "vir":
        if L is not None:
            raise DimensionMismatch("a Vir module takes its own generator (L=None)")
        return M.unit_action(1, 0, 0)
    if L is None:
        raise DimensionMismatch(f"a Virasoro element is needed for {M.algebra} modules")
    if L.N != M.N:
        raise DimensionMismatch(f"gc_{L.N} element acting on a gc_{M.N} module")
    from .virasoro import virasoro_residual

    if not virasoro_residual(L).is_zero():
        raise NotVirasoro(f"{L} is not a Virasoro element")
    return act_element(M, L)


def _weight(p):
    """(Δ, α) when p = ∂ + Δλ + α exactly, else None."""
    terms = p.terms()
    if terms.get((1, 0, 0)) != 1:
        return None
    if any(e not in ((1, 0, 0), (0, 1, 0), (0, 0, 0)) for e in terms):
        return None
    return terms.get((0, 1, 0), Scalar(0)), terms.get((0, 0, 0), Scalar(0))


def check_regular(L, M):
    """Is L's action diagonal with every entry ∂ + Δλ + α in M's given basis?"""
    F = action_of(L, M)
    weights = []
    for i in range(M.rank):
        for j in range(M.rank):
            if i != j and not F[i, j].is_zero():
                return RegularityReport(False, [], (i, j, F[i, j]))
        w = _weight(F[i, i])
        if w is None:
            return RegularityReport(False, [], (i, i, F[i, i]))
        weights.append(w)
    return RegularityReport(True, weights)


@dataclass
class WeightProduct:
    value: Scalar
    factors: list  # (element index, basis index, Δ)


def weight_product(reports):
    """Product of all conformal weights over a finite caller-supplied set of elements."""
    value = Scalar(1)
    factors = []
    for e, rep in enumerate(reports):
        if not rep.regular:
            raise NotRegular(f"report {e} is not regular")
        for i, (delta, _) in enumerate(rep.weights):
            value *= delta
            factors.append((e, i, delta))
    return WeightProduct(value, factors)


def vir_semisimple(M):
    """Regular L-action with nonzero weight product; returns (bool, [(Δ, α)] summands)."""
    if M.algebra != "vir":
        raise DimensionMismatch("vir_semisimple takes a Vir module")
    rep = check_regular(None, M)
    if not rep.regular:
        return False, []
    if weight_product([rep]).value == 0:
        return False, []
    return True, list(rep.weights)


@dataclass
class HVData:
    beta: Scalar
    delta: Scalar
    alpha: Scalar


def hv_reduce(L1, L2, weights1, weights2):
    """Recover the J^0 eigenvalue β and the J^1 weight/shift on each basis vector.

    L1 = (a1, b1), L2 = (a2, b2) parametrize (a∂+b)J^0 + J^1; weights are the
    regular (Δ, α) lists of both elements.  Subtracting the two actions gives
        (-(a1-a2)λ + (b1-b2))·β = (Δ1-Δ2)λ + (α1-α2)
    which is solved coefficientwise.
    """
    a1, b1 = (scalar(x) for x in L1)
    a2, b2 = (scalar(x) for x in L2)
    if (a1, b1) == (a2, b2):
        raise InconsistentData("the two Virasoro elements must differ")
    if len(weights1) != len(weights2):
        raise DimensionMismatch("weight lists have different lengths")
    out = []
    for i, ((d1, s1), (d2, s2)) in enumerate(zip(weights1, weights2)):
        d1, s1, d2, s2 = (scalar(x) for x in (d1, s1, d2, s2))
        if a1 != a2:
            beta = -(d1 - d2) / (a1 - a2)
        else:
            beta = (s1 - s2) / (b1 - b2)
        if -(a1 - a2) * beta != d1 - d2 or (b1 - b2) * beta != s1 - s2:
            raise InconsistentData(
                f"basis vector {i + 1}: ({d1 - d2})λ+({s1 - s2}) is not a multiple of "
                f"{-(a1 - a2)}λ+({b1 - b2})"
            )
        delta = d1 + a1 * beta
        alpha = s1 - b1 * beta
        if d2 != delta - a2 * beta or s2 != alpha + b2 * beta:
            raise InconsistentData(f"basis vector {i + 1}: second element disagrees")
        out.append(HVData(beta, delta, alpha))
    return out
