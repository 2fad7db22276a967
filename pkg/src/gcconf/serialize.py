"""JSON encodings of elements, modules and reports.

Rationals are strings "p/q" (or "p"); polynomials are lists of
[e_∂, e_λ, e_μ, "p/q"] records; matrix indices are 1-based.
"""

from .errors import CutoffExceeded, DimensionMismatch, GcError, InputError
from .gc import GcElement, GcLambdaValue
from .matrix import PolyMatrix
from .modules import (
    basis_change,
    direct_sum,
    dual_module,
    explicit,
    gc_dual,
    gc_standard,
    hv_module,
    restrict_to_virasoro,
    vir_module,
)
from .poly import D, fmt_scalar, poly_from_json, poly_to_json, scalar


def _need(obj, key, where, kind=dict):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    if key not in obj:
        raise InputError(f"{where}: missing key {key!r}")
    val = obj[key]
    if kind is int:
        if not isinstance(val, int) or isinstance(val, bool):
            raise InputError(f"{where}.{key}: expected an integer")
    elif kind is not None and not isinstance(val, kind):
        raise InputError(f"{where}.{key}: expected {'an object' if kind is dict else 'a list'}")
    return val


def scalar_from_json(x, where):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise InputError(f"{where}: expected a rational string \"p/q\"")
    try:
        return scalar(x)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{where}: expected a rational string \"p/q\" ({exc})") from exc


def grid_from_json(obj, where):
    """Constant matrix from a grid of rational strings."""
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise InputError(f"{where}: expected a non-empty list of rows")
    if len({len(r) for r in obj}) != 1:
        raise InputError(f"{where}: rows have different lengths")
    return PolyMatrix.constant([[scalar_from_json(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(obj)])


def grid_to_json(M):
    return M.to_scalar_json()


# -- elements ----------------------------------------------------------------


def element_to_json(g):
    terms = []
    for n, P in g.terms.items():
        terms.append({"n": n, "entries": [[i + 1, j + 1, poly_to_json(p)] for i, j, p in P.entries()]})
    return {"N": g.N, "terms": terms}


def element_from_json(obj, where="element", cls=GcElement):
    N = _need(obj, "N", where, int)
    if N < 1:
        raise InputError(f"{where}.N: expected a positive integer")
    terms = _need(obj, "terms", where, list)
    grids = {}
    for t, term in enumerate(terms):
        w = f"{where}.terms[{t}]"
        n = _need(term, "n", w, int)
        if n < 0:
            raise InputError(f"{w}.n: expected a non-negative integer")
        entries = _need(term, "entries", w, list)
        grid = grids.setdefault(n, [[None] * N for _ in range(N)])
        for e, rec in enumerate(entries):
            we = f"{w}.entries[{e}]"
            if not isinstance(rec, list) or len(rec) != 3:
                raise InputError(f"{we}: expected [i, j, <poly>]")
            i, j, p = rec
            if not all(isinstance(x, int) and not isinstance(x, bool) and 1 <= x <= N for x in (i, j)):
                raise InputError(f"{we}: indices must be integers in 1..{N}")
            poly = poly_from_json(p, f"{we}[2]")
            if cls is GcElement and poly.variables() - {D}:
                raise InputError(f"{we}[2]: element coefficients may only use ∂")
            prev = grid[i - 1][j - 1]
            grid[i - 1][j - 1] = poly if prev is None else prev + poly
    out = {}
    for n, grid in grids.items():
        out[n] = PolyMatrix([[0 if p is None else p for p in row] for row in grid])
    return cls(N, out)


def value_to_json(v):
    return element_to_json(v)


# -- modules -----------------------------------------------------------------


def _recipe_from_json(obj, algebra, N, where):
    kind = _need(obj, "kind", where, str)

    def s(key):
        return scalar_from_json(_need(obj, key, where, None), f"{where}.{key}")

    if kind == "vir_module":
        if algebra != "vir":
            raise InputError(f"{where}: vir_module needs algebra \"vir\"")
        return vir_module(s("delta"), s("alpha"))
    if kind == "hv_module":
        if algebra != "hv":
            raise InputError(f"{where}: hv_module needs algebra \"hv\"")
        return hv_module(s("delta"), s("alpha"), s("beta"))
    if kind in ("gc_standard", "gc_dual"):
        if algebra != "gc":
            raise InputError(f"{where}: {kind} needs algebra \"gc\"")
        return (gc_standard if kind == "gc_standard" else gc_dual)(s("alpha"), N)
    if kind == "direct_sum":
        parts = _need(obj, "parts", where, list)
        if not parts:
            raise InputError(f"{where}.parts: expected a non-empty list")
        return direct_sum([_recipe_from_json(p, algebra, N, f"{where}.parts[{i}]") for i, p in enumerate(parts)])
    if kind == "basis_change":
        inner = _recipe_from_json(_need(obj, "inner", where), algebra, N, f"{where}.inner")
        return _apply_change(inner, _need(obj, "U", where, list), f"{where}.U")
    if kind == "dual":
        return dual_module(_recipe_from_json(_need(obj, "inner", where), algebra, N, f"{where}.inner"))
    if kind == "restrict":
        if algebra != "vir":
            raise InputError(f"{where}: restrict produces a module with algebra \"vir\"")
        g = element_from_json(_need(obj, "element", where), f"{where}.element")
        inner_alg = obj.get("inner_algebra", "gc")
        inner = _recipe_from_json(_need(obj, "inner", where), inner_alg, g.N, f"{where}.inner")
        return restrict_to_virasoro(g, inner)
    if kind == "explicit":
        rank = _need(obj, "rank", where, int)
        n_max = _need(obj, "n_max", where, int)
        if rank < 1 or n_max < 0:
            raise InputError(f"{where}: rank must be positive and n_max non-negative")
        table = {}
        for t, rec in enumerate(_need(obj, "table", where, list)):
            w = f"{where}.table[{t}]"
            n = _need(rec, "n", w, int)
            A = _need(rec, "A", w, list)
            if len(A) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) and 1 <= x <= N for x in A):
                raise InputError(f"{w}.A: expected [i, j] with entries in 1..{N}")
            F = _need(rec, "F", w, list)
            if len(F) != rank or not all(isinstance(r, list) and len(r) == rank for r in F):
                raise InputError(f"{w}.F: expected a {rank}x{rank} grid of polynomials")
            table[n, A[0] - 1, A[1] - 1] = PolyMatrix(
                [[poly_from_json(p, f"{w}.F[{i}][{j}]") for j, p in enumerate(r)] for i, r in enumerate(F)]
            )
        try:
            return explicit(algebra, N, rank, table, n_max)
        except (ValueError, CutoffExceeded, DimensionMismatch) as exc:
            raise InputError(f"{where}: {exc}") from exc
    raise InputError(f"{where}.kind: unknown recipe kind {kind!r}")


def _apply_change(M, U, where):
    U = grid_from_json(U, where)
    try:
        return basis_change(M, U)
    except (GcError, ValueError) as exc:  # shape or singularity problems are input errors here
        raise InputError(f"{where}: {exc}") from exc


def module_from_json(obj, where="module"):
    algebra = _need(obj, "algebra", where, str)
    if algebra not in ("vir", "hv", "gc"):
        raise InputError(f"{where}.algebra: expected \"vir\", \"hv\" or \"gc\"")
    N = obj.get("N", 1)
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise InputError(f"{where}.N: expected a positive integer")
    M = _recipe_from_json(_need(obj, "recipe", where), algebra, N, f"{where}.recipe")
    if "basis_change" in obj:
        M = _apply_change(M, obj["basis_change"], f"{where}.basis_change")
    return M


def recipe_to_json(M):
    k, p = M.kind, M.params
    if k == "vir_module":
        return {"kind": k, "delta": fmt_scalar(p[0]), "alpha": fmt_scalar(p[1])}
    if k == "hv_module":
        return {"kind": k, "delta": fmt_scalar(p[0]), "alpha": fmt_scalar(p[1]), "beta": fmt_scalar(p[2])}
    if k in ("gc_standard", "gc_dual"):
        return {"kind": k, "alpha": fmt_scalar(p[0])}
    if k == "direct_sum":
        return {"kind": k, "parts": [recipe_to_json(x) for x in p]}
    if k == "basis_change":
        return {"kind": k, "inner": recipe_to_json(p[0]), "U": grid_to_json(p[1])}
    if k == "dual":
        return {"kind": k, "inner": recipe_to_json(p[0])}
    if k == "restrict":
        return {"kind": k, "element": element_to_json(p[0]), "inner_algebra": p[1].algebra, "inner": recipe_to_json(p[1])}
    if k == "explicit":
        return {"kind": k, "rank": M.rank, "n_max": M.cutoff, "table": tables_to_json(p[0])}
    raise ValueError(f"unknown recipe {k}")


def module_to_json(M):
    return {"algebra": M.algebra, "N": M.N, "recipe": recipe_to_json(M)}


def tables_to_json(tables):
    return [
        {"n": n, "A": [i + 1, j + 1], "F": F.to_json()}
        for (n, i, j), F in sorted(tables.items())
        if not F.is_zero()
    ]


# -- reports -----------------------------------------------------------------


def regularity_to_json(rep):
    out = {"regular": rep.regular, "weights": [[fmt_scalar(d), fmt_scalar(a)] for d, a in rep.weights]}
    if rep.offending is not None:
        i, j, p = rep.offending
        out["offending"] = {"i": i + 1, "j": j + 1, "entry": poly_to_json(p), "text": str(p)}
    return out


def weight_product_to_json(wp):
    return {"p": fmt_scalar(wp.value), "factors": [[e + 1, i + 1, fmt_scalar(d)] for e, i, d in wp.factors]}


def decomposition_to_json(rep):
    return {
        "summands": [{"kind": s.kind, "alpha": fmt_scalar(s.alpha), "mult": s.mult} for s in rep.summands],
        "basis_change": grid_to_json(rep.basis_change),
        "verified_n_max": rep.verified_n_max,
        "transcript": list(rep.transcript),
    }


def grid_report_to_json(rep):
    return {
        "N": rep.N,
        "coeff_set": [fmt_scalar(c) for c in rep.coeff_set],
        "poly_deg_bound": rep.poly_deg_bound,
        "candidates": rep.candidates,
        "virasoro_found": len(rep.virasoro),
        "standard_found": rep.standard,
        "counterexamples": [element_to_json(g) for g in rep.counterexamples],
    }
