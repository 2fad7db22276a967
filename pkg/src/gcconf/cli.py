"""Command-line front end.  Every verb reads JSON files and prints one JSON report.

Exit codes: 0 success, 1 mathematical failure (e.g. not a Virasoro element,
a failed axiom check, a decomposition obstruction), 2 malformed input.
"""

import argparse
import hashlib
import json
import sys

from . import serialize as ser
from .decompose import decompose_gc1, decompose_gcN
from .errors import ClaimFailed, GcError, InputError
from .gc import lambda_bracket
from .modules import DEFAULT_NMAX, check_module_axioms, dual_module, restrict_to_virasoro
from .poly import fmt_scalar, scalar
from .regularity import check_regular, vir_semisimple, weight_product
from .virasoro import (
    classify_deg1_grid,
    is_standard,
    is_virasoro,
    make_canonical,
    make_gc1_virasoro,
    make_nonstandard,
    make_standard_deg1,
    make_standard_higher,
)


class Failure(Exception):
    """A mathematical failure that still produces a report."""

    def __init__(self, result):
        super().__init__("failure")
        self.result = result


def _load(path):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror})") from exc
    try:
        return raw, json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: not valid UTF-8 JSON ({exc})") from exc


def _parse(path, parser):
    raw, obj = _load(path)
    try:
        return raw, parser(obj)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _pair(text, flag):
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"{flag}: expected a,b with rational a and b")
    try:
        return tuple(scalar(x) for x in parts)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{flag}: expected a,b with rational a and b ({exc})") from exc


# -- verbs -------------------------------------------------------------------


def cmd_bracket(args, raws):
    ra, a = _parse(args.a, ser.element_from_json)
    rb, b = _parse(args.b, ser.element_from_json)
    raws += [ra, rb]
    v = lambda_bracket(a, b)
    return {"text": str(v), "value": ser.value_to_json(v)}


def cmd_check_virasoro(args, raws):
    raw, g = _parse(args.element, ser.element_from_json)
    raws.append(raw)
    cert = is_virasoro(g)
    out = {
        "is_virasoro": cert.is_virasoro,
        "degree": cert.degree,
        "is_standard": cert.is_standard,
        "element": str(g),
        "residual": str(cert.residual),
    }
    if not cert.is_virasoro:
        raise Failure(out)
    return out


def cmd_is_standard(args, raws):
    raw, g = _parse(args.element, ser.element_from_json)
    raws.append(raw)
    return {"is_standard": is_standard(g), "element": str(g)}


def _grids(obj, key, where):
    items = obj.get(key)
    if not isinstance(items, list):
        raise InputError(f"{where}.{key}: expected a list of matrices")
    return [ser.grid_from_json(x, f"{where}.{key}[{i}]") for i, x in enumerate(items)]


def _scalars(obj, key, where):
    items = obj.get(key)
    if not isinstance(items, list):
        raise InputError(f"{where}.{key}: expected a list of rationals")
    return [ser.scalar_from_json(x, f"{where}.{key}[{i}]") for i, x in enumerate(items)]


def build_element(obj, where="params"):
    """Run the constructor named in a params object."""
    if not isinstance(obj, dict) or not isinstance(obj.get("constructor"), str):
        raise InputError(f"{where}.constructor: expected a string")
    kind = obj["constructor"]

    def s(key, default=None):
        if key not in obj:
            if default is not None:
                return default
            raise InputError(f"{where}: missing key {key!r}")
        return ser.scalar_from_json(obj[key], f"{where}.{key}")

    def grid(key):
        if key not in obj:
            raise InputError(f"{where}: missing key {key!r}")
        return ser.grid_from_json(obj[key], f"{where}.{key}")

    if kind == "gc1_virasoro":
        return make_gc1_virasoro(s("a"), s("b"))
    if kind == "canonical":
        N = obj.get("N")
        if not isinstance(N, int) or isinstance(N, bool) or N < 1:
            raise InputError(f"{where}.N: expected a positive integer")
        return make_canonical(s("a"), s("b"), N)
    if kind == "standard_deg1":
        form = obj.get("form")
        if form not in (1, 2):
            raise InputError(f"{where}.form: expected 1 or 2")
        b = s("b") if form == 1 else None
        return make_standard_deg1(form, s("a"), b, grid("A"), grid("B"))
    if kind == "standard_higher":
        terms = obj.get("terms", [])
        if not isinstance(terms, list):
            raise InputError(f"{where}.terms: expected a list")
        coeffs = []
        for t, term in enumerate(terms):
            w = f"{where}.terms[{t}]"
            if not isinstance(term, dict) or not isinstance(term.get("i"), int):
                raise InputError(f"{w}.i: expected an integer")
            coeffs.append((term["i"], ser.scalar_from_json(term.get("a"), f"{w}.a"), ser.grid_from_json(term.get("B"), f"{w}.B")))
        return make_standard_higher(grid("A"), coeffs)
    if kind == "nonstandard":
        k = obj.get("kind")
        if k not in ("T1", "T2", "T3", "T4"):
            raise InputError(f"{where}.kind: expected T1, T2, T3 or T4")
        extra = {}
        if k in ("T3", "T4"):
            extra = {"C": grid("C"), "Dm": _grids(obj, "D", where), "b": _scalars(obj, "b", where)}
        strict = obj.get("strict", True)
        if not isinstance(strict, bool):
            raise InputError(f"{where}.strict: expected true or false")
        return make_nonstandard(k, _grids(obj, "A", where), _grids(obj, "B", where), _scalars(obj, "a", where), strict=strict, **extra)
    raise InputError(f"{where}.constructor: unknown constructor {kind!r}")


def cmd_make(args, raws):
    raw, obj = _load(args.params)
    raws.append(raw)
    try:
        g = build_element(obj)
    except InputError as exc:
        raise InputError(f"{args.params}: {exc}") from exc
    cert = is_virasoro(g)
    out = {
        "element": ser.element_to_json(g),
        "text": str(g),
        "degree": g.degree,
        "is_virasoro": cert.is_virasoro,
        "is_standard": cert.is_standard,
    }
    if not cert.is_virasoro:
        # only reachable with "strict": false
        raise Failure(out)
    return out


def cmd_classify(args, raws):
    coeffs = [] if not args.coeffs.strip() else args.coeffs.split(",")
    try:
        cs = [scalar(c) for c in coeffs]
    except (TypeError, ValueError) as exc:
        raise InputError(f"--coeffs: expected comma-separated rationals ({exc})") from exc
    if args.N < 1 or args.deg < 0:
        raise InputError("--N must be positive and --deg non-negative")
    rep = classify_deg1_grid(args.N, cs, args.deg)
    out = ser.grid_report_to_json(rep)
    if rep.counterexamples:
        raise Failure(out)
    return out


def cmd_module_axioms(args, raws):
    raw, M = _parse(args.module, ser.module_from_json)
    raws.append(raw)
    bad = check_module_axioms(M, args.nmax)
    out = {"pass": not bad, "n_max": args.nmax, "witnesses": [w.to_json() for w in bad[:10]], "failures": len(bad)}
    if bad:
        raise Failure(out)
    return out


def cmd_dual(args, raws):
    raw, M = _parse(args.module, ser.module_from_json)
    raws.append(raw)
    D = dual_module(M)
    top = args.nmax if D.cutoff is None else min(args.nmax, D.cutoff)
    return {"module": ser.module_to_json(D), "tables": ser.tables_to_json(D.tables(top)), "n_max": top}


def cmd_restrict(args, raws):
    rg, g = _parse(args.element, ser.element_from_json)
    rm, M = _parse(args.module, ser.module_from_json)
    raws += [rg, rm]
    V = restrict_to_virasoro(g, M)
    F = V.unit_action(1, 0, 0)
    return {"module": ser.module_to_json(V), "L_action": F.to_json(), "text": str(F)}


def _elements(paths, raws):
    out = []
    for p in paths or []:
        raw, g = _parse(p, ser.element_from_json)
        raws.append(raw)
        out.append(g)
    return out


def cmd_regularity(args, raws):
    raw, M = _parse(args.module, ser.module_from_json)
    raws.append(raw)
    els = _elements(args.element, raws)
    if len(els) > 1:
        raise InputError("--element: give at most one element")
    rep = check_regular(els[0] if els else None, M)
    out = ser.regularity_to_json(rep)
    if not rep.regular:
        raise Failure(out)
    return out


def cmd_weight_product(args, raws):
    raw, M = _parse(args.module, ser.module_from_json)
    raws.append(raw)
    els = _elements(args.element, raws)
    gamma = els if els else [None]
    reports = [check_regular(g, M) for g in gamma]
    for e, rep in enumerate(reports):
        if not rep.regular:
            raise Failure({"regular": False, "element": e + 1, "report": ser.regularity_to_json(rep)})
    return ser.weight_product_to_json(weight_product(reports))


def cmd_vir_semisimple(args, raws):
    raw, M = _parse(args.module, ser.module_from_json)
    raws.append(raw)
    ok, summands = vir_semisimple(M)
    out = {"semisimple": ok, "summands": [[fmt_scalar(d), fmt_scalar(a)] for d, a in summands]}
    if not ok:
        raise Failure(out)
    return out


def cmd_decompose(args, raws):
    raw, M = _parse(args.module, ser.module_from_json)
    raws.append(raw)
    L1 = _pair(args.L1, "--L1")
    L2 = _pair(args.L2, "--L2")
    if M.algebra != "gc":
        raise InputError(f"{args.module}: decompose needs a gc module")
    run = decompose_gc1 if M.N == 1 else decompose_gcN
    return ser.decomposition_to_json(run(M, L1, L2, args.nmax))


VERBS = {
    "bracket": cmd_bracket,
    "check-virasoro": cmd_check_virasoro,
    "is-standard": cmd_is_standard,
    "make": cmd_make,
    "classify-deg1": cmd_classify,
    "module-axioms": cmd_module_axioms,
    "dual": cmd_dual,
    "restrict": cmd_restrict,
    "regularity": cmd_regularity,
    "weight-product": cmd_weight_product,
    "vir-semisimple": cmd_vir_semisimple,
    "decompose": cmd_decompose,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="gcconf", description="Exact computations in the general conformal algebra gc_N.")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("bracket", help="λ-bracket of two elements")
    p.add_argument("a")
    p.add_argument("b")
    p = sub.add_parser("check-virasoro", help="is [g λ g] = (∂+2λ)g?")
    p.add_argument("element")
    p = sub.add_parser("is-standard", help="standardness of a Virasoro element")
    p.add_argument("element")
    p = sub.add_parser("make", help="build an element from a constructor params file")
    p.add_argument("params")
    p = sub.add_parser("classify-deg1", help="exhaustive degree-one grid check")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--coeffs", required=True, help="comma-separated rationals, e.g. -1,0,1")
    p.add_argument("--deg", type=int, default=0, help="bound on the ∂-degree of coefficients")
    for verb, helptext in (
        ("module-axioms", "check the commutator identity on the action tables"),
        ("dual", "conformal dual of a module"),
    ):
        p = sub.add_parser(verb, help=helptext)
        p.add_argument("module")
        p.add_argument("--nmax", type=int, default=DEFAULT_NMAX)
    p = sub.add_parser("restrict", help="restrict a gc_N module along a Virasoro element")
    p.add_argument("element")
    p.add_argument("module")
    p = sub.add_parser("regularity", help="regularity of a Virasoro action in the given basis")
    p.add_argument("module")
    p.add_argument("--element", action="append", help="Virasoro element (omit for Vir modules)")
    p = sub.add_parser("weight-product", help="conformal weight product over the given elements")
    p.add_argument("module")
    p.add_argument("--element", action="append", help="element of the set (repeat); omit for Vir modules")
    p = sub.add_parser("vir-semisimple", help="semisimplicity of a Vir module")
    p.add_argument("module")
    p = sub.add_parser("decompose", help="split a gc_N module into standard and dual summands")
    p.add_argument("module")
    p.add_argument("--L1", required=True, help="a,b of the first Virasoro element")
    p.add_argument("--L2", required=True, help="a,b of the second Virasoro element")
    p.add_argument("--nmax", type=int, default=DEFAULT_NMAX)
    return ap


_PATH_ARGS = {"verb", "a", "b", "element", "module", "params"}


def _options(args):
    """Non-file options; file contents enter the digest separately."""
    return {k: v for k, v in sorted(vars(args).items()) if k not in _PATH_ARGS}


def _emit(verb, raws, args, result, stream):
    h = hashlib.sha256(verb.encode())
    for raw in raws:
        h.update(hashlib.sha256(raw).digest())
    h.update(json.dumps(_options(args), sort_keys=True).encode())
    report = {"operation": verb, "inputs-digest": h.hexdigest(), "result": result}
    stream.write(json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2) + "\n")


def _error_json(exc):
    out = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ClaimFailed):
        out["witness"] = exc.witness
    return {"error": out}


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    raws = []
    try:
        result = VERBS[args.verb](args, raws)
    except InputError as exc:
        stderr.write(f"gcconf {args.verb}: input error: {exc}\n")
        return 2
    except Failure as f:
        _emit(args.verb, raws, args, f.result, stdout)
        return 1
    except GcError as exc:
        _emit(args.verb, raws, args, _error_json(exc), stdout)
        return 1
    _emit(args.verb, raws, args, result, stdout)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
