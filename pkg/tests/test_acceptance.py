"""Acceptance criteria, one test each, with their stated tolerances and time limits.

Every test prints a single PASS/FAIL line; the lines are repeated in the
terminal summary.  All comparisons are exact.
"""

import itertools
import time
from collections import Counter

from gcconf import (
    J,
    PolyMatrix,
    Scalar,
    basis_change,
    bracket_at,
    canonical_embed,
    check_jacobi,
    check_module_axioms,
    check_regular,
    check_skew_symmetry,
    classify_deg1_grid,
    combinatorial_identity,
    decompose_gc1,
    decompose_gcN,
    direct_sum,
    dual_module,
    explicit,
    gc_dual,
    gc_standard,
    hv_module,
    is_standard,
    is_virasoro,
    make_canonical,
    make_gc1_virasoro,
    make_nonstandard,
    make_standard_deg1,
    make_standard_higher,
    restrict_to_virasoro,
    similarity_residuals,
    solve_partition_relations,
    tables_equal,
    unit_element,
    vir_module,
)
from gcconf.modules import materialize
from gcconf.poly import DEL, LAMBDA

from _util import (
    rand_const,
    rand_del_poly,
    rand_higher_params,
    rand_idempotent,
    rand_invertible,
    rand_nonstandard_params,
    rand_nonzero,
    rand_scalar,
    rng_for,
    scrambled_sum,
)

E11_21 = [[1, 0, 0], [1, 0, 0], [0, 0, 0]]
M21_22 = [[0, 0, 0], [-1, 1, 0], [0, 0, 0]]
E33 = [[0, 0, 0], [0, 0, 0], [0, 0, 1]]


def test_c01_algebra_axioms(criterion):
    rng = rng_for(101)
    t = time.perf_counter()
    count = fails = 0
    for N in (1, 2, 3):
        units = [(n, i, j) for n in range(4) for i in range(N) for j in range(N)]
        gens = {u: unit_element(*u, N, rand_del_poly(rng)) for u in units}
        # skew-symmetry: every ordered pair of matrix-unit generators
        for u, v in itertools.product(units, repeat=2):
            count += 1
            fails += not check_skew_symmetry(gens[u], gens[v]).ok
        # Jacobi: every generator triple for N ≤ 2; for N = 3 every matrix-unit
        # triple with random degrees (all 36³ generator triples exceed the budget)
        if N <= 2:
            triples = list(itertools.product(units, repeat=3))
        else:
            idx = [(i, j) for i in range(N) for j in range(N)]
            triples = [tuple((rng.randint(0, 3), *e) for e in es) for es in itertools.product(idx, repeat=3)]
        for u, v, w in triples:
            count += 1
            fails += not check_jacobi(gens[u], gens[v], gens[w]).ok
    dt = time.perf_counter() - t
    ok = criterion(1, count >= 500 and fails == 0, f"{count} skew/Jacobi instances, {fails} failures", dt, 30)
    assert ok


def test_c02_gc1_virasoro_family(criterion):
    rng = rng_for(102)
    t = time.perf_counter()
    good = perturbed_false = 0
    for _ in range(100):
        g = make_gc1_virasoro(rand_scalar(rng, 20, 9), rand_scalar(rng, 20, 9))
        good += is_virasoro(g).is_virasoro
        eps = rand_nonzero(rng, 20, 9)
        perturbed_false += not is_virasoro(g + J(2, [[1]], eps)).is_virasoro
    dt = time.perf_counter() - t
    ok = criterion(2, good == 100 and perturbed_false == 100, f"{good}/100 Virasoro, {perturbed_false}/100 perturbed rejected", dt, 5)
    assert ok


def test_c03_displayed_gc3_examples(criterion):
    t = time.perf_counter()
    I3 = PolyMatrix.identity(3)
    T3 = J(1, I3) + J(0, E11_21) + J(0, M21_22, DEL + 1) + J(2, E33)
    T4 = J(1, I3) + J(0, E11_21, DEL) + J(0, M21_22, DEL + 1) + J(2, E33)
    results = []
    for name, T in (("T3", T3), ("T4", T4)):
        cert = is_virasoro(T)
        std = is_standard(T, require_virasoro=False)
        results.append((name, cert.is_virasoro, cert.degree, std))
    dt = time.perf_counter() - t
    ok = all(v and d == 2 and not s for _, v, d, s in results)
    detail = ", ".join(f"{n}: is_virasoro={v} degree={d} is_standard={s}" for n, v, d, s in results)
    ok = criterion(3, ok, detail, dt, 1)
    assert ok, "the displayed gc_3 elements fail [T λ T] = (∂+2λ)T; see the decisions ledger"


def test_c04_grid_classification(criterion):
    t = time.perf_counter()
    r1 = classify_deg1_grid(1, [-1, 0, 1], 1)
    r2 = classify_deg1_grid(2, [0, 1], 0)
    dt = time.perf_counter() - t
    ok = not r1.counterexamples and not r2.counterexamples
    detail = (
        f"N=1: {r1.candidates} candidates, {len(r1.virasoro)} Virasoro, {len(r1.counterexamples)} counterexamples; "
        f"N=2: {r2.candidates} candidates, {len(r2.virasoro)} Virasoro ({r2.standard} standard), {len(r2.counterexamples)} counterexamples"
    )
    ok = criterion(4, ok, detail, dt, 300)
    assert ok


def test_c05_constructor_soundness(criterion):
    rng = rng_for(105)
    t = time.perf_counter()
    made = bad = 0
    for _ in range(50):
        n = rng.randint(1, 3)
        g = make_standard_deg1(rng.choice([1, 2]), rand_scalar(rng), rand_scalar(rng), rand_idempotent(rng, n), rand_const(rng, n))
        made += 1
        bad += not is_virasoro(g).is_virasoro
    for _ in range(50):
        A, coeffs = rand_higher_params(rng, rng.randint(2, 3))
        g = make_standard_higher(A, coeffs)
        made += 1
        bad += not is_virasoro(g).is_virasoro
    for kind in ("T1", "T2", "T3", "T4") * 13:
        g = make_nonstandard(**rand_nonstandard_params(rng, kind))
        made += 1
        cert = is_virasoro(g)
        bad += not cert.is_virasoro or is_standard(g)
    dt = time.perf_counter() - t
    ok = criterion(5, bad == 0, f"{made} constructor outputs, {bad} failures", dt, 30)
    assert ok


def _all_recipes():
    rng = rng_for(106)
    return [
        vir_module(Scalar(1, 2), -3),
        hv_module(2, Scalar(1, 3), -1),
        gc_standard(Scalar(-2, 5), 2),
        gc_dual(Scalar(3, 4), 3),
        direct_sum([gc_standard(1, 2), gc_dual(-1, 2)]),
        basis_change(direct_sum([gc_standard(0, 2), gc_dual(2, 2)]), rand_invertible(rng, 4)),
        materialize(gc_dual(1, 2), 4),
        restrict_to_virasoro(make_canonical(2, 1, 2), gc_standard(Scalar(1, 2), 2)),
        dual_module(gc_standard(5, 1)),
    ]


def test_c06_dual_fixtures(criterion):
    rng = rng_for(106)
    t = time.perf_counter()
    fails = []
    for _ in range(20):
        d, a = rand_scalar(rng), rand_scalar(rng)
        if tables_equal(dual_module(vir_module(d, a)), vir_module(1 - d, -a)) is not None:
            fails.append(("vir", d, a))
    for N in (1, 2, 3):
        a = rand_scalar(rng)
        if tables_equal(dual_module(gc_standard(a, N)), gc_dual(a, N), 4) is not None:
            fails.append(("gc", N, a))
    for M in _all_recipes():
        if tables_equal(dual_module(dual_module(M)), M, 4) is not None:
            fails.append(("involution", M.kind))
    dt = time.perf_counter() - t
    ok = criterion(6, not fails, f"20 Vir duals, 3 gc duals, {len(_all_recipes())} involutions; failures {fails}", dt, 10)
    assert ok


def test_c07_partition_relations(criterion):
    t = time.perf_counter()
    sols = solve_partition_relations()
    dt = time.perf_counter() - t
    ok = criterion(7, set(sols) == {(1, 1), (0, -1)} and len(sols) == 2, f"solutions {[(str(d), str(b)) for d, b in sols]}", dt)
    assert ok


def test_c08_binomial_identities(criterion):
    t = time.perf_counter()
    bad = [(w, n) for w in (1, 2, 3) for n in range(11) if not combinatorial_identity(w, n)]
    dt = time.perf_counter() - t
    ok = criterion(8, not bad, f"3 identities x n=0..10, failures {bad}", dt, 1)
    assert ok


def test_c09_restricted_standard_module(criterion):
    rng = rng_for(109)
    t = time.perf_counter()
    bad = 0
    for _ in range(20):
        a, b, N = rand_scalar(rng), rand_scalar(rng), rng.randint(1, 3)
        V = restrict_to_virasoro(canonical_embed(make_gc1_virasoro(a, b), N), gc_standard(0, N))
        rep = check_regular(None, V)
        bad += not (rep.regular and rep.weights == [(1 - a, b)] * N)
    dt = time.perf_counter() - t
    ok = criterion(9, bad == 0, f"20 restrictions, {bad} mismatches with weight 1-a and shift b", dt, 5)
    assert ok


def test_c10_gc1_roundtrip(criterion):
    rng = rng_for(110)
    t = time.perf_counter()
    bad = 0
    for _ in range(50):
        parts = [(rng.choice(["standard", "dual"]), rand_scalar(rng, 2, 2)) for _ in range(rng.randint(1, 5))]
        M, want = scrambled_sum(rng, parts, 1)
        L2 = (rng.choice([0, 1]), rand_nonzero(rng))
        rep = decompose_gc1(M, (0, 0), L2, 4)
        got = sorted((s.kind, s.alpha, s.mult) for s in rep.summands)
        same = tables_equal(basis_change(M, rep.basis_change), rep.recipe(1), 4) is None
        bad += got != want or not same
    dt = time.perf_counter() - t
    ok = criterion(10, bad == 0, f"50 scrambled gc_1 sums, {bad} mismatches", dt, 60)
    assert ok


def test_c11_gcN_roundtrip(criterion):
    rng = rng_for(111)
    t = time.perf_counter()
    cases = bad = 0
    for N in (2, 3):
        for m, m2 in itertools.product(range(3), repeat=2):
            if m + m2 == 0:
                continue
            a, a2 = rand_scalar(rng), rand_scalar(rng)
            M, want = scrambled_sum(rng, [("standard", a)] * m + [("dual", a2)] * m2, N)
            rep = decompose_gcN(M, (0, 0), (1, 0), 4)
            got = sorted((s.kind, s.alpha, s.mult) for s in rep.summands)
            residual_zero = all(
                R.is_zero() for _, phi, P in rep.similarities for R in similarity_residuals(phi, P).values()
            )
            same = tables_equal(basis_change(M, rep.basis_change), rep.recipe(N), 4) is None
            cases += 1
            bad += got != want or not residual_zero or not same
    dt = time.perf_counter() - t
    ok = criterion(11, bad == 0, f"{cases} scrambled gc_2/gc_3 modules, {bad} mismatches", dt, 120)
    assert ok


def test_c12_module_axioms(criterion):
    t = time.perf_counter()
    recipes = [vir_module(Scalar(1, 2), 3), hv_module(-1, 2, Scalar(1, 3))]
    for N in (1, 2, 3):
        recipes += [gc_standard(Scalar(1, 2), N), gc_dual(Scalar(-1, 3), N)]
    recipes += [
        direct_sum([gc_standard(0, 2), gc_dual(1, 2)]),
        basis_change(direct_sum([gc_standard(0, 2), gc_dual(1, 2)]), rand_invertible(rng_for(112), 4)),
        dual_module(gc_standard(2, 3)),
        restrict_to_virasoro(make_standard_higher([[1, 0], [0, 0]], [(2, 1, [[0, 1], [0, 0]])]), gc_standard(0, 2)),
        materialize(gc_standard(1, 2), 4),
    ]
    failing = [M.kind for M in recipes if check_module_axioms(M, 4)]
    table = gc_standard(0, 2).tables(4)
    grid = table[1, 0, 0].tolist()
    grid[0][0] = grid[0][0] + LAMBDA
    table[1, 0, 0] = PolyMatrix(grid)
    witnesses = check_module_axioms(explicit("gc", 2, 2, table, 4), 4)
    hit = (1, 0, 0)

    def involves_corrupted(w):
        # the corrupted generator enters as a, as b, or through the bracket [a λ b]
        if (w.m, *w.A) == hit or (w.n, *w.B) == hit:
            return True
        br = bracket_at(unit_element(w.m, *w.A, 2), unit_element(w.n, *w.B, 2))
        return any((n, i, j) == hit for n, i, j, _ in br.entries())

    caught = (
        bool(witnesses)
        and all(involves_corrupted(w) and not w.residual.is_zero() for w in witnesses)
        and any((w.m, *w.A) == hit or (w.n, *w.B) == hit for w in witnesses)
    )
    dt = time.perf_counter() - t
    detail = f"{len(recipes)} recipe modules, failing {failing}; corrupted table: {len(witnesses)} witnesses, each involves J^1_E11"
    ok = criterion(12, not failing and caught, detail, dt, 60)
    assert ok
