from concurrent.futures import ThreadPoolExecutor

import pytest

from gcconf import (
    CutoffExceeded,
    DimensionMismatch,
    J,
    NotVirasoro,
    PolyMatrix,
    Scalar,
    SingularMatrix,
    act,
    act_element,
    basis_change,
    check_module_axioms,
    constant_inverse,
    direct_sum,
    dual_module,
    explicit,
    gc_dual,
    gc_standard,
    hv_module,
    make_canonical,
    make_standard_higher,
    restrict_to_virasoro,
    tables_equal,
    vir_module,
)
from gcconf.errors import InputError
from gcconf.modules import materialize
from gcconf.poly import DEL, LAMBDA

from _util import rand_const, rand_invertible, rand_scalar, rng_for


def test_standard_action_formula():
    M = gc_standard(Scalar(1, 2), 2)
    A = PolyMatrix.constant([[1, 2], [3, 4]])
    for n in range(4):
        assert act(M, n, A) == A * (DEL + LAMBDA + Scalar(1, 2)) ** n


def test_dual_action_formula():
    M = gc_dual(Scalar(-2, 3), 3)
    A = rand_const(rng_for(1), 3)
    for n in range(4):
        assert act(M, n, A) == A.T * (-((-DEL + Scalar(-2, 3)) ** n))


def test_vir_and_hv_actions():
    assert vir_module(2, 3).unit_action(1, 0, 0) == PolyMatrix([[DEL + LAMBDA * 2 + 3]])
    H = hv_module(1, 0, 5)
    assert H.unit_action(0, 0, 0) == PolyMatrix.constant([[5]])
    assert H.unit_action(1, 0, 0) == PolyMatrix([[DEL + LAMBDA]])
    with pytest.raises(InputError):
        vir_module(1, 0).unit_action(0, 0, 0)


def test_act_is_linear():
    rng = rng_for(2)
    M = direct_sum([gc_standard(1, 2), gc_dual(-1, 2)])
    for _ in range(5):
        A, B, c = rand_const(rng, 2), rand_const(rng, 2), rand_scalar(rng)
        n = rng.randint(0, 3)
        assert act(M, n, A + B * c) == act(M, n, A) + act(M, n, B) * c


@pytest.mark.parametrize(
    "M, n_max",
    [
        (gc_standard(Scalar(3, 2), 2), 3),
        (gc_dual(Scalar(-1, 3), 3), 3),
        (vir_module(Scalar(1, 2), 4), 4),
        (hv_module(2, -1, Scalar(1, 3)), 4),
        (direct_sum([gc_standard(0, 2), gc_dual(0, 2)]), 2),
    ],
    ids=["standard-gc2", "dual-gc3", "vir", "hv", "sum-gc2"],
)
def test_recipe_modules_pass_axioms(M, n_max):
    assert check_module_axioms(M, n_max) == []


def test_direct_sum_block_diagonal():
    M = direct_sum([gc_standard(0, 2), gc_dual(0, 2)])
    assert M.rank == 4
    F = M.unit_action(2, 0, 1)
    assert F == PolyMatrix.block_diag([gc_standard(0, 2).unit_action(2, 0, 1), gc_dual(0, 2).unit_action(2, 0, 1)])


def test_corrupted_table_witness():
    M = gc_standard(0, 2)
    table = M.tables(4)
    F = table[1, 0, 0]
    grid = F.tolist()
    grid[0][0] = grid[0][0] + LAMBDA
    table[1, 0, 0] = PolyMatrix(grid)
    bad = check_module_axioms(explicit("gc", 2, 2, table, 4))
    assert bad
    w = bad[0]
    assert (w.m, w.A) == (1, (0, 0)) or (w.n, w.B) == (1, (0, 0))
    assert not w.residual.is_zero()
    js = w.to_json()
    assert set(js) == {"m", "n", "A", "B", "residual"}
    assert check_module_axioms(explicit("gc", 2, 2, M.tables(4), 4)) == []


def test_first_only_stops_early():
    M = gc_standard(0, 1)
    table = M.tables(3)
    table[0, 0, 0] = PolyMatrix([[DEL]])
    bad = check_module_axioms(explicit("gc", 1, 1, table, 3), first_only=True)
    assert len(bad) == 1


def test_explicit_cutoff():
    M = materialize(gc_standard(0, 1), 2)
    assert M.cutoff == 2
    with pytest.raises(CutoffExceeded):
        M.unit_action(3, 0, 0)
    with pytest.raises(CutoffExceeded):
        explicit("gc", 1, 1, {(3, 0, 0): PolyMatrix([[DEL]])}, 2)
    with pytest.raises(DimensionMismatch):
        explicit("gc", 1, 2, {(0, 0, 0): PolyMatrix([[DEL]])}, 2)


def test_vir_dual_fixture():
    rng = rng_for(3)
    for _ in range(10):
        d, a = rand_scalar(rng), rand_scalar(rng)
        assert tables_equal(dual_module(vir_module(d, a)), vir_module(1 - d, -a)) is None


def test_gc_dual_fixture_and_involution():
    for N in (1, 2, 3):
        a = Scalar(2, 5)
        assert tables_equal(dual_module(gc_standard(a, N)), gc_dual(a, N)) is None
        assert tables_equal(dual_module(dual_module(gc_dual(a, N))), gc_dual(a, N)) is None


def test_dual_passes_axioms():
    M = dual_module(basis_change(direct_sum([gc_standard(1, 2), gc_dual(2, 2)]), rand_invertible(rng_for(4), 4)))
    assert check_module_axioms(M, 2) == []
    assert check_module_axioms(dual_module(hv_module(1, 2, 3))) == []


def test_basis_change_roundtrip():
    rng = rng_for(5)
    M = direct_sum([gc_standard(1, 2), gc_dual(-1, 2)])
    U = rand_invertible(rng, 4)
    back = basis_change(basis_change(M, U), constant_inverse(U))
    assert tables_equal(back, M, 3) is None
    assert tables_equal(basis_change(M, PolyMatrix.identity(4)), M, 3) is None
    assert check_module_axioms(basis_change(M, U), 2) == []


def test_basis_change_rejects():
    with pytest.raises(SingularMatrix):
        basis_change(gc_standard(0, 2), [[1, 1], [1, 1]])
    with pytest.raises(DimensionMismatch):
        basis_change(gc_standard(0, 2), PolyMatrix.identity(3))


def test_restrict_canonical_weights():
    rng = rng_for(6)
    for _ in range(5):
        a, b = rand_scalar(rng), rand_scalar(rng)
        V = restrict_to_virasoro(make_canonical(a, b, 3), gc_standard(0, 3))
        assert V.unit_action(1, 0, 0) == PolyMatrix.identity(3) * (DEL + LAMBDA * (1 - a) + b)


def test_restrict_higher_standard_action():
    A = [[1, 0], [0, 0]]
    g = make_standard_higher(A, [(2, 3, [[0, 1], [0, 0]]), (3, -1, [[0, 0], [1, 1]])])
    V = restrict_to_virasoro(g, gc_standard(0, 2))
    Am = PolyMatrix.constant(A)
    x = DEL + LAMBDA
    want = Am * x + (Am @ PolyMatrix.constant([[0, 1], [0, 0]])) * (x**2 * 3) - (Am @ PolyMatrix.constant([[0, 0], [1, 1]])) * x**3
    assert V.unit_action(1, 0, 0) == want
    assert check_module_axioms(V) == []


def test_restrict_errors():
    with pytest.raises(NotVirasoro):
        restrict_to_virasoro(J(0, [[1]]), gc_standard(0, 1))
    with pytest.raises(DimensionMismatch):
        restrict_to_virasoro(make_canonical(0, 0, 2), gc_standard(0, 3))
    with pytest.raises(CutoffExceeded):
        restrict_to_virasoro(make_standard_higher([[1, 0], [0, 0]], [(2, 1, [[0, 1], [0, 0]])]), materialize(gc_standard(0, 2), 1))


def test_act_element_uses_sesquilinearity():
    M = gc_standard(0, 1)
    x = J(1, [[1]], DEL * 2 + 1)
    assert act_element(M, x) == PolyMatrix([[(DEL + LAMBDA) * (-LAMBDA * 2 + 1)]])


def test_concurrent_materialization():
    M = basis_change(direct_sum([gc_standard(1, 2), gc_dual(3, 2)]), rand_invertible(rng_for(7), 4))
    keys = [(n, i, j) for n in range(4) for i in range(2) for j in range(2)] * 4
    with ThreadPoolExecutor(8) as ex:
        got = list(ex.map(lambda k: M.unit_action(*k), keys))
    ref = basis_change(direct_sum([gc_standard(1, 2), gc_dual(3, 2)]), M.params[1])
    assert all(F == ref.unit_action(*k) for k, F in zip(keys, got))
