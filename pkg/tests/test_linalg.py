import pytest

from gcconf import PolyMatrix, Scalar, SingularMatrix, constant_inverse, exact_solve, rank
from gcconf.linalg import det, image_basis

from _util import rand_invertible, rng_for


def test_identity_solve():
    s = exact_solve([[1, 0], [0, 1]], [3, Scalar(-1, 2)])
    assert s.particular == [3, Scalar(-1, 2)]
    assert s.rank == 2 and s.kernel == []


def test_zero_matrix_no_solution():
    s = exact_solve([[0, 0], [0, 0]], [1, 0])
    assert not s.consistent
    assert s.rank == 0 and len(s.kernel) == 2


def test_solution_and_kernel_properties():
    rng = rng_for(3)
    for _ in range(30):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        M = [[Scalar(rng.randint(-2, 2)) for _ in range(cols)] for _ in range(rows)]
        b = [Scalar(rng.randint(-3, 3)) for _ in range(rows)]
        s = exact_solve(M, b)
        assert s.rank + len(s.kernel) == cols
        for k in s.kernel:
            assert all(sum((m * x for m, x in zip(row, k)), Scalar(0)) == 0 for row in M)
        if s.consistent:
            assert [sum((m * x for m, x in zip(row, s.particular)), Scalar(0)) for row in M] == b


def test_inverse_examples():
    assert constant_inverse(PolyMatrix.identity(3)) == PolyMatrix.identity(3)
    D = PolyMatrix.constant([[2, 0], [0, 3]])
    assert constant_inverse(D) == PolyMatrix.constant([[Scalar(1, 2), 0], [0, Scalar(1, 3)]])


def test_random_inverse_multiplies_back():
    rng = rng_for(4)
    for _ in range(10):
        M = rand_invertible(rng, 4)
        Mi = constant_inverse(M)
        assert M @ Mi == PolyMatrix.identity(4) == Mi @ M


def test_singular_inverse_raises():
    with pytest.raises(SingularMatrix):
        constant_inverse([[1, 2], [2, 4]])
    assert det([[1, 2], [2, 4]]) == 0


def test_twisted_idempotent_image_dimension():
    # Φ(E11) for Φ(A) = Q (I_m ⊗ A) Q⁻¹ has rank m
    rng = rng_for(5)
    N, m = 2, 3
    Q = rand_invertible(rng, N * m)
    E = PolyMatrix.unit(N, 0, 0).kron_identity(m)
    phi = Q @ E @ constant_inverse(Q)
    assert rank(phi) == m
    assert len(image_basis(phi)) == m
