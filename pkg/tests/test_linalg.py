"""Exact linear algebra: elimination, kernels, minimum-norm solves, inertia."""

import random
from fractions import Fraction

import pytest

from parahol import linalg


def rand_matrix(rng, m, n, max_abs=6):
    return [[Fraction(rng.randint(-max_abs, max_abs), rng.choice([1, 2, 3]))
             for _ in range(n)] for _ in range(m)]


def test_rref_identity_pivots():
    rows = linalg.identity_vectors(4)
    assert linalg.rref(rows) == [0, 1, 2, 3]


def test_rank_known():
    assert linalg.rank([[1, 2], [2, 4]]) == 1
    assert linalg.rank([[1, 0], [0, 1]]) == 2
    assert linalg.rank([[0, 0], [0, 0]]) == 0


def test_solve_consistent_and_inconsistent():
    a = [[1, 2], [2, 4]]
    assert linalg.solve(a, [3, 6]) is not None
    assert linalg.solve(a, [3, 7]) is None


def test_solve_many_matches_solve():
    rng = random.Random(11)
    a = rand_matrix(rng, 4, 3)
    xs = [rand_matrix(rng, 3, 1) for _ in range(5)]
    cols = [linalg.matvec(a, [row[0] for row in x]) for x in xs]
    sols = linalg.solve_many(a, cols)
    for sol, col in zip(sols, cols):
        assert linalg.matvec(a, sol) == col


def test_solve_many_inconsistent_raises():
    with pytest.raises(ValueError):
        linalg.solve_many([[1, 2], [2, 4]], [[3, 7]])


def test_min_norm_solution_is_minimal_and_exact():
    rng = random.Random(5)
    for _ in range(30):
        a = rand_matrix(rng, 3, 5)
        x_true = [Fraction(rng.randint(-4, 4)) for _ in range(5)]
        b = linalg.matvec(a, x_true)
        x = linalg.solve_min_norm(a, b)
        assert x is not None
        assert linalg.matvec(a, x) == b
        # minimality: orthogonal to the kernel
        for v in linalg.nullspace(a):
            assert linalg.dot(x, v) == 0


def test_min_norm_none_when_inconsistent():
    assert linalg.solve_min_norm([[1, 2], [2, 4]], [1, 3]) is None


def test_nullspace_dimension_and_membership():
    rng = random.Random(9)
    for _ in range(20):
        a = rand_matrix(rng, 4, 6)
        basis = linalg.nullspace(a)
        assert len(basis) == 6 - linalg.rank(a)
        for v in basis:
            assert linalg.is_zero_vector(linalg.matvec(a, v))


@pytest.mark.parametrize("matrix,expected", [
    ([[1, 0], [0, 1]], (2, 0, 0)),
    ([[-3]], (0, 1, 0)),
    ([[0, 1], [1, 0]], (1, 1, 0)),
    ([[0, 0], [0, 0]], (0, 0, 2)),
    ([[2, 1, 0], [1, 2, 0], [0, 0, -5]], (2, 1, 0)),
])
def test_inertia_known(matrix, expected):
    rows = [[Fraction(v) for v in row] for row in matrix]
    assert linalg.inertia(rows) == expected


def test_inertia_matches_numpy_eigenvalues():
    import numpy as np

    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(1, 5)
        a = rand_matrix(rng, n, n, max_abs=4)
        sym = [[a[i][j] + a[j][i] for j in range(n)] for i in range(n)]
        got = linalg.inertia(sym)
        eig = np.linalg.eigvalsh(np.array([[float(v) for v in row] for row in sym]))
        expected = (int((eig > 1e-9).sum()), int((eig < -1e-9).sum()),
                    int((abs(eig) <= 1e-9).sum()))
        assert got == expected


def test_same_span():
    assert linalg.same_span([[1, 0], [0, 1]], [[1, 1], [1, -1]])
    assert not linalg.same_span([[1, 0]], [[0, 1]])
    assert linalg.same_span([[2, 0]], [[Fraction(1, 3), 0]])


def test_in_span():
    assert linalg.in_span([[1, 0, 1], [0, 1, 0]], [2, 3, 2])
    assert not linalg.in_span([[1, 0, 1]], [1, 0, 0])
    assert linalg.in_span([], [0, 0])
