"""Quadratic zero-attainment: exact decisions checked against a numeric oracle."""

import random
from fractions import Fraction

import numpy as np
import pytest

from parahol.quadratic import QuadraticMap, attains_zero


def qmap(quad, lin, const):
    return QuadraticMap(
        tuple(tuple(Fraction(v) for v in row) for row in quad),
        tuple(Fraction(v) for v in lin),
        Fraction(const),
    )


def numeric_range_contains_zero(q):
    """Oracle: sign of inf/sup from eigenvalues of the quadratic part."""
    m = q.dim
    quad = np.array([[float(v) for v in row] for row in q.quad])
    lin = np.array([float(v) for v in q.lin])
    const = float(q.const)
    eig, vecs = np.linalg.eigh(quad)
    pos = eig > 1e-12
    neg = eig < -1e-12
    null = ~(pos | neg)
    if pos.any() and neg.any():
        return True
    if null.any() and (abs(vecs[:, null].T @ lin) > 1e-12).any():
        return True
    if not pos.any() and not neg.any():
        return abs(const) < 1e-12
    # semidefinite with lin in the range: extremum value decides
    t0 = -np.linalg.pinv(quad) @ lin / 2
    val = const + lin @ t0 + t0 @ quad @ t0
    if pos.any():
        return val <= 1e-12
    return val >= -1e-12


CASES = [
    (qmap([[1]], [0], 1), False),          # t^2 + 1
    (qmap([[1]], [0], -2), True),          # t^2 - 2 (irrational root)
    (qmap([[1]], [0], 0), True),           # t^2
    (qmap([[1]], [-2], 1), True),          # (t-1)^2
    (qmap([[-1]], [0], -1), False),        # -t^2 - 1
    (qmap([[0]], [3], 5), True),           # affine
    (qmap([[0]], [0], 0), True),           # zero
    (qmap([[0]], [0], 4), False),          # nonzero constant
    (qmap([[1, 0], [0, -1]], [0, 0], 7), True),       # indefinite
    (qmap([[1, 0], [0, 1]], [0, 0], -3), True),       # circle radius sqrt(3)
    (qmap([[1, 0], [0, 1]], [0, 0], 3), False),
    (qmap([[1, 0], [0, 0]], [0, 1], 10), True),       # parabola, kernel line
]


@pytest.mark.parametrize("q,expected", CASES)
def test_known_cases(q, expected):
    decision = attains_zero(q)
    assert decision.feasible == expected
    if decision.feasible:
        value = q(decision.witness)
        if decision.exact_witness:
            assert value == 0
        else:
            assert abs(float(value)) < 1e-9


def test_rational_witnesses_for_affine():
    q = qmap([[0, 0], [0, 0]], [2, -3], 7)
    d = attains_zero(q)
    assert d.feasible and d.exact_witness
    assert q(d.witness) == 0


def test_decision_matches_numeric_oracle_randomly():
    rng = random.Random(1234)
    for _ in range(300):
        m = rng.randint(1, 3)
        a = [[Fraction(rng.randint(-3, 3)) for _ in range(m)] for _ in range(m)]
        quad = [[a[i][j] + a[j][i] for j in range(m)] for i in range(m)]
        if rng.randrange(4) == 0:
            quad = [[Fraction(0)] * m for _ in range(m)]
        lin = [Fraction(rng.randint(-4, 4)) for _ in range(m)]
        const = Fraction(rng.randint(-6, 6))
        q = qmap(quad, lin, const)
        decision = attains_zero(q)
        assert decision.feasible == numeric_range_contains_zero(q), (
            quad, lin, const)
        if decision.feasible and decision.exact_witness:
            assert q(decision.witness) == 0
        elif decision.feasible:
            assert abs(float(q(decision.witness))) < 1e-8


def test_zero_dimensional():
    assert attains_zero(qmap([], [], 0)).feasible
    assert not attains_zero(qmap([], [], 5)).feasible
