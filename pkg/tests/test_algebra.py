"""Graded algebra construction, bracket, Killing form, grading machinery."""

import random
from fractions import Fraction

import pytest

from parahol import linalg
from parahol.algebra import GradedLieAlgebra
from parahol.errors import (
    GradeRangeError,
    MismatchedAlgebraError,
    StructureError,
)
from parahol.families import build, build_conformal, build_cr
from parahol.sampling import random_element


@pytest.fixture(scope="module")
def so41():
    return build_conformal(3, 0)


@pytest.fixture(scope="module")
def su21():
    return build_cr(1)


CONFORMAL_SIGNATURES = [(2, 0), (3, 0), (1, 1), (2, 1), (0, 2)]


@pytest.mark.parametrize("p,q", CONFORMAL_SIGNATURES)
def test_conformal_dimensions(p, q):
    n = p + q
    algebra = build_conformal(p, q)
    assert algebra.dim == (n + 2) * (n + 1) // 2
    assert algebra.grade_dims() == (n, 1 + n * (n - 1) // 2, n)
    assert algebra.k == 1


def test_conformal_examples_from_block_count():
    assert build_conformal(3, 0).dim == 10
    assert build_conformal(3, 0).grade_dims() == (3, 4, 3)
    assert build_conformal(1, 1).dim == 6
    assert build_conformal(1, 1).grade_dims() == (2, 2, 2)


def test_cr_dimensions():
    algebra = build_cr(1)
    assert algebra.dim == 8
    assert algebra.grade_dims() == (1, 2, 2, 2, 1)
    algebra2 = build_cr(2)
    assert algebra2.dim == 15
    assert algebra2.grade_dims() == (1, 4, 5, 4, 1)


def test_constructor_rejections():
    with pytest.raises(ValueError):
        build_conformal(1, 0)
    with pytest.raises(ValueError):
        build_cr(0)
    with pytest.raises(ValueError):
        build("unknown", [1])


@pytest.mark.parametrize("maker", [
    lambda: build_conformal(2, 0),
    lambda: build_conformal(1, 1),
    lambda: build_cr(1),
])
def test_validate_passes_exactly(maker):
    # validate() raises on any nonzero residual; no tolerance anywhere
    algebra = maker()
    assert algebra.validate() is algebra


def test_bracket_antisymmetry_on_basis(so41):
    for i in range(so41.dim):
        e = so41.basis_element(i)
        assert so41.bracket(e, e).is_zero


def test_grading_element_eigenvalues(so41, su21):
    for algebra in (so41, su21):
        e = algebra.grading_element
        for i in range(algebra.dim):
            y = algebra.basis_element(i)
            assert algebra.bracket(e, y) == algebra.grade[i] * y


def test_grading_element_names(so41, su21):
    assert so41.grading_element == so41.basis_element("D")
    assert su21.grading_element == su21.basis_element("E")


def test_bracket_pk_matches_matrix_realization(so41):
    """Independent route: multiply realization matrices and re-express."""
    real = so41.require_realization()
    for a in ("P_1", "P_2", "P_3"):
        for b in ("K_1", "K_2", "K_3"):
            x = so41.basis_element(a)
            y = so41.basis_element(b)
            mx, my = real.matrix_of(x), real.matrix_of(y)
            comm = [[sum(mx[i][t] * my[t][j] - my[i][t] * mx[t][j]
                         for t in range(real.size))
                     for j in range(real.size)] for i in range(real.size)]
            coords = real.coordinates(comm)
            assert coords is not None
            assert so41.bracket(x, y).coeffs == tuple(coords)


def test_bracket_pk_frozen_values(so41):
    d = so41.basis_element("D")
    m12 = so41.basis_element("M_12")
    assert so41.bracket(so41.basis_element("P_1"), so41.basis_element("K_1")) == d
    assert so41.bracket(so41.basis_element("P_1"), so41.basis_element("K_2")) == -1 * m12


def test_bracket_bilinear_and_antisymmetric_random(so41):
    rng = random.Random(17)
    for _ in range(20):
        x = random_element(so41, rng)
        y = random_element(so41, rng)
        z = random_element(so41, rng)
        c = Fraction(rng.randint(-5, 5), 2)
        assert so41.bracket(x, y) == -1 * so41.bracket(y, x)
        assert so41.bracket(x + c * y, z) == so41.bracket(x, z) + c * so41.bracket(y, z)


def test_killing_symmetric_random(so41):
    rng = random.Random(23)
    for _ in range(10):
        x = random_element(so41, rng)
        y = random_element(so41, rng)
        assert so41.killing_form(x, y) == so41.killing_form(y, x)


@pytest.mark.parametrize("p,q", CONFORMAL_SIGNATURES)
def test_killing_of_grading_element_conformal(p, q):
    # eigenvalue count: B(E,E) = sum_i i^2 dim g_i = 2n; confirmed by trace
    algebra = build_conformal(p, q)
    e = algebra.grading_element
    n = p + q
    by_eigenvalues = sum(
        g * g * len(algebra.indices_of_grade(g))
        for g in range(-algebra.k, algebra.k + 1)
    )
    assert by_eigenvalues == 2 * n
    assert algebra.killing_form(e, e) == 2 * n


def test_killing_of_grading_element_cr(su21):
    e = su21.grading_element
    by_eigenvalues = sum(
        g * g * len(su21.indices_of_grade(g)) for g in range(-2, 3)
    )
    assert by_eigenvalues == 12
    assert su21.killing_form(e, e) == 12


def test_killing_grade_orthogonality(so41, su21):
    # ad x ad y strictly shifts degree when grades don't sum to zero
    for algebra in (so41, su21):
        for i in range(algebra.dim):
            for j in range(algebra.dim):
                if algebra.grade[i] + algebra.grade[j] != 0:
                    x = algebra.basis_element(i)
                    y = algebra.basis_element(j)
                    assert algebra.killing_form(x, y) == 0


def test_killing_ad_invariance(so41, su21):
    rng = random.Random(31)
    for algebra in (so41, su21):
        for _ in range(10):
            x = random_element(algebra, rng)
            y = random_element(algebra, rng)
            z = random_element(algebra, rng)
            lhs = algebra.killing_form(algebra.bracket(z, x), y)
            rhs = algebra.killing_form(x, algebra.bracket(z, y))
            assert lhs + rhs == 0


def test_killing_pairing_nondegenerate_per_grade(so41, su21):
    # B restricted to g_j x g_-j has full rank
    for algebra in (so41, su21):
        b = algebra.killing_matrix
        for g in range(1, algebra.k + 1):
            rows = [[b[i][j] for j in algebra.indices_of_grade(-g)]
                    for i in algebra.indices_of_grade(g)]
            assert linalg.rank(rows) == len(rows)


def test_component_projection(so41):
    e = so41.grading_element
    assert so41.component(e, 0) == e
    assert so41.component(e, 1).is_zero
    x = so41.basis_element("P_1") + so41.basis_element("K_1")
    assert so41.component(x, 1) == so41.basis_element("K_1")


def test_components_partition_random(so41, su21):
    rng = random.Random(41)
    for algebra in (so41, su21):
        for _ in range(10):
            x = random_element(algebra, rng)
            total = algebra.zero()
            for g in range(-algebra.k, algebra.k + 1):
                total = total + x.component(g)
            assert total == x


def test_component_range_error(so41):
    with pytest.raises(GradeRangeError):
        so41.component(so41.zero(), 2)


def test_grading_additivity_random(so41, su21):
    rng = random.Random(43)
    for algebra in (so41, su21):
        for _ in range(8):
            x = random_element(algebra, rng)
            y = random_element(algebra, rng)
            bxy = algebra.bracket(x, y)
            for c in range(-algebra.k, algebra.k + 1):
                expected = algebra.zero()
                for a in range(-algebra.k, algebra.k + 1):
                    b = c - a
                    if abs(b) <= algebra.k:
                        expected = expected + algebra.bracket(
                            x.component(a), y.component(b))
                assert bxy.component(c) == expected


def test_negative_part_generated_by_grade_minus_one(su21):
    # bracket of grade -1 spans grade -2 (restated for the k=2 constructor)
    g1 = [su21.basis_element(i) for i in su21.indices_of_grade(-1)]
    span = [list(su21.bracket(a, b).coeffs) for a in g1 for b in g1]
    idx = su21.indices_of_grade(-2)
    rows = [[v[i] for i in idx] for v in span]
    assert linalg.rank(rows) == len(idx)


def test_mismatched_algebra_errors(so41):
    other = build_conformal(3, 0)
    x = so41.basis_element("D")
    y = other.basis_element("D")
    with pytest.raises(MismatchedAlgebraError):
        so41.bracket(x, y)
    with pytest.raises(MismatchedAlgebraError):
        so41.killing_form(x, y)
    with pytest.raises(MismatchedAlgebraError):
        x + y


def test_element_immutable(so41):
    x = so41.basis_element("D")
    with pytest.raises(AttributeError):
        x.coeffs = ()


def test_exactness_flag(so41):
    x = so41.basis_element("D")
    assert x.exact
    y = so41.element_from_coeffs([0.5] + [0] * (so41.dim - 1))
    assert not y.exact
    assert y.float_coeffs()[0] == 0.5


def test_exp_ad_rejects_mixed_sign(so41):
    z = so41.basis_element("P_1") + so41.basis_element("K_1")
    with pytest.raises(ValueError):
        so41.exp_ad(z, so41.basis_element("D"))
    z0 = so41.basis_element("D")
    with pytest.raises(ValueError):
        so41.exp_ad(z0, so41.basis_element("P_1"))


def test_describe_and_sparse_export(so41):
    doc = so41.describe()
    assert doc["family"] == "conformal"
    assert doc["params"] == [3, 0]
    assert len(doc["basis"]) == 10
    assert doc["grades"].count(0) == 4
    triples = so41.structure_sparse()
    # rebuild the bracket of P_1, K_1 from the sparse export alone
    i = so41.basis_index("P_1")
    j = so41.basis_index("K_1")
    coeffs = [Fraction(0)] * so41.dim
    for a, b, l, c in triples:
        if a == i and b == j:
            coeffs[l] = Fraction(c)
    assert so41.element_from_coeffs(coeffs) == so41.basis_element("D")


def test_structure_error_on_bad_grading():
    # a grade map violating additivity must be caught exactly
    algebra = build_conformal(2, 0)
    bad_grades = list(algebra.grade)
    bad_grades[0] = 1
    with pytest.raises(StructureError):
        GradedLieAlgebra(
            algebra.basis_names, bad_grades, algebra.structure, 1,
            "conformal", (2, 0),
        ).validate()


def test_jacobi_residual_exactly_zero_conformal20():
    # validity requirement: validate() would raise on any nonzero residual
    algebra = build_conformal(2, 0)
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            for l in range(algebra.dim):
                ei = algebra.basis_element(i)
                ej = algebra.basis_element(j)
                el = algebra.basis_element(l)
                total = (algebra.bracket(algebra.bracket(ei, ej), el)
                         + algebra.bracket(algebra.bracket(ej, el), ei)
                         + algebra.bracket(algebra.bracket(el, ei), ej))
                assert total.is_zero
