"""Constructors for the built-in graded algebra families.

Both families are built from explicit block matrix realizations with
integer entries, so the derived structure constants are exact:

* build_conformal(p, q): so(p+1, q+1) with its |1|-grading, preserving a
  split quadratic form whose first and last coordinates are a hyperbolic
  pair. Basis: P_1..P_n (grade -1), D and rotations M_ab (grade 0),
  K_1..K_n (grade +1).
* build_cr(n): su(n+1, 1) with its |2|-grading, realified over the reals
  (complex entries become 2x2 blocks; the algebra is exposed as a real Lie
  algebra of dimension (n+1)(n+3)). Basis: T (grade -2), P_1..P_2n
  (grade -1), E, J_a, U_ab, V_ab (grade 0), K_1..K_2n (grade +1),
  S (grade +2).
"""

from fractions import Fraction

from .algebra import GradedLieAlgebra
from .errors import StructureError

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def build_conformal(p, q):
    """so(p+1, q+1) with the |1|-grading of conformal geometry.

    Requires p + q >= 2. All invariants are validated exactly on
    construction and the matrix realization is registered.
    """
    n = p + q
    if n < 2 or p < 0 or q < 0:
        raise ValueError("build_conformal requires p, q >= 0 with p + q >= 2")
    size = n + 2
    j_diag = [ONE] * p + [-ONE] * q

    def blank():
        return [[ZERO] * size for _ in range(size)]

    names, grades, mats = [], [], []

    for a in range(n):
        m = blank()
        m[1 + a][0] = ONE
        m[size - 1][1 + a] = -j_diag[a]
        names.append(f"P_{a + 1}")
        grades.append(-1)
        mats.append(m)

    m = blank()
    m[0][0] = ONE
    m[size - 1][size - 1] = -ONE
    names.append("D")
    grades.append(0)
    mats.append(m)

    for a in range(n):
        for b in range(a + 1, n):
            m = blank()
            m[1 + a][1 + b] = j_diag[b]
            m[1 + b][1 + a] = -j_diag[a]
            names.append(f"M_{a + 1}{b + 1}")
            grades.append(0)
            mats.append(m)

    for a in range(n):
        m = blank()
        m[1 + a][size - 1] = ONE
        m[0][1 + a] = -j_diag[a]
        names.append(f"K_{a + 1}")
        grades.append(1)
        mats.append(m)

    form = blank()
    form[0][size - 1] = ONE
    form[size - 1][0] = ONE
    for a in range(n):
        form[1 + a][1 + a] = j_diag[a]

    algebra = GradedLieAlgebra.from_matrices(
        names, grades, mats, k=1, family="conformal", params=(p, q), form=form
    )
    algebra.validate()
    if algebra.grading_element != algebra.basis_element("D"):
        raise StructureError("conformal grading element is not D")
    return algebra


def build_cr(n):
    """su(n+1, 1) with its |2|-grading, as a real Lie algebra.

    The Hermitian form has a hyperbolic pair in the first/last complex
    coordinates. Complex matrices are realified, doubling the real
    dimension of each complex entry.
    """
    if n < 1:
        raise ValueError("build_cr requires n >= 1")
    m = n + 2

    # complex entries are (row, col, re, im) quadruples
    def realify(entries):
        size = 2 * m
        mat = [[ZERO] * size for _ in range(size)]
        for i, j, re, im in entries:
            mat[i][j] += re
            mat[i][j + m] += -im
            mat[i + m][j] += im
            mat[i + m][j + m] += re
        return mat

    names, grades, entry_lists = [], [], []

    names.append("T")
    grades.append(-2)
    entry_lists.append([(m - 1, 0, ZERO, ONE)])

    for a in range(1, n + 1):
        # v = e_a and v = i e_a; the (3,2) block carries -conj(v)
        entry_lists.append([(a, 0, ONE, ZERO), (m - 1, a, -ONE, ZERO)])
        names.append(f"P_{2 * a - 1}")
        grades.append(-1)
        entry_lists.append([(a, 0, ZERO, ONE), (m - 1, a, ZERO, ONE)])
        names.append(f"P_{2 * a}")
        grades.append(-1)

    names.append("E")
    grades.append(0)
    entry_lists.append([(0, 0, ONE, ZERO), (m - 1, m - 1, -ONE, ZERO)])

    for a in range(1, n + 1):
        # A = i E_aa with the trace-compensating scalar block -i/2
        entry_lists.append([
            (0, 0, ZERO, -HALF),
            (a, a, ZERO, ONE),
            (m - 1, m - 1, ZERO, -HALF),
        ])
        names.append(f"J_{a}")
        grades.append(0)

    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            entry_lists.append([(a, b, ONE, ZERO), (b, a, -ONE, ZERO)])
            names.append(f"U_{a}{b}")
            grades.append(0)
            entry_lists.append([(a, b, ZERO, ONE), (b, a, ZERO, ONE)])
            names.append(f"V_{a}{b}")
            grades.append(0)

    for a in range(1, n + 1):
        entry_lists.append([(a, m - 1, ONE, ZERO), (0, a, -ONE, ZERO)])
        names.append(f"K_{2 * a - 1}")
        grades.append(1)
        entry_lists.append([(a, m - 1, ZERO, ONE), (0, a, ZERO, ONE)])
        names.append(f"K_{2 * a}")
        grades.append(1)

    names.append("S")
    grades.append(2)
    entry_lists.append([(0, m - 1, ZERO, ONE)])

    hermitian = [[ZERO] * m for _ in range(m)]
    hermitian[0][m - 1] = ONE
    hermitian[m - 1][0] = ONE
    for a in range(1, n + 1):
        hermitian[a][a] = ONE
    form = realify([(i, j, hermitian[i][j], ZERO)
                    for i in range(m) for j in range(m)
                    if hermitian[i][j] != 0])

    mats = [realify(entries) for entries in entry_lists]
    for name, mat in zip(names, mats):
        _check_su_conditions(mat, form, m, name)

    algebra = GradedLieAlgebra.from_matrices(
        names, grades, mats, k=2, family="cr", params=(n,), form=form
    )
    algebra.validate()
    if algebra.grading_element != algebra.basis_element("E"):
        raise StructureError("cr grading element is not E")
    return algebra


def _check_su_conditions(mat, form, m, name):
    """Realified su condition: matᵀ·form + form·mat = 0 and complex trace 0."""
    size = 2 * m
    for i in range(size):
        for j in range(size):
            v = ZERO
            for t in range(size):
                v += mat[t][i] * form[t][j] + form[i][t] * mat[t][j]
            if v != 0:
                raise StructureError(f"{name} violates the Hermitian form condition")
    re_tr = sum((mat[i][i] for i in range(m)), ZERO)
    im_tr = sum((mat[i + m][i] for i in range(m)), ZERO)
    if re_tr != 0 or im_tr != 0:
        raise StructureError(f"{name} is not traceless")


def build(family, params):
    """Dispatch used by the CLI: family name + parameter list."""
    if family == "conformal":
        if len(params) != 2:
            raise ValueError("conformal family takes params [p, q]")
        return build_conformal(int(params[0]), int(params[1]))
    if family == "cr":
        if len(params) != 1:
            raise ValueError("cr family takes params [n]")
        return build_cr(int(params[0]))
    raise ValueError(f"unknown family {family!r}")
