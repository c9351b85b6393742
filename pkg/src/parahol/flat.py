"""The flat conformal model: polynomial conformal Killing fields on R^{p,q}.

Elements of the conformal algebra act on the flat chart as the polynomial
vector fields

    X(x) = a + A x + s x + <x,x> b - 2 <b,x> x

with <.,.> the signature-(p,q) inner product, A skew with respect to it, s
the dilation coefficient and b the special-conformal part. The chart is a
single affine chart of the homogeneous model; points whose flow leaves it
are rejected rather than continued through a chart transition.

This module also carries the numeric identity checks: vanishing of the
adjoint-tractor derivative of the field's tractor, Maurer-Cartan flatness,
flow equivariance in exponential coordinates, and commutation of the flow
with the exponential-coordinate Weyl section in the witness gauge.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import linalg
from .classify import HolonomyDatum, classify
from .constants import (
    CHART_HOMOGENEOUS_TOL,
    CHART_NORM_LIMIT,
    FD_STEP,
    FIELD_DILATION_SIGN,
    FIELD_SPECIAL_FACTOR,
    RK4_STEP,
)
from .errors import (
    ChartEscapeError,
    DomainError,
    NonSingularPointError,
    StructureError,
    WeylSectionInapplicableError,
)
from .families import build_conformal

ZERO = Fraction(0)
ONE = Fraction(1)


def _exactify(values):
    out = []
    for v in values:
        if isinstance(v, (float, int, Fraction, str)):
            out.append(Fraction(v))
        else:
            raise TypeError(f"unsupported point coordinate {type(v).__name__}")
    return out


class FlatConformalField:
    """A conformal Killing field of flat R^{p,q}, identified with an algebra element."""

    def __init__(self, algebra, xi):
        if algebra.family != "conformal":
            raise DomainError("flat model fields require a conformal algebra")
        if xi.algebra is not algebra:
            raise DomainError("element belongs to a different algebra")
        if not xi.exact:
            raise DomainError("field coefficients must be exact rationals")
        self.algebra = algebra
        self.xi = xi
        p, q = algebra.params
        self.signature = (p, q)
        self.n = p + q
        self.metric = [ONE] * p + [-ONE] * q
        self._split_parts()
        self._check_conformal_killing_exact()

    # -- construction ----------------------------------------------------------

    @classmethod
    def from_parts(cls, p, q, a, linear, s, b, algebra=None):
        """Field from formula data: translation a, skew matrix A, dilation s,
        special part b. The matrix must be skew for the (p, q) inner product."""
        algebra = algebra if algebra is not None else build_conformal(p, q)
        n = p + q
        a = _exactify(a)
        b = _exactify(b)
        s = Fraction(s)
        rows = [_exactify(row) for row in linear]
        if len(a) != n or len(b) != n or len(rows) != n or any(len(r) != n for r in rows):
            raise DomainError("field part dimensions do not match the signature")
        metric = [ONE] * p + [-ONE] * q
        for i in range(n):
            for j in range(n):
                if metric[i] * rows[i][j] + metric[j] * rows[j][i] != 0:
                    raise DomainError("linear part is not skew for the inner product")
        named = {}
        for i, v in enumerate(a):
            if v != 0:
                named[f"P_{i + 1}"] = v
        if s != 0:
            named["D"] = s / FIELD_DILATION_SIGN
        for i in range(n):
            for j in range(i + 1, n):
                # the rotation basis matrix has (i, j) entry J_jj
                c = rows[i][j] * metric[j]
                if c != 0:
                    named[f"M_{i + 1}{j + 1}"] = c
        for i, v in enumerate(b):
            if v != 0:
                named[f"K_{i + 1}"] = v / FIELD_SPECIAL_FACTOR
        return cls(algebra, algebra.element(named))

    @classmethod
    def from_json_dict(cls, doc, algebra=None):
        p, q = (int(v) for v in doc["signature"])
        return cls.from_parts(p, q, doc["a"], doc["A"], doc["s"], doc["b"],
                              algebra=algebra)

    def _split_parts(self):
        alg = self.algebra
        n = self.n
        xi = self.xi
        self.a = tuple(xi.coeff(f"P_{i + 1}") for i in range(n))
        self.s = FIELD_DILATION_SIGN * xi.coeff("D")
        self.b = tuple(FIELD_SPECIAL_FACTOR * xi.coeff(f"K_{i + 1}")
                       for i in range(n))
        rows = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                c = xi.coeff(f"M_{i + 1}{j + 1}")
                if c != 0:
                    rows[i][j] += c * self.metric[j]
                    rows[j][i] -= c * self.metric[i]
        self.linear = tuple(tuple(r) for r in rows)

    # -- evaluation ------------------------------------------------------------

    def evaluate(self, point):
        """Value of the polynomial vector field; exact Fractions."""
        x = _exactify(point)
        if len(x) != self.n:
            raise DomainError(f"point must have dimension {self.n}")
        xx = sum((self.metric[i] * x[i] * x[i] for i in range(self.n)), ZERO)
        bx = sum((self.metric[i] * self.b[i] * x[i] for i in range(self.n)), ZERO)
        out = []
        for i in range(self.n):
            v = self.a[i] + self.s * x[i] + xx * self.b[i] - 2 * bx * x[i]
            v += sum((self.linear[i][j] * x[j] for j in range(self.n)), ZERO)
            out.append(v)
        return tuple(out)

    def evaluate_float(self, point):
        """Float evaluation on numpy arrays; the integrators' hot path."""
        x = np.asarray(point, dtype=float)
        a, lin, b, met, s = self._float_parts
        xx = (met * x) @ x
        bx = (met * b) @ x
        return a + lin @ x + s * x + xx * b - 2.0 * bx * x

    @property
    def _float_parts(self):
        cached = getattr(self, "_float_parts_cache", None)
        if cached is None:
            cached = (
                np.array([float(v) for v in self.a]),
                np.array([[float(v) for v in row] for row in self.linear]),
                np.array([float(v) for v in self.b]),
                np.array([float(v) for v in self.metric]),
                float(self.s),
            )
            self._float_parts_cache = cached
        return cached

    def is_singular_at(self, point):
        """Whether the field vanishes at the point (exact for rational input)."""
        return all(v == 0 for v in self.evaluate(point))

    def poly_coeffs(self):
        """(constant, linear, quadratic) coefficients of each component.

        quadratic[i][j][l] is symmetric in (j, l) and enters as a full
        double sum; used for exact bracket comparisons.
        """
        n = self.n
        const = list(self.a)
        lin = [[self.linear[i][j] + (self.s if i == j else ZERO)
                for j in range(n)] for i in range(n)]
        quad = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                quad[i][j][j] += self.metric[j] * self.b[i]
                quad[i][j][i] -= self.metric[j] * self.b[j]
                quad[i][i][j] -= self.metric[j] * self.b[j]
        return const, lin, quad

    def _check_conformal_killing_exact(self):
        """Trace-free symmetrized derivative vanishes, as a polynomial identity."""
        n = self.n
        if n == 0:
            return
        const, lin, quad = self.poly_coeffs()
        # derivative coefficients: d_i f_j (x) = lin[j][i] + 2 sum_m quad[j][i][m] x_m
        met = self.metric
        div_const = sum((lin[l][l] for l in range(n)), ZERO)
        div_lin = [2 * sum((quad[l][l][m] for l in range(n)), ZERO) for m in range(n)]
        two_over_n = Fraction(2, n)
        for i in range(n):
            for j in range(n):
                c = met[j] * lin[j][i] + met[i] * lin[i][j]
                if i == j:
                    c -= two_over_n * div_const * met[i]
                if c != 0:
                    raise StructureError("conformal Killing identity fails (constant term)")
                for m in range(n):
                    cm = 2 * met[j] * quad[j][i][m] + 2 * met[i] * quad[i][j][m]
                    if i == j:
                        cm -= two_over_n * div_lin[m] * met[i]
                    if cm != 0:
                        raise StructureError("conformal Killing identity fails (linear term)")

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self):
        return {
            "a": [_fj(v) for v in self.a],
            "A": [[_fj(v) for v in row] for row in self.linear],
            "s": _fj(self.s),
            "b": [_fj(v) for v in self.b],
            "signature": [self.signature[0], self.signature[1]],
        }

    def __repr__(self):
        return f"FlatConformalField({self.signature}, xi={self.xi})"


def _fj(v):
    return int(v) if v.denominator == 1 else str(v)


# -- gauge transport and holonomy extraction ------------------------------------


def translation_element(algebra, point):
    """The grade -1 element whose chart flow is translation by `point`."""
    coords = _exactify(point)
    named = {f"P_{i + 1}": c for i, c in enumerate(coords) if c != 0}
    return algebra.element(named)


def gauge_tractor(field, point):
    """Adjoint tractor of the field in the exponential gauge over `point`.

    Conjugation by the translation bringing the point to the origin;
    exact, and equal to the chart vector field in its grade -1 slot.
    """
    xhat = translation_element(field.algebra, point)
    return field.algebra.exp_ad(-1 * xhat, field.xi)


def holonomy_at(field, point):
    """HolonomyDatum of the field at a singular point.

    The grade -1 part of the transported tractor vanishes at a singularity
    and is dropped; non-singular points are rejected (they are locally
    inessential by the flow-box argument, no classification needed).
    """
    if not field.is_singular_at(point):
        raise NonSingularPointError(
            "field does not vanish here; it is locally inessential near "
            "non-singular points"
        )
    transported = gauge_tractor(field, point)
    if not transported.component(-1).is_zero:
        raise AssertionError("transported tractor kept a grade -1 part at a singularity")
    coeffs = list(transported.coeffs)
    for g in range(-field.algebra.k, 0):
        for i in field.algebra.indices_of_grade(g):
            coeffs[i] = ZERO
    x = field.algebra.element_from_coeffs(coeffs)
    return HolonomyDatum(field.algebra, x)


@dataclass
class FlatClassification:
    """Classification of a field at a point, with the non-singular shortcut."""

    singular: bool
    classification: Optional[object]   # Classification when singular

    @property
    def verdict(self):
        if not self.singular:
            return "NonSingular"
        return "Essential" if self.classification.is_essential else "Inessential"

    @property
    def locally_inessential(self):
        return not self.singular or not self.classification.is_essential

    def to_json_dict(self):
        body = {"verdict": self.verdict, "singular": self.singular,
                "locally_inessential": self.locally_inessential}
        if self.classification is not None:
            inner = self.classification.to_json_dict()
            inner.pop("verdict")
            body.update(inner)
        else:
            body.update({"weyl_reducible": False, "witness": None,
                         "certificate": None, "exact": True, "residual": None})
        return body


def classify_at(field, point):
    """Non-singular shortcut, else the holonomy dictionary at the point."""
    if not field.is_singular_at(point):
        return FlatClassification(False, None)
    return FlatClassification(True, classify(holonomy_at(field, point)))


# -- adjoint-tractor derivative --------------------------------------------------


def adjoint_connection(fn, direction, base_point):
    """Tractor connection along a grade -1 direction in the flat gauge.

    Central finite differences of the gauge function plus the exact
    algebraic bracket term with the direction.
    """
    algebra = direction.algebra
    if direction.grades() not in ([], [-1]):
        raise DomainError("direction must have pure grade -1")
    y = [float(c) for c in _grade_minus_one_coords(direction)]
    x0 = [float(v) for v in base_point]
    h = FD_STEP
    plus = fn([xi + h * yi for xi, yi in zip(x0, y)])
    minus = fn([xi - h * yi for xi, yi in zip(x0, y)])
    derivative = algebra.element_from_coeffs(
        [(cp - cm) / (2 * h) for cp, cm in zip(plus.coeffs, minus.coeffs)]
    )
    bracket_term = algebra.bracket(direction, fn(base_point))
    return derivative + bracket_term


def tractor_derivative(field, direction, base_point):
    """Derivative of the field's adjoint tractor; ~0 for conformal Killing fields."""
    return adjoint_connection(lambda x: gauge_tractor(field, x),
                              direction, base_point)


def _grade_minus_one_coords(element):
    alg = element.algebra
    return [element.coeffs[i] for i in alg.indices_of_grade(-1)]


# -- structure equation -----------------------------------------------------------


def curvature_check(y1, y2):
    """dω(Y1̂, Y2̂) + [ω(Y1̂), ω(Y2̂)] for constant frame fields; exactly zero.

    The first term reduces to -[Y1, Y2] (derivatives of constant functions
    vanish, the frame-field commutator is the constant field of the
    bracket) and cancels the algebraic term exactly.
    """
    algebra = y1.algebra
    for y in (y1, y2):
        if y.algebra is not algebra:
            raise DomainError("arguments belong to different algebras")
        if any(g >= 0 for g in y.grades()):
            raise DomainError("curvature check expects purely negative grades")
    d_omega = -1 * algebra.bracket(y1, y2)
    wedge = algebra.bracket(y1, y2)
    return d_omega + wedge


# -- numeric flow machinery --------------------------------------------------------


def _integrate_chart_flow(field, start, t, step=RK4_STEP):
    """Classical RK4 for the chart ODE x' = X(x); rejects chart escapes."""
    x = np.array([float(v) for v in start], dtype=float)
    if t == 0:
        return x
    n_steps = max(1, int(round(abs(t) / step)))
    h = t / n_steps
    f = field.evaluate_float
    for i in range(n_steps):
        k1 = f(x)
        k2 = f(x + 0.5 * h * k1)
        k3 = f(x + 0.5 * h * k2)
        k4 = f(x + h * k3)
        x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if np.linalg.norm(x) > CHART_NORM_LIMIT:
            raise ChartEscapeError("flow left the chart",
                                   escape_time=(i + 1) * h)
    return x


def _integrate_bundle_flow(xi_matrix, g0, t, step=RK4_STEP):
    """RK4 for the right-invariant bundle ODE G' = rho(xi)·G."""
    g = g0.copy()
    if t == 0:
        return g
    n_steps = max(1, int(round(abs(t) / step)))
    h = t / n_steps
    a = xi_matrix
    for _ in range(n_steps):
        k1 = a @ g
        k2 = a @ (g + 0.5 * h * k1)
        k3 = a @ (g + 0.5 * h * k2)
        k4 = a @ (g + h * k3)
        g = g + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return g


def _float_matrix(rows):
    return np.array([[float(v) for v in row] for row in rows], dtype=float)


def _exp_nilpotent_exact(mat):
    """Exact matrix exponential of a nilpotent Fraction matrix."""
    n = len(mat)
    out = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    term = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    factorial = 1
    for m in range(1, n + 1):
        term = linalg.matmul(term, mat)
        if all(v == 0 for row in term for v in row):
            break
        factorial *= m
        inv = Fraction(1, factorial)
        for i in range(n):
            for j in range(n):
                out[i][j] += inv * term[i][j]
    else:
        raise ValueError("matrix is not nilpotent")
    return out


def _translation_matrix(algebra, point):
    """Exact group element exp(x̂) in the matrix realization."""
    realization = algebra.require_realization()
    xhat = translation_element(algebra, point)
    return _exp_nilpotent_exact(realization.matrix_of(xhat))


def _chart_of_group_point(g):
    """Chart coordinates of g·(base point), via homogeneous coordinates."""
    col = g[:, 0]
    scale = col[0]
    if abs(scale) < CHART_HOMOGENEOUS_TOL * max(1.0, float(np.linalg.norm(col))):
        raise ChartEscapeError("group point left the chart")
    return col[1:-1] / scale


def equivariance_check(field, base_point, direction, t):
    """Commutation defect of the chart flow with the group-side formula.

    Left side: RK4 integration of the chart flow started at the chart point
    of exp^ω(u, Y). Right side: the same point computed group-theoretically
    as exp^ω(u, Ad(h^t)Y)·h^t in the matrix realization. Returns the chart
    distance.
    """
    import scipy.linalg

    algebra = field.algebra
    if direction.grades() not in ([], [-1]):
        raise DomainError("direction must have pure grade -1")
    datum = holonomy_at(field, base_point)   # also enforces singularity
    realization = algebra.require_realization()

    u = _float_matrix(_translation_matrix(algebra, base_point))
    rho_y = _float_matrix(realization.matrix_of(direction))
    rho_h = _float_matrix(realization.matrix_of(datum.x))

    y = [float(c) for c in _grade_minus_one_coords(direction)]
    start = [float(v) + yi for v, yi in zip(base_point, y)]
    lhs = _integrate_chart_flow(field, start, t)

    h_t = scipy.linalg.expm(t * rho_h)
    h_t_inv = scipy.linalg.expm(-t * rho_h)
    w = h_t @ rho_y @ h_t_inv            # Ad(h^t)(Y) in the realization
    rhs_group = u @ scipy.linalg.expm(w)
    rhs = _chart_of_group_point(rhs_group)
    return float(np.max(np.abs(lhs - rhs)))


def weyl_section_check(field, base_point, t, n_samples=5, sample_scale=0.15):
    """Commutation defect of the flow with the exponential-coordinate Weyl
    section in the witness gauge; maximum positive-part offset over chart
    samples.

    Requires the holonomy at the base point to be conjugate into grade 0
    (Inessential or WeylReducible); otherwise no Weyl structure is
    preserved and the check refuses.
    """
    algebra = field.algebra
    datum = holonomy_at(field, base_point)
    result = classify(datum)
    if result.witness is None:
        raise WeylSectionInapplicableError(
            "holonomy is not conjugate into the grade-0 part; no local "
            "Weyl structure is preserved"
        )
    realization = algebra.require_realization()
    n = field.n

    u_mat = _translation_matrix(algebra, base_point)
    zw = result.witness
    exp_minus_z = _exp_nilpotent_exact(
        [[-v for v in row] for row in realization.matrix_of(zw)]
    )
    exp_plus_z = _exp_nilpotent_exact(realization.matrix_of(zw))
    u_prime = linalg.matmul(u_mat, exp_minus_z)
    minus_base = [-v for v in _exactify(base_point)]
    u_prime_inv = linalg.matmul(exp_plus_z,
                                _translation_matrix(algebra, minus_base))

    uf = _float_matrix(u_prime)
    uf_inv = _float_matrix(u_prime_inv)
    rho_xi = _float_matrix(realization.matrix_of(field.xi))
    rho_p = [_float_matrix(realization.matrix_of(algebra.basis_element(f"P_{i + 1}")))
             for i in range(n)]

    size = len(u_prime)
    offsets = _sample_offsets(n, n_samples, sample_scale)
    worst = 0.0
    for offset in offsets:
        m = sum((c * rp for c, rp in zip(offset, rho_p)), np.zeros((size, size)))
        exp_y = np.eye(size) + m + (m @ m) / 2.0
        start = uf @ exp_y
        flowed = _integrate_bundle_flow(rho_xi, start, t)
        q = uf_inv @ flowed
        worst = max(worst, _positive_offset(q, rho_p, n))
    return worst


def _sample_offsets(n, n_samples, scale):
    offsets = [np.zeros(n)]
    for i in range(min(n, max(0, n_samples - 1))):
        e = np.zeros(n)
        e[i] = scale
        offsets.append(e)
    while len(offsets) < n_samples:
        v = np.array([scale * np.cos(1.0 + 2.7 * i + len(offsets))
                      for i in range(n)])
        offsets.append(v)
    return offsets[:n_samples]


def _positive_offset(q, rho_p, n):
    """Positive-part size of the Bruhat factorization q = exp(ŷ)·g0·exp(n̂₊).

    Factors the chart part off with the realization's own translation
    matrices, then reads the positive block of the remaining parabolic
    element. Anything that fails to factor (lower-left leakage) counts
    toward the defect as well.
    """
    size = q.shape[0]
    y = _chart_of_group_point(q)
    m = sum((-float(yi) * rp for yi, rp in zip(y, rho_p)), np.zeros((size, size)))
    exp_neg_y = np.eye(size) + m + (m @ m) / 2.0
    q2 = exp_neg_y @ q
    c = q2[0, 0]
    if abs(c) < CHART_HOMOGENEOUS_TOL:
        raise ChartEscapeError("parabolic factor degenerated")
    q2 = q2 / c
    r_block = q2[1:n + 1, 1:n + 1]
    b = np.linalg.solve(r_block, q2[1:n + 1, n + 1])
    leakage = float(np.max(np.abs(q2[1:, 0])))
    return max(float(np.max(np.abs(b))) if n else 0.0, leakage)
