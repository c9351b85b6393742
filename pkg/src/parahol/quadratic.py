"""Exact feasibility of one real quadratic equation q(t) = 0 over R^m.

q(t) = const + lin·t + tᵀ·quad·t with rational coefficients. The range of a
real quadratic function is an interval, so 0 is attained iff inf q <= 0 <=
sup q; both bounds are decided exactly from the inertia of the symmetric
part (congruence diagonalization over the rationals, no eigenvalues).

The decision is always exact. The returned witness is rational whenever one
exists along the probe lines used here (always, for affine q); otherwise a
deterministic numeric witness is produced and flagged.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import linalg

ZERO = Fraction(0)


@dataclass(frozen=True)
class QuadraticMap:
    """Scalar polynomial of degree <= 2 on R^m, exact coefficients."""

    quad: tuple        # m x m symmetric, Fractions
    lin: tuple         # length m
    const: Fraction

    @property
    def dim(self):
        return len(self.lin)

    def __call__(self, t):
        total = self.const
        for i, li in enumerate(self.lin):
            if li != 0:
                total = total + li * t[i]
        for i, row in enumerate(self.quad):
            for j, qij in enumerate(row):
                if qij != 0:
                    total = total + qij * t[i] * t[j]
        return total

    @property
    def is_constant(self):
        return self.is_affine and all(v == 0 for v in self.lin)

    @property
    def is_affine(self):
        return all(v == 0 for row in self.quad for v in row)

    def to_json_dict(self):
        return {
            "quadratic": [[str(v) for v in row] for row in self.quad],
            "linear": [str(v) for v in self.lin],
            "constant": str(self.const),
        }


@dataclass
class ZeroDecision:
    feasible: bool
    witness: Optional[tuple]   # Fractions when exact_witness, floats otherwise
    exact_witness: bool
    reason: str


def attains_zero(q):
    """Decide whether q(t) = 0 has a real solution; exact decision always."""
    m = q.dim
    if m == 0:
        return ZeroDecision(q.const == 0, () if q.const == 0 else None, True,
                            "constant")
    if q.is_affine:
        if all(v == 0 for v in q.lin):
            ok = q.const == 0
            return ZeroDecision(ok, tuple([ZERO] * m) if ok else None, True,
                                "constant")
        ll = linalg.dot(list(q.lin), list(q.lin))
        t = tuple(-q.const * li / ll for li in q.lin)
        return ZeroDecision(True, t, True, "affine")

    n_pos, n_neg, pos_dirs, neg_dirs = _inertia_directions(q.quad)

    if n_pos > 0 and n_neg > 0:
        return _witness_indefinite(q, pos_dirs, neg_dirs)

    flip = n_pos == 0  # negative semidefinite: decide on -q
    qq = _negate(q) if flip else q
    dirs = neg_dirs if flip else pos_dirs
    decision = _decide_psd(qq, dirs)
    return decision


def _negate(q):
    return QuadraticMap(
        tuple(tuple(-v for v in row) for row in q.quad),
        tuple(-v for v in q.lin),
        -q.const,
    )


def _inertia_directions(quad):
    """Inertia of the symmetric matrix plus exact directions of each sign.

    Runs the same Schur-complement congruence as linalg.inertia while
    tracking the basis vectors, so v·quad·v has the counted sign exactly.
    """
    s = linalg.frac_rows(quad)
    n = len(s)
    vecs = linalg.identity_vectors(n)
    pos_dirs, neg_dirs = [], []
    live = list(range(n))
    while live:
        p = None
        for i in live:
            if s[i][i] != 0:
                p = i
                break
        if p is not None:
            d = s[p][p]
            (pos_dirs if d > 0 else neg_dirs).append(tuple(vecs[p]))
            live.remove(p)
            for i in live:
                f = s[i][p] / d
                if f == 0:
                    continue
                for j in live:
                    s[i][j] -= f * s[p][j]
                s[i][p] = ZERO
                vecs[i] = [a - f * b for a, b in zip(vecs[i], vecs[p])]
            continue
        off = None
        for ii, i in enumerate(live):
            for j in live[ii + 1:]:
                if s[i][j] != 0:
                    off = (i, j)
                    break
            if off:
                break
        if off is None:
            break
        i, j = off
        for col in range(n):
            s[i][col] += s[j][col]
        for row in range(n):
            s[row][i] += s[row][j]
        vecs[i] = [a + b for a, b in zip(vecs[i], vecs[j])]
    return len(pos_dirs), len(neg_dirs), pos_dirs, neg_dirs


def _decide_psd(q, pos_dirs):
    """q with positive semidefinite (nonzero) quadratic part."""
    m = q.dim
    quad_rows = [list(row) for row in q.quad]
    rhs = [-li / 2 for li in q.lin]
    t0 = linalg.solve_min_norm(quad_rows, rhs)
    if t0 is None:
        # the linear part has a kernel component: q is unbounded both ways
        for w in linalg.nullspace(quad_rows):
            lw = linalg.dot(list(q.lin), w)
            if lw != 0:
                tau = -q.const / lw
                return ZeroDecision(True, tuple(tau * wi for wi in w), True,
                                    "kernel line")
        raise AssertionError("inconsistent stationary system with trivial obstruction")
    minimum = q.const + linalg.dot(list(q.lin), t0) / 2
    if minimum > 0:
        return ZeroDecision(False, None, True, f"infimum {minimum} > 0")
    if minimum == 0:
        return ZeroDecision(True, tuple(t0), True, "minimum point")
    # minimum < 0: climb along a positive direction
    for u in pos_dirs:
        a = _qform(q.quad, u)
        tau2 = -minimum / a
        root = _rational_sqrt(tau2)
        if root is not None:
            t = tuple(ti + root * ui for ti, ui in zip(t0, u))
            return ZeroDecision(True, t, True, "minimum plus square climb")
    u = pos_dirs[0]
    witness = _bisect_line(q, t0, u)
    return ZeroDecision(True, witness, False, "numeric climb")


def _witness_indefinite(q, pos_dirs, neg_dirs):
    # try the probe lines through 0 for a rational root first
    candidates = list(pos_dirs) + list(neg_dirs)
    candidates += [tuple(a + b for a, b in zip(u, v))
                   for u in pos_dirs for v in neg_dirs]
    for d in candidates:
        a = _qform(q.quad, d)
        b = linalg.dot(list(q.lin), list(d))
        root = _rational_quadratic_root(a, b, q.const)
        if root is not None:
            return ZeroDecision(True, tuple(root * di for di in d), True,
                                "rational root on probe line")
    # range is all of R; bracket a sign change between a positive and a
    # negative probe point, deterministically
    u, v = pos_dirs[0], neg_dirs[0]
    t_hi = _scale_until(q, u, positive=True)
    t_lo = _scale_until(q, v, positive=False)
    witness = _bisect_segment(q, t_lo, t_hi)
    return ZeroDecision(True, witness, False, "numeric segment root")


def _qform(quad, v):
    return sum((quad[i][j] * v[i] * v[j]
                for i in range(len(v)) for j in range(len(v))), ZERO)


def _rational_sqrt(x):
    """Exact square root of a nonnegative Fraction, or None."""
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _rational_quadratic_root(a, b, c):
    """Rational root of a·τ² + b·τ + c, or None."""
    if a == 0:
        if b == 0:
            return ZERO if c == 0 else None
        return -c / b
    disc = b * b - 4 * a * c
    root = _rational_sqrt(disc)
    if root is None:
        return None
    return (-b + root) / (2 * a)


def _scale_until(q, direction, positive):
    tau = Fraction(1)
    for _ in range(200):
        t = [tau * di for di in direction]
        val = q(t)
        if (val > 0) == positive and val != 0:
            return t
        tau *= 2
    raise AssertionError("failed to find a sign point along an exact-sign direction")


def _bisect_segment(q, t_lo, t_hi):
    """Deterministic float bisection between a q<0 and a q>0 point."""
    lo = [float(v) for v in t_lo]
    hi = [float(v) for v in t_hi]
    for _ in range(120):
        mid = [(a + b) / 2 for a, b in zip(lo, hi)]
        if float(q(tuple(mid))) < 0:
            lo = mid
        else:
            hi = mid
    return tuple((a + b) / 2 for a, b in zip(lo, hi))


def _bisect_line(q, t0, u):
    """Root of τ ↦ q(t0 + τu) for psd q with q(t0) < 0; numeric."""
    a = float(_qform(q.quad, u))
    minimum = float(q(tuple(t0)))
    tau_hi = math.sqrt(-minimum / a) * 2 + 1.0
    lo, hi = 0.0, tau_hi
    t0f = [float(v) for v in t0]
    uf = [float(v) for v in u]

    def val(tau):
        return float(q(tuple(x + tau * y for x, y in zip(t0f, uf))))

    for _ in range(120):
        mid = (lo + hi) / 2
        if val(mid) < 0:
            lo = mid
        else:
            hi = mid
    tau = (lo + hi) / 2
    return tuple(x + tau * y for x, y in zip(t0f, uf))
