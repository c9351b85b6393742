"""Exact linear algebra over the rationals.

Matrices are lists of lists of Fraction, vectors are lists of Fraction.
Everything here is tolerance-free: rank, kernel and solvability answers are
decided by exact arithmetic, which is what the classifier's rank tests
require.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def frac_rows(rows):
    """Copy `rows` into mutable lists of Fraction."""
    return [[Fraction(v) for v in row] for row in rows]


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def matvec(rows, vec):
    return [sum((r[j] * vec[j] for j in range(len(vec))), ZERO) for r in rows]


def matmul(a, b):
    bt = transpose(b)
    return [[sum((ra[t] * cb[t] for t in range(len(ra))), ZERO) for cb in bt] for ra in a]


def dot(u, v):
    return sum((u[i] * v[i] for i in range(len(u))), ZERO)


def is_zero_vector(vec):
    return all(v == 0 for v in vec)


def rref(rows, aug=0):
    """Reduced row echelon form in place; returns the pivot column list.

    The trailing `aug` columns are treated as augmentation: they are swept
    by row operations but never chosen as pivots.
    """
    if not rows:
        return []
    ncols = len(rows[0]) - aug
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(rows):
    if not rows:
        return 0
    work = frac_rows(rows)
    return len(rref(work))


def solve_many(a_rows, b_cols):
    """Solve A·X = B for all columns of B with a single elimination.

    B is given as a list of columns. Raises ValueError on any inconsistent
    column; meant for systems known to be solvable (e.g. expressing closed
    brackets in a basis).
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    nb = len(b_cols)
    work = [
        [Fraction(a_rows[i][j]) for j in range(n)]
        + [Fraction(col[i]) for col in b_cols]
        for i in range(m)
    ]
    pivots = rref(work, aug=nb)
    for row in work[len(pivots):]:
        if any(v != 0 for v in row[n:]):
            raise ValueError("inconsistent linear system")
    sols = []
    for t in range(nb):
        x = [ZERO] * n
        for r, c in enumerate(pivots):
            x[c] = work[r][n + t]
        sols.append(x)
    return sols


def solve(a_rows, b):
    """One exact solution of A·x = b, or None when none exists.

    Free variables are set to zero (this is *a* solution, not the minimum
    norm one; see solve_min_norm).
    """
    m = len(a_rows)
    if m == 0:
        return [] if is_zero_vector(b) else None
    n = len(a_rows[0])
    work = [list(map(Fraction, a_rows[i])) + [Fraction(b[i])] for i in range(m)]
    pivots = rref(work, aug=1)
    for row in work[len(pivots):]:
        if row[n] != 0:
            return None
    x = [ZERO] * n
    for r, c in enumerate(pivots):
        x[c] = work[r][n]
    return x


def solve_min_norm(a_rows, b):
    """Minimum-Euclidean-norm solution of A·x = b, or None when inconsistent.

    Uses x = Aᵀy with (A Aᵀ)y = b, which is exact over the rationals and
    deterministic; this is the tie-breaking rule for witness selection.
    """
    m = len(a_rows)
    if m == 0:
        return []
    n = len(a_rows[0])
    if n == 0:
        return [] if is_zero_vector(b) else None
    if not _consistent(a_rows, b):
        return None
    gram = matmul(a_rows, transpose(a_rows))
    y = solve(gram, b)
    if y is None:
        return None
    at = transpose(a_rows)
    return matvec(at, y)


def _consistent(a_rows, b):
    work = [list(map(Fraction, a_rows[i])) + [Fraction(b[i])] for i in range(len(a_rows))]
    pivots = rref(work, aug=1)
    n = len(a_rows[0]) if a_rows else 0
    return all(row[n] == 0 for row in work[len(pivots):])


def identity_vectors(n):
    return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]


def nullspace(a_rows):
    """Basis of the kernel of A (list of vectors)."""
    if not a_rows:
        return []
    n = len(a_rows[0])
    work = frac_rows(a_rows)
    pivots = rref(work)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [ZERO] * n
        vec[fc] = ONE
        for r, pc in enumerate(pivots):
            vec[pc] = -work[r][fc]
        basis.append(vec)
    return basis


def inertia(sym_rows):
    """Signature (n_plus, n_minus, n_zero) of a rational symmetric matrix.

    Exact congruence diagonalization: diagonal pivots when available,
    hyperbolic 2×2 blocks (one +, one −) otherwise. This is the "exact sign
    analysis" backing the quadratic feasibility decision.
    """
    s = frac_rows(sym_rows)
    n = len(s)
    n_pos = n_neg = n_zero = 0
    live = list(range(n))
    while live:
        p = None
        for i in live:
            if s[i][i] != 0:
                p = i
                break
        if p is not None:
            d = s[p][p]
            if d > 0:
                n_pos += 1
            else:
                n_neg += 1
            live.remove(p)
            for i in live:
                f = s[i][p] / d
                if f == 0:
                    continue
                for j in live:
                    s[i][j] -= f * s[p][j]
                s[i][p] = ZERO
            for j in live:
                s[p][j] = ZERO
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
            n_zero += len(live)
            break
        i, j = off
        # congruence by (e_i -> e_i + e_j) creates a nonzero diagonal entry
        for col in range(n):
            s[i][col] += s[j][col]
        for row in range(n):
            s[row][i] += s[row][j]
    return n_pos, n_neg, n_zero


def in_span(vectors, target):
    """Whether `target` lies in the span of `vectors` (all as coefficient lists)."""
    if is_zero_vector(target):
        return True
    if not vectors:
        return False
    a = transpose(vectors)
    return solve(a, target) is not None


def same_span(vectors_a, vectors_b):
    ra = rank(vectors_a)
    rb = rank(vectors_b)
    return ra == rb == rank(vectors_a + vectors_b)
