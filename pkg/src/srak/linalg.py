"""Exact linear algebra over the rationals.

Plain row-reduction on lists of rationals: everything the package needs
(ranks, null spaces, inverses, fixed spaces, projections) reduces to
RREF with exact pivoting.  Deterministic: pivots are always the first
nonzero column scanning left to right, rows are processed in input
order, so identical inputs give identical outputs.
"""

from .coeffs import R0, R1, rat


def mat_identity(n):
    return [[R1 if i == j else R0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(m)), R0) for j in range(p)] for i in range(n)]


def mat_vec(a, v):
    return [sum((a[i][k] * v[k] for k in range(len(v))), R0) for i in range(len(a))]


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, s):
    return [[x * s for x in row] for row in a]


def mat_eq(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def rref(rows, ncols):
    """Reduced row-echelon form. Returns (rows, pivot_columns).

    The input list is not modified.
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = R1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """Basis of the right null space, one vector per free column.

    Each basis vector has a 1 in its free column and zeros in the other
    free columns; deterministic given the input.
    """
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [R0] * ncols
        v[f] = R1
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def mat_inverse(a):
    """Exact inverse; raises ValueError when singular."""
    n = len(a)
    aug = [list(a[i]) + [R1 if i == j else R0 for j in range(n)] for i in range(n)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def mat_rank(a):
    if not a:
        return 0
    return rank(a, len(a[0]))


def mat_det(a):
    """Exact determinant by fraction Gaussian elimination."""
    n = len(a)
    m = [list(row) for row in a]
    det = R1
    for c in range(n):
        pr = None
        for i in range(c, n):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            return R0
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            det = -det
        det = det * m[c][c]
        inv = R1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def column_space_basis(a):
    """Columns of ``a`` forming a basis of its column space (as vectors)."""
    if not a:
        return []
    _, pivots = rref(a, len(a[0]))
    at = mat_transpose(a)
    return [at[c] for c in pivots]


class RankTracker:
    """Incremental rank bookkeeping: feed vectors, learn which are new."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = []  # echelonized rows
        self.pivots = []

    def add(self, vec):
        """Reduce ``vec`` against the accumulated rows; returns True when
        it enlarges the span (and is then absorbed)."""
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        for c in range(self.ncols):
            if v[c]:
                inv = R1 / v[c]
                v = [x * inv for x in v]
                # keep rows sorted by pivot for determinism
                idx = 0
                while idx < len(self.pivots) and self.pivots[idx] < c:
                    idx += 1
                self.rows.insert(idx, v)
                self.pivots.insert(idx, c)
                return True
        return False

    @property
    def rank(self):
        return len(self.rows)

    def contains(self, vec):
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return not any(v)


def span_equal(vectors_a, vectors_b, ncols):
    """True when two families of vectors span the same subspace."""
    ta = RankTracker(ncols)
    for v in vectors_a:
        ta.add(v)
    tb = RankTracker(ncols)
    for v in vectors_b:
        tb.add(v)
    if ta.rank != tb.rank:
        return False
    return all(ta.contains(v) for v in vectors_b)


def intersect_spans(vectors_a, vectors_b, ncols):
    """Basis of span(A) ∩ span(B) via the kernel of the stacked system."""
    a = [list(v) for v in vectors_a]
    b = [list(v) for v in vectors_b]
    if not a or not b:
        return []
    # rows of the combined coefficient matrix: columns are (coeffs on A | coeffs on B)
    na, nb = len(a), len(b)
    rows = []
    for c in range(ncols):
        rows.append([a[i][c] for i in range(na)] + [-b[j][c] for j in range(nb)])
    combos = nullspace(rows, na + nb)
    out = []
    tracker = RankTracker(ncols)
    for combo in combos:
        vec = [R0] * ncols
        for i in range(na):
            if combo[i]:
                vec = [x + combo[i] * y for x, y in zip(vec, a[i])]
        if any(vec) and tracker.add(vec):
            out.append(vec)
    return out


def clear_denominators(vec):
    """Scale a rational vector to integer entries with content 1.

    Deterministic sign: the first nonzero entry becomes positive.
    """
    from math import gcd

    nums = []
    dens = []
    for x in vec:
        q = rat(x)
        nums.append(int(q.numerator))
        dens.append(int(q.denominator))
    if not any(nums):
        return [R0] * len(vec)
    lcm = 1
    for d in dens:
        lcm = lcm * d // gcd(lcm, d)
    ints = [n * (lcm // d) for n, d in zip(nums, dens)]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    ints = [v // g for v in ints]
    first = next(v for v in ints if v)
    if first < 0:
        ints = [-v for v in ints]
    return [rat(v) for v in ints]
