"""Centralizer-of-induction construction over a pluggable coefficient algebra.

For finite groups H <= G and a unital algebra A carrying (an image of)
H, the H-equivariant functions G -> A form a free right A-module of rank
|G/H|; its A-endomorphism algebra is realized here as k x k matrices
over A once representatives of the left cosets H\\G are fixed (the
representative of each coset is the element with minimal canonical
matrix key, the identity coset first, so the realization is
deterministic).  The module provides the coset idempotents, the group
and invariant embeddings, recovery of an algebra from an embedded copy
of the group-only centralizer, the smash-product realization, bimodule
transport, the two lifted group actions, and derivation lifting.

The identity  u e(x) u^{-1} = e(x . u^{-1})  (right coset action) is the
orientation that the left-module matrix realization of the defining
formulas produces; conjugating by u^{-1} instead gives e(x . u), the
same family of identities reindexed by the inversion bijection.

Everything is exact and side-effect free.
"""

from .coeffs import R0, R1, rat
from . import linalg
from .groups import mat_key


class CentralizerError(ValueError):
    pass


class CoefficientAlgebra:
    """Interface the matrix layer needs from a coefficient algebra.

    Implementations must be associative and unital; when the algebra
    contains (an image of) the subgroup, ``from_group`` supplies it and
    ``act`` defaults to conjugation by that image.
    """

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def scale(self, r, a):
        raise NotImplementedError

    def eq(self, a, b):
        raise NotImplementedError

    def is_zero(self, a):
        return self.eq(a, self.zero())

    def from_group(self, parent_gid):
        """Image of a subgroup element (parent group id)."""
        raise NotImplementedError

    def act(self, parent_gid, a):
        """Action of a normalizing element; defaults to conjugation."""
        g = self.from_group(parent_gid)
        ginv = self.from_group(self.parent_inverse(parent_gid))
        return self.mul(g, self.mul(a, ginv))

    def parent_inverse(self, parent_gid):
        raise NotImplementedError

    def basis(self):
        """Finite basis for rank computations, or None."""
        return None

    def coords(self, a):
        """Coordinates of ``a`` over ``basis()``, or None."""
        return None

    def is_invariant(self, a, parent_gids):
        return all(self.eq(self.act(g, a), a) for g in parent_gids)


class RationalCoefficients(CoefficientAlgebra):
    """A = Q with the (necessarily trivial) subgroup image."""

    def __init__(self, group):
        self.group = group

    def zero(self):
        return R0

    def one(self):
        return R1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def scale(self, r, a):
        return r * a

    def eq(self, a, b):
        return a == b

    def from_group(self, parent_gid):
        return R1

    def parent_inverse(self, parent_gid):
        return self.group.inv[parent_gid]

    def act(self, parent_gid, a):
        return a

    def basis(self):
        return [R1]

    def coords(self, a):
        return (a,)


class GroupAlgebraCoefficients(CoefficientAlgebra):
    """A = the group algebra of a subgroup (elements: dict parent-id -> Q)."""

    def __init__(self, group, sub_ids):
        self.group = group
        self.sub_ids = sorted(sub_ids)
        if not group.is_subgroup(self.sub_ids):
            raise CentralizerError("coefficient group algebra needs a subgroup")
        self.pos = {g: i for i, g in enumerate(self.sub_ids)}

    def zero(self):
        return {}

    def one(self):
        return {0: R1}

    def add(self, a, b):
        out = dict(a)
        for k, v in b.items():
            s = out.get(k, R0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def neg(self, a):
        return {k: -v for k, v in a.items()}

    def mul(self, a, b):
        out = {}
        for g, x in a.items():
            for h, y in b.items():
                k = self.group.mul(g, h)
                s = out.get(k, R0) + x * y
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def scale(self, r, a):
        if not r:
            return {}
        return {k: r * v for k, v in a.items()}

    def eq(self, a, b):
        return a == b

    def from_group(self, parent_gid):
        if parent_gid not in self.pos:
            raise CentralizerError("element outside the coefficient subgroup")
        return {parent_gid: R1}

    def parent_inverse(self, parent_gid):
        return self.group.inv[parent_gid]

    def basis(self):
        return [{g: R1} for g in self.sub_ids]

    def coords(self, a):
        return tuple(a.get(g, R0) for g in self.sub_ids)


class PolyQuotientCoefficients(CoefficientAlgebra):
    """A = Q[u]/(u^m) with trivial subgroup image (tuples of length m)."""

    def __init__(self, group, m):
        self.group = group
        self.m = m

    def zero(self):
        return (R0,) * self.m

    def one(self):
        return (R1,) + (R0,) * (self.m - 1)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        out = [R0] * self.m
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if i + j < self.m and y:
                    out[i + j] = out[i + j] + x * y
        return tuple(out)

    def scale(self, r, a):
        return tuple(r * x for x in a)

    def eq(self, a, b):
        return a == b

    def from_group(self, parent_gid):
        return self.one()

    def parent_inverse(self, parent_gid):
        return self.group.inv[parent_gid]

    def act(self, parent_gid, a):
        return a

    def basis(self):
        eye = []
        for i in range(self.m):
            v = [R0] * self.m
            v[i] = R1
            eye.append(tuple(v))
        return eye

    def coords(self, a):
        return tuple(a)

    def derivative(self, a):
        """Formal d/du.  Not a derivation of the quotient (it does not
        preserve the truncation ideal); kept as the canonical bad input
        for the Leibniz validator."""
        out = [R0] * self.m
        for i in range(1, self.m):
            out[i - 1] = rat(i) * a[i]
        return tuple(out)

    def euler_derivation(self, a):
        """u d/du, which preserves every monomial ideal and so descends."""
        return tuple(rat(i) * a[i] for i in range(self.m))


class SRACoefficients(CoefficientAlgebra):
    """A = a PBW algebra of a subgroup, elements are its normal forms."""

    def __init__(self, algebra, parent_group, to_parent):
        # to_parent: subgroup-local id -> parent id (from groups.subgroup_group)
        self.algebra = algebra
        self.parent_group = parent_group
        self.to_parent = list(to_parent)
        self.from_parent = {p: i for i, p in enumerate(self.to_parent)}

    def zero(self):
        return self.algebra.zero()

    def one(self):
        return self.algebra.one()

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return self.algebra.multiply(a, b)

    def scale(self, r, a):
        return a.scale(r)

    def eq(self, a, b):
        return a == b

    def from_group(self, parent_gid):
        local = self.from_parent.get(parent_gid)
        if local is None:
            raise CentralizerError("element outside the coefficient subgroup")
        return self.algebra.group_elt(local)

    def parent_inverse(self, parent_gid):
        return self.parent_group.inv[parent_gid]


class CentralizerContext:
    """Fixed coset data for (G, H, A).

    The identity coset comes first with the identity as its
    representative; every other coset is represented by its element of
    minimal canonical matrix key.  ``reps_override`` (coset index ->
    element id, applied after ordering) exists so tests can exercise
    representative independence.
    """

    def __init__(self, group, sub_ids, A, reps_override=None):
        self.group = group
        self.sub_ids = sorted(set(sub_ids))
        if not group.is_subgroup(self.sub_ids):
            raise CentralizerError("not a subgroup")
        self.A = A
        seen = set()
        cosets = []
        for g in range(group.order):
            if g in seen:
                continue
            coset = sorted(group.mul(h, g) for h in self.sub_ids)
            for x in coset:
                seen.add(x)
            cosets.append(coset)
        reps = []
        for coset in cosets:
            if 0 in coset:
                reps.append(0)
            else:
                reps.append(min(coset, key=lambda g: mat_key(group.mats[g])))
        order = sorted(range(len(cosets)), key=lambda i: ((0 if 0 in cosets[i] else 1), mat_key(group.mats[reps[i]])))
        self.cosets = [tuple(cosets[i]) for i in order]
        self.reps = [reps[i] for i in order]
        self.k = len(self.reps)
        self.coset_of = {}
        for idx, coset in enumerate(self.cosets):
            for g in coset:
                self.coset_of[g] = idx
        if reps_override:
            for idx, g in reps_override.items():
                if self.coset_of[g] != idx:
                    raise CentralizerError("override representative lies in the wrong coset")
                self.reps[idx] = g

    def h_factor(self, g):
        """H-part of g: the h with g = h * rep(coset of g)."""
        idx = self.coset_of[g]
        return self.group.mul(g, self.group.inv[self.reps[idx]])

    def coset_act(self, idx, g):
        """Index of (coset idx) . g under right multiplication."""
        return self.coset_of[self.group.mul(self.reps[idx], g)]

    # -- element constructors ------------------------------------------

    def zero(self):
        z = self.A.zero()
        return CentralizerElement(self, tuple(tuple(z for _ in range(self.k)) for _ in range(self.k)))

    def one(self):
        z, o = self.A.zero(), self.A.one()
        return CentralizerElement(
            self, tuple(tuple(o if i == j else z for j in range(self.k)) for i in range(self.k))
        )

    def from_matrix(self, rows):
        return CentralizerElement(self, tuple(tuple(row) for row in rows))

    def diagonal(self, entries):
        z = self.A.zero()
        return CentralizerElement(
            self, tuple(tuple(entries[i] if i == j else z for j in range(self.k)) for i in range(self.k))
        )


class CentralizerElement:
    __slots__ = ("ctx", "mat")

    def __init__(self, ctx, mat):
        self.ctx = ctx
        self.mat = mat

    def __add__(self, other):
        A = self.ctx.A
        return CentralizerElement(
            self.ctx,
            tuple(tuple(A.add(x, y) for x, y in zip(r1, r2)) for r1, r2 in zip(self.mat, other.mat)),
        )

    def __neg__(self):
        A = self.ctx.A
        return CentralizerElement(self.ctx, tuple(tuple(A.neg(x) for x in row) for row in self.mat))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, CentralizerElement):
            A = self.ctx.A
            return CentralizerElement(self.ctx, tuple(tuple(A.scale(other, x) for x in row) for row in self.mat))
        A = self.ctx.A
        k = self.ctx.k
        out = []
        for i in range(k):
            row = []
            for j in range(k):
                acc = A.zero()
                for l in range(k):
                    acc = A.add(acc, A.mul(self.mat[i][l], other.mat[l][j]))
                row.append(acc)
            out.append(tuple(row))
        return CentralizerElement(self.ctx, tuple(out))

    def __rmul__(self, scalar):
        A = self.ctx.A
        return CentralizerElement(self.ctx, tuple(tuple(A.scale(scalar, x) for x in row) for row in self.mat))

    def __eq__(self, other):
        if not isinstance(other, CentralizerElement):
            return NotImplemented
        A = self.ctx.A
        return all(A.eq(x, y) for r1, r2 in zip(self.mat, other.mat) for x, y in zip(r1, r2))

    def is_zero(self):
        A = self.ctx.A
        return all(A.is_zero(x) for row in self.mat for x in row)

    def entry(self, i, j):
        return self.mat[i][j]

    def corner(self):
        """The (identity coset, identity coset) entry."""
        return self.mat[0][0]


def build_centralizer(group, sub_ids, A):
    return CentralizerContext(group, sub_ids, A)


def embed_group(ctx, g):
    """Matrix of the right-translation action of a group element."""
    A = ctx.A
    z = A.zero()
    rows = [[z] * ctx.k for _ in range(ctx.k)]
    for i in range(ctx.k):
        gi = ctx.reps[i]
        target = ctx.group.mul(gi, g)
        j = ctx.coset_of[target]
        h = ctx.group.mul(target, ctx.group.inv[ctx.reps[j]])
        rows[i][j] = A.from_group(h)
    return CentralizerElement(ctx, tuple(tuple(r) for r in rows))


def embed_invariant(ctx, a):
    """diag(a, ..., a) for an H-invariant coefficient a."""
    if not ctx.A.is_invariant(a, [h for h in ctx.sub_ids if h != 0]):
        raise CentralizerError("coefficient is not invariant under the subgroup")
    return ctx.diagonal([a] * ctx.k)


def idempotent(ctx, x):
    """The diagonal 0/1 selector of coset index x."""
    if not (0 <= x < ctx.k):
        raise CentralizerError("unknown coset index")
    entries = [ctx.A.one() if i == x else ctx.A.zero() for i in range(ctx.k)]
    return ctx.diagonal(entries)


def morita_witness(ctx):
    """An explicit finite sum  sum_i  a_i e(H) b_i = 1  with a_i = embed(rep_i),
    b_i = embed(rep_i)^{-1}; returns (summand pairs, verified flag)."""
    e0 = idempotent(ctx, 0)
    total = ctx.zero()
    pairs = []
    for i in range(ctx.k):
        g = ctx.reps[i]
        a = embed_group(ctx, ctx.group.inv[g])
        b = embed_group(ctx, g)
        pairs.append((a, b))
        total = total + a * e0 * b
    return pairs, total == ctx.one()


def corner_recover(ctx, iota_group, iota_e, mul, eq, b):
    """Recover the matrix form of b in an algebra B containing the
    group-only centralizer.

    ``iota_group`` maps parent ids to B, ``iota_e`` is the image of the
    identity-coset idempotent, ``mul``/``eq`` are B's operations.  The
    recovered matrix has entries  e i(g_i) b i(g_j)^{-1} e  in the corner
    algebra e B e.  Raises when the supplied images break the
    group/idempotent relations they are required to satisfy.
    """
    G = ctx.group
    for g in range(G.order):
        for h in range(G.order):
            if not eq(mul(iota_group[g], iota_group[h]), iota_group[G.mul(g, h)]):
                raise CentralizerError("supplied images fail the group relations")
    if not eq(mul(iota_e, iota_e), iota_e):
        raise CentralizerError("supplied idempotent image is not idempotent")
    for h in ctx.sub_ids:
        if not eq(mul(iota_group[h], iota_e), mul(iota_e, iota_group[h])):
            raise CentralizerError("supplied idempotent image does not commute with the subgroup")
    rows = []
    for i in range(ctx.k):
        gi = iota_group[ctx.reps[i]]
        row = []
        for j in range(ctx.k):
            gj_inv = iota_group[G.inv[ctx.reps[j]]]
            row.append(mul(iota_e, mul(gi, mul(b, mul(gj_inv, iota_e)))))
        rows.append(tuple(row))
    return tuple(rows)


def function_from_corner(ctx, iota_group, iota_e, mul, phi):
    """The map  phi in B e  ->  (g -> e g phi)  from the recovery lemma."""
    return {g: mul(iota_e, mul(iota_group[g], phi)) for g in range(ctx.group.order)}


def corner_from_function(ctx, iota_group, mul, add, scale, zero, f):
    """Inverse map:  f  ->  |H|^{-1} sum_g i(g)^{-1} f(g)."""
    total = zero
    G = ctx.group
    for g in range(G.order):
        total = add(total, mul(iota_group[G.inv[g]], f[g]))
    return scale(rat(1, len(ctx.sub_ids)), total)


# -- smash-product realization ---------------------------------------------


class SmashCoefficients(CoefficientAlgebra):
    """A = A0 # H for a finite-dimensional H-algebra A0.

    A0 is described by a basis: unit vector, structure constants
    (i, j) -> vector, and the action matrices of the subgroup elements.
    Elements are dicts (parent gid) -> A0 coordinate tuple.
    """

    def __init__(self, group, sub_ids, a0_dim, a0_unit, a0_mul, a0_action):
        self.group = group
        self.sub_ids = sorted(sub_ids)
        self.dim0 = a0_dim
        self.a0_unit = tuple(a0_unit)
        self.a0_mul = a0_mul  # dict (i, j) -> coordinate tuple
        self.a0_action = a0_action  # dict parent gid -> matrix (list of rows)

    def _a0_mul_vec(self, u, v):
        out = [R0] * self.dim0
        for i, x in enumerate(u):
            if not x:
                continue
            for j, y in enumerate(v):
                if not y:
                    continue
                sc = self.a0_mul[(i, j)]
                for k_, c in enumerate(sc):
                    if c:
                        out[k_] = out[k_] + x * y * c
        return tuple(out)

    def _a0_act(self, g, v):
        m = self.a0_action[g]
        out = [R0] * self.dim0
        for i in range(self.dim0):
            for j in range(self.dim0):
                if m[i][j] and v[j]:
                    out[i] = out[i] + m[i][j] * v[j]
        return tuple(out)

    def zero(self):
        return {}

    def one(self):
        return {0: self.a0_unit}

    def a0_element(self, vec):
        vec = tuple(vec)
        return {0: vec} if any(vec) else {}

    def add(self, a, b):
        out = dict(a)
        for g, v in b.items():
            cur = out.get(g)
            s = v if cur is None else tuple(x + y for x, y in zip(cur, v))
            if any(s):
                out[g] = s
            else:
                out.pop(g, None)
        return out

    def neg(self, a):
        return {g: tuple(-x for x in v) for g, v in a.items()}

    def mul(self, a, b):
        out = {}
        for g, u in a.items():
            for h, v in b.items():
                w = self._a0_mul_vec(u, self._a0_act(g, v))
                if not any(w):
                    continue
                k = self.group.mul(g, h)
                cur = out.get(k)
                s = w if cur is None else tuple(x + y for x, y in zip(cur, w))
                if any(s):
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def scale(self, r, a):
        if not r:
            return {}
        return {g: tuple(r * x for x in v) for g, v in a.items()}

    def eq(self, a, b):
        return a == b

    def from_group(self, parent_gid):
        if parent_gid not in self.sub_ids:
            raise CentralizerError("element outside the coefficient subgroup")
        return {parent_gid: self.a0_unit}

    def parent_inverse(self, parent_gid):
        return self.group.inv[parent_gid]

    def basis(self):
        out = []
        for g in self.sub_ids:
            for i in range(self.dim0):
                v = [R0] * self.dim0
                v[i] = R1
                out.append({g: tuple(v)})
        return out

    def coords(self, a):
        out = []
        for g in self.sub_ids:
            v = a.get(g)
            for i in range(self.dim0):
                out.append(v[i] if v is not None else R0)
        return tuple(out)


def trivial_a0(group, sub_ids):
    """A0 = Q with the trivial subgroup action."""
    return SmashCoefficients(
        group,
        sub_ids,
        1,
        (R1,),
        {(0, 0): (R1,)},
        {g: [[R1]] for g in sub_ids},
    )


class SmashIso:
    """The two generator families of the smash realization.

    theta(g) is right translation; theta(F), for an equivariant function
    F: G -> A0 (given by its values on the coset representatives), is
    the diagonal matrix of those values.
    """

    def __init__(self, ctx, A):
        if not isinstance(A, SmashCoefficients):
            raise CentralizerError("smash realization needs smash-product coefficients")
        self.ctx = ctx
        self.A = A

    def theta_group(self, g):
        return embed_group(self.ctx, g)

    def theta_function(self, values):
        """values: list of A0 coordinate tuples, one per coset representative."""
        entries = [self.A.a0_element(v) for v in values]
        return self.ctx.diagonal(entries)

    def translate_function(self, values, g):
        """(g . F)(g') = F(g' g): new value at rep i is h . F(rep target)."""
        out = []
        for i in range(self.ctx.k):
            target = self.ctx.group.mul(self.ctx.reps[i], g)
            j = self.ctx.coset_of[target]
            h = self.ctx.group.mul(target, self.ctx.group.inv[self.ctx.reps[j]])
            out.append(self.A._a0_act(h, tuple(values[j])))
        return out

    def domain_dimension(self):
        return self.ctx.k * self.A.dim0 * self.ctx.group.order

    def codomain_dimension(self):
        return self.ctx.k * self.ctx.k * self.A.dim0 * len(self.ctx.sub_ids)

    def image_rank(self):
        """Rank of the span of theta(F_b) theta(g) over function-basis
        elements and group elements; bijectivity needs this to equal both
        dimensions."""
        basis_vals = []
        for i in range(self.ctx.k):
            for l in range(self.A.dim0):
                vals = [tuple(R0 for _ in range(self.A.dim0)) for _ in range(self.ctx.k)]
                v = [R0] * self.A.dim0
                v[l] = R1
                vals[i] = tuple(v)
                basis_vals.append(vals)
        ncols = None
        tracker = None
        for vals in basis_vals:
            tf = self.theta_function(vals)
            for g in range(self.ctx.group.order):
                m = tf * self.theta_group(g)
                flat = []
                for row in m.mat:
                    for x in row:
                        flat.extend(self.A.coords(x))
                if tracker is None:
                    ncols = len(flat)
                    tracker = linalg.RankTracker(ncols)
                tracker.add(flat)
        return tracker.rank if tracker else 0


def smash_iso(ctx, A):
    iso = SmashIso(ctx, A)
    return iso


# -- bimodules ----------------------------------------------------------------


class Bimodule:
    """A-bimodule given by explicit operations on an element type."""

    def __init__(self, A, zero, add, lact, ract, eq, basis=None, neg=None):
        self.A = A
        self.zero = zero
        self.add = add
        self.lact = lact
        self.ract = ract
        self.eq = eq
        self.basis_list = basis
        self.neg = neg if neg is not None else (lambda m: lact(A.neg(A.one()), m))

    def validate(self, samples_a, samples_m):
        for a in samples_a:
            for b in samples_a:
                for m in samples_m:
                    left = self.lact(a, self.lact(b, m))
                    right = self.lact(self.A.mul(a, b), m)
                    if not self.eq(left, right):
                        raise CentralizerError("left action is not associative on samples")
                    left = self.ract(self.ract(m, a), b)
                    right = self.ract(m, self.A.mul(a, b))
                    if not self.eq(left, right):
                        raise CentralizerError("right action is not associative on samples")
                    if not self.eq(self.ract(self.lact(a, m), b), self.lact(a, self.ract(m, b))):
                        raise CentralizerError("actions do not commute on samples")


def regular_bimodule(A, sample_basis=None):
    return Bimodule(A, A.zero(), A.add, A.mul, A.mul, A.eq, basis=sample_basis)


class TransportedBimodule:
    """k x k matrices over an A-bimodule, as a bimodule over the matrix algebra."""

    def __init__(self, ctx, M):
        self.ctx = ctx
        self.M = M

    def zero(self):
        z = self.M.zero
        return tuple(tuple(z for _ in range(self.ctx.k)) for _ in range(self.ctx.k))

    def add(self, m1, m2):
        return tuple(tuple(self.M.add(x, y) for x, y in zip(r1, r2)) for r1, r2 in zip(m1, m2))

    def lact(self, z, m):
        k = self.ctx.k
        out = []
        for i in range(k):
            row = []
            for j in range(k):
                acc = self.M.zero
                for l in range(k):
                    acc = self.M.add(acc, self.M.lact(z.mat[i][l], m[l][j]))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    def ract(self, m, z):
        k = self.ctx.k
        out = []
        for i in range(k):
            row = []
            for j in range(k):
                acc = self.M.zero
                for l in range(k):
                    acc = self.M.add(acc, self.M.ract(m[i][l], z.mat[l][j]))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    def eq(self, m1, m2):
        return all(self.M.eq(x, y) for r1, r2 in zip(m1, m2) for x, y in zip(r1, r2))

    def unit_matrix(self, m, i, j):
        z = self.M.zero
        return tuple(
            tuple(m if (a, b) == (i, j) else z for b in range(self.ctx.k)) for a in range(self.ctx.k)
        )

    def corner(self, m):
        return m[0][0]


def bimodule_transport(ctx, M, samples_a=None, samples_m=None):
    if samples_a and samples_m:
        M.validate(samples_a, samples_m)
    return TransportedBimodule(ctx, M)


# -- lifted group actions ------------------------------------------------------


class EquivariantActions:
    """The two actions of a normalizing overgroup on the matrix algebra.

    ``twisted``: conjugate the coset geometry and the coefficients; its
    restriction to the subgroup is the adjoint action of the embedded
    subgroup.  ``translation``: left-translate the coset geometry only;
    the subgroup acts trivially, so this one factors through the
    quotient.
    """

    def __init__(self, ctx, htilde_ids):
        self.ctx = ctx
        self.htilde_ids = sorted(htilde_ids)
        G = ctx.group
        sub = set(ctx.sub_ids)
        if not G.is_subgroup(self.htilde_ids):
            raise CentralizerError("the acting set is not a subgroup")
        if not sub <= set(self.htilde_ids):
            raise CentralizerError("the acting subgroup must contain the coefficient subgroup")
        for ht in self.htilde_ids:
            if {G.conjugate(ht, h) for h in sub} != sub:
                raise CentralizerError("the subgroup is not normal in the acting subgroup")

    def _basis_images(self, ht, translate_only):
        """Structure data of the function transform: per row i the pair
        (j, h) with transformed(rep i) = (ht . h-image) * (ht . f(rep j))."""
        ctx = self.ctx
        G = ctx.group
        out = []
        hti = G.inv[ht]
        for i in range(ctx.k):
            gi = ctx.reps[i]
            src = G.mul(hti, gi) if translate_only else G.mul(G.mul(hti, gi), ht)
            j = ctx.coset_of[src]
            h = G.mul(src, G.inv[ctx.reps[j]])
            out.append((j, h))
        return out

    def _apply_T(self, ht, images, coords):
        """Apply the function transform with precomputed structure data to
        coordinate columns {index: A-value}."""
        A = self.ctx.A
        out = {}
        for i in range(self.ctx.k):
            j, hcorr = images[i]
            v = coords.get(j)
            if v is None:
                continue
            val = A.mul(A.act(ht, A.from_group(hcorr)), A.act(ht, v))
            if not A.is_zero(val):
                out[i] = val
        return out

    def _transform(self, z, ht, translate_only):
        """Matrix of  f -> ht . (z (ht^{-1} . f))  on coordinate columns."""
        ctx = self.ctx
        A = ctx.A
        G = ctx.group
        fw = self._basis_images(ht, translate_only)
        bw = self._basis_images(G.inv[ht], translate_only)
        k = ctx.k
        z2 = [[A.zero()] * k for _ in range(k)]
        for j in range(k):
            vec = self._apply_T(G.inv[ht], bw, {j: A.one()})
            zvec = {}
            for i in range(k):
                acc = A.zero()
                for l, v in vec.items():
                    acc = A.add(acc, A.mul(z.mat[i][l], v))
                if not A.is_zero(acc):
                    zvec[i] = acc
            for i, v in self._apply_T(ht, fw, zvec).items():
                z2[i][j] = v
        return CentralizerElement(ctx, tuple(tuple(r) for r in z2))

    def twisted(self, ht, z):
        return self._transform(z, ht, translate_only=False)

    def translation(self, ht, z):
        return self._transform(z, ht, translate_only=True)


def equivariant_action(ctx, htilde_ids):
    return EquivariantActions(ctx, htilde_ids)


def derivation_lift(ctx, D, samples=None):
    """Entry-wise lift of a subgroup-linear derivation of A.

    ``D`` maps A-elements to A-elements; Leibniz and vanishing on the
    subgroup image are checked on the supplied samples.
    """
    A = ctx.A
    if samples:
        for a in samples:
            for b in samples:
                left = D(A.mul(a, b))
                right = A.add(A.mul(D(a), b), A.mul(a, D(b)))
                if not A.eq(left, right):
                    raise CentralizerError("derivation fails the Leibniz rule on samples")
    for h in ctx.sub_ids:
        if not A.is_zero(D(A.from_group(h))):
            raise CentralizerError("derivation does not kill the subgroup image")

    def lifted(z):
        return CentralizerElement(ctx, tuple(tuple(D(x) for x in row) for row in z.mat))

    return lifted
