"""PBW engine for deformation algebras of a finite symplectic group.

An algebra here is the quotient of T(V) # G over the parameter
polynomial ring by commutation relations

    v_j v_i  =  v_i v_j + kappa(v_j, v_i)        (j > i in a fixed basis)

where kappa takes values in group-algebra elements with polynomial
coefficients.  Elements are kept in normal form: a finite map

    (non-decreasing index word over the basis of V, group element)
        -> coefficient polynomial.

Rewriting moves group elements right past vectors (pure relabeling) and
sorts vector words, inserting kappa terms; it terminates because each
step either lowers the word degree by two or removes an inversion.  The
omega-form presentation (kappa built from the symplectic form and the
per-reflection forms, with parameter t on the identity and c_i on orbit
i) is the default; the Cherednik layer installs its own table.

Also here: the spherical corner, degree-truncated center computation
with its corner cross-checks, the Poisson bracket on the t = 0 center,
the trace-obstruction lattice, and symmetric-group character data for
it.  All operations are pure; algebras and elements may be shared
between threads.
"""

import math
from functools import lru_cache

from . import linalg
from .coeffs import ParamPoly, R0, R1, rat
from .coeffs import _kernel as K


class AlgebraError(ValueError):
    pass


def _poly_raw_const(arity, value):
    return {(0,) * arity: value} if value else {}


class SRAlgebra:
    """Descriptor: group, basis order, commutator table, parameters."""

    def __init__(self, group, kappa, nparams, x_count=None, names=None, presentation="custom", rdata=None):
        self.group = group
        self.nv = group.dim
        self.kappa = kappa  # dict (j, i) j>i -> tuple of (gid, raw poly dict)
        self.nparams = nparams
        self.x_count = x_count
        self.rdata = rdata
        self.presentation = presentation
        self.names = names or self._default_names()
        self._word_cache = {}
        self._gexp_cache = {}
        self._gmono_cache = {}
        self._columns = {}
        for (j, i) in kappa:
            if not (0 <= i < j < self.nv):
                raise AlgebraError("kappa table must be indexed by pairs j > i")

    def _default_names(self):
        n = self.nv
        if self.x_count is not None and 2 * self.x_count == n:
            h = self.x_count
            if h == 1:
                vnames = ["x", "y"]
            else:
                vnames = ["x%d" % (i + 1) for i in range(h)] + ["y%d" % (i + 1) for i in range(h)]
        else:
            vnames = ["v%d" % (i + 1) for i in range(n)]
        pnames = ["t"] + ["c%d" % i for i in range(1, self.nparams)]
        gnames = {0: "e"}
        gen_names = self.group.gen_names
        for pos, gid in enumerate(self.group.generator_ids):
            if gen_names and pos < len(gen_names):
                gnames.setdefault(gid, gen_names[pos])
        return {"v": vnames, "p": pnames, "g": gnames}

    def group_name(self, gid):
        return self.names["g"].get(gid, "g%d" % gid)

    # -- constructors ---------------------------------------------------

    @classmethod
    def omega_form(cls, group, rdata, c_scale=None, extra_names=None):
        """Build the presentation driven by the symplectic form data.

        kappa(v_j, v_i) = t*omega(v_j, v_i) + sum_s c(s)*omega_s(v_j, v_i)*s
        with c(s) the parameter of the conjugation orbit of s, optionally
        rescaled by ``c_scale`` (used to install converted parameter
        normalizations).
        """
        nparams = rdata.num_orbits + 1
        n = group.dim
        ei = [R0] * n
        kappa = {}
        for j in range(n):
            for i in range(j):
                terms = {}
                vi = tuple(R1 if k == i else R0 for k in range(n))
                vj = tuple(R1 if k == j else R0 for k in range(n))
                w = group.omega_eval(vj, vi)
                if w:
                    K.emap_axpy(terms, 0, {(1,) + (0,) * (nparams - 1): R1}, w)
                for s in rdata.reflections:
                    ws = rdata.omega_s_eval(s, vj, vi)
                    if ws:
                        orb = rdata.orbit_of[s]
                        if c_scale is not None:
                            ws = ws * c_scale
                        e = [0] * nparams
                        e[orb + 1] = 1
                        K.emap_axpy(terms, s, {tuple(e): R1}, ws)
                if terms:
                    kappa[(j, i)] = tuple((gid, poly) for gid, poly in sorted(terms.items()))
        x_count = group.h_dim if group.h_dim is not None else None
        alg = cls(group, kappa, nparams, x_count=x_count, presentation="omega-form", rdata=rdata)
        if extra_names:
            alg.names.update(extra_names)
        return alg

    # -- element constructors -------------------------------------------

    def zero(self):
        return SRAElement(self, {})

    def scalar(self, value):
        if isinstance(value, ParamPoly):
            if value.arity != self.nparams:
                raise AlgebraError("parameter arity mismatch")
            poly = value
        else:
            poly = ParamPoly.const(self.nparams, rat(value) if isinstance(value, int) else value)
        if not poly:
            return self.zero()
        return SRAElement(self, {((), 0): poly})

    def one(self):
        return self.scalar(R1)

    def param(self, index):
        return self.scalar(ParamPoly.var(self.nparams, index))

    def gen(self, v_index, power=1):
        if not (0 <= v_index < self.nv):
            raise AlgebraError("basis index out of range")
        return SRAElement(self, {((v_index,) * power, 0): ParamPoly.one(self.nparams)})

    def group_elt(self, gid):
        return SRAElement(self, {((), gid): ParamPoly.one(self.nparams)})

    def vector(self, coeffs, gid=0):
        """Element sum(coeffs[i] * v_i) * g."""
        terms = {}
        for i, c in enumerate(coeffs):
            c = rat(c) if isinstance(c, int) else c
            if c:
                K.emap_axpy(terms, ((i,), gid), _poly_raw_const(self.nparams, R1), c)
        return SRAElement(self, {k: ParamPoly(self.nparams, v) for k, v in terms.items()})

    def element(self, raw_terms):
        return SRAElement(self, {k: (v if isinstance(v, ParamPoly) else ParamPoly(self.nparams, v)) for k, v in raw_terms.items() if v})

    # -- rewriting core --------------------------------------------------

    def _column(self, gid, v):
        key = (gid, v)
        col = self._columns.get(key)
        if col is None:
            mat = self.group.mats[gid]
            col = tuple((l, mat[l][v]) for l in range(self.nv) if mat[l][v])
            self._columns[key] = col
        return col

    def _gexpand(self, gid, word):
        """Expansion of g . word as a tuple of (word', rational coeff)."""
        key = (gid, word)
        hit = self._gexp_cache.get(key)
        if hit is not None:
            return hit
        acc = {(): R1}
        for v in word:
            col = self._column(gid, v)
            nxt = {}
            for w, c in acc.items():
                for l, m in col:
                    k = w + (l,)
                    cur = nxt.get(k)
                    if cur is None:
                        nxt[k] = c * m
                    else:
                        cur = cur + c * m
                        if cur:
                            nxt[k] = cur
                        else:
                            del nxt[k]
            acc = nxt
        out = tuple(sorted(acc.items()))
        self._gexp_cache[key] = out
        return out

    def _word_normal(self, word):
        """Normal form of a plain word of basis indices.

        Returns a frozen map {(sorted word, gid): raw poly dict}.
        Callers must not mutate the result.
        """
        hit = self._word_cache.get(word)
        if hit is not None:
            return hit
        pos = -1
        for idx in range(len(word) - 1):
            if word[idx] > word[idx + 1]:
                pos = idx
                break
        if pos < 0:
            out = {(word, 0): _poly_raw_const(self.nparams, R1)}
            self._word_cache[word] = out
            return out
        j, i = word[pos], word[pos + 1]
        swapped = word[:pos] + (i, j) + word[pos + 2 :]
        out = {}
        for k, p in self._word_normal(swapped).items():
            K.emap_axpy(out, k, p, R1)
        kap = self.kappa.get((j, i), ())
        if kap:
            prefix, suffix = word[:pos], word[pos + 2 :]
            mul = self.group.mul
            for gid, kpoly in kap:
                if suffix:
                    exp = self._gexpand(gid, suffix)
                else:
                    exp = (((), R1),)
                for w2, q in exp:
                    for (m, g2), p in self._word_normal(prefix + w2).items():
                        contrib = K.mmul(kpoly, p)
                        K.emap_axpy(out, (m, mul(g2, gid)), contrib, q)
        self._word_cache[word] = out
        return out

    def _gmono_normal(self, gid, mono):
        """Normal form of the element g . mono (no trailing group part)."""
        key = (gid, mono)
        hit = self._gmono_cache.get(key)
        if hit is not None:
            return hit
        out = {}
        for w, q in self._gexpand(gid, mono):
            for k, p in self._word_normal(w).items():
                K.emap_axpy(out, k, p, q)
        self._gmono_cache[key] = out
        return out

    def multiply(self, a, b, xcap=None):
        """Normal-form product.  ``xcap`` prunes terms whose x-degree is
        provably >= xcap (doubled algebras only)."""
        if a.algebra is not b.algebra:
            raise AlgebraError("elements of different algebras")
        xc = self.x_count
        mul = self.group.mul
        out = {}
        for (m1, g1), p1 in a.terms.items():
            p1r = p1.terms
            if xcap is not None:
                x1 = sum(1 for v in m1 if v < xc)
                y1 = len(m1) - x1
            for (m2, g2), p2 in b.terms.items():
                if xcap is not None:
                    x2 = sum(1 for v in m2 if v < xc)
                    y2 = len(m2) - x2
                    if x1 + x2 - (y1 + y2) >= xcap:
                        continue
                g12 = mul(g1, g2)
                p12 = K.mmul(p1r, p2.terms)
                if not p12:
                    continue
                if m2:
                    pieces = self._gmono_normal(g1, m2)
                else:
                    pieces = {((), 0): _poly_raw_const(self.nparams, R1)}
                for (mp, gp), q in pieces.items():
                    coeff = K.mmul(p12, q)
                    if not coeff:
                        continue
                    if m1:
                        for (m, gk), pk in self._word_normal(m1 + mp).items():
                            if xcap is not None and sum(1 for v in m if v < xc) >= xcap:
                                continue
                            K.emap_axpy(out, (m, mul(mul(gk, gp), g12)), K.mmul(coeff, pk), R1)
                    else:
                        if xcap is not None and sum(1 for v in mp if v < xc) >= xcap:
                            continue
                        K.emap_axpy(out, (mp, mul(gp, g12)), coeff, R1)
        return SRAElement(self, {k: ParamPoly(self.nparams, v) for k, v in out.items()})

    def normalize_word(self, factors):
        """Normal form of a product of factors.

        Each factor is a V-vector (sequence of rationals of length 2n), a
        group element ("g", gid), a parameter polynomial, or a rational.
        A zero vector annihilates the word.
        """
        acc = self.one()
        for f in factors:
            if isinstance(f, tuple) and len(f) == 2 and f[0] == "g":
                acc = self.multiply(acc, self.group_elt(f[1]))
            elif isinstance(f, (list, tuple)):
                acc = self.multiply(acc, self.vector(f))
            elif isinstance(f, ParamPoly):
                acc = self.multiply(acc, self.scalar(f))
            else:
                acc = self.multiply(acc, self.scalar(f))
        return acc

    # -- parsing ----------------------------------------------------------

    def parse(self, text):
        """Parse an element literal like "y*x - t + 2*c1*s"."""
        return _parse_element(self, text)


class SRAElement:
    """Normal-form element: map (word, group id) -> coefficient."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, SRAElement):
            return self.algebra is other.algebra and self.terms == other.terms
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, SRAElement):
            other = self.algebra.scalar(other)
        if self.algebra is not other.algebra:
            raise AlgebraError("elements of different algebras")
        out = dict(self.terms)
        for k, v in other.terms.items():
            cur = out.get(k)
            s = v if cur is None else cur + v
            if s:
                out[k] = s
            elif cur is not None:
                del out[k]
        return SRAElement(self.algebra, out)

    def __sub__(self, other):
        if not isinstance(other, SRAElement):
            other = self.algebra.scalar(other)
        return self + (-other)

    def __neg__(self):
        return SRAElement(self.algebra, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SRAElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        # scalars and parameters are central
        return self.scale(other)

    def scale(self, c):
        if isinstance(c, ParamPoly):
            out = {}
            for k, v in self.terms.items():
                p = v * c
                if p:
                    out[k] = p
            return SRAElement(self.algebra, out)
        c = rat(c) if isinstance(c, int) else c
        if not c:
            return self.algebra.zero()
        return SRAElement(self.algebra, {k: v * c for k, v in self.terms.items()})

    def commutator(self, other):
        return self * other - other * self

    def specialize(self, t=None, c=None):
        """Substitute rationals for t and/or the orbit parameters."""
        values = {}
        if t is not None:
            values[0] = rat(t) if isinstance(t, int) else t
        if c is not None:
            if len(c) != self.algebra.nparams - 1:
                raise AlgebraError("expected %d orbit parameters" % (self.algebra.nparams - 1))
            for i, v in enumerate(c):
                values[i + 1] = rat(v) if isinstance(v, int) else v
        out = {}
        for k, v in self.terms.items():
            p = v.specialize(values)
            if p:
                out[k] = p
        return SRAElement(self.algebra, out)

    def vdegree(self):
        """Filtration degree: length of the longest word present."""
        return max((len(m) for (m, _) in self.terms), default=0)

    def xdegree(self):
        xc = self.algebra.x_count
        return max((sum(1 for v in m if v < xc) for (m, _) in self.terms), default=0)

    def ydegree(self):
        xc = self.algebra.x_count
        return max((sum(1 for v in m if v >= xc) for (m, _) in self.terms), default=0)

    def weight_homogeneous_degree(self):
        """Scaling weight when homogeneous (vectors weight 1, parameters
        weight 2), else None."""
        w = None
        for (m, _), p in self.terms.items():
            for e in p.terms:
                cand = len(m) + 2 * sum(e)
                if w is None:
                    w = cand
                elif w != cand:
                    return None
        return w

    def coefficient(self, mono, gid):
        return self.terms.get((tuple(mono), gid), ParamPoly.zero(self.algebra.nparams))

    def truncate_x(self, order):
        """Drop terms of x-degree >= order (doubled algebras)."""
        xc = self.algebra.x_count
        out = {k: v for k, v in self.terms.items() if sum(1 for vv in k[0] if vv < xc) < order}
        return SRAElement(self.algebra, out)

    def map_coefficients(self, fn):
        out = {}
        for k, v in self.terms.items():
            p = fn(v)
            if p:
                out[k] = p
        return SRAElement(self.algebra, out)

    def sorted_terms(self):
        """Canonical order: graded-lex on the monomial, then the group
        element's canonical matrix key."""
        from .groups import mat_key

        mats = self.algebra.group.mats
        return sorted(
            self.terms.items(),
            key=lambda kv: (len(kv[0][0]), kv[0][0], mat_key(mats[kv[0][1]])),
        )

    def to_str(self):
        if not self.terms:
            return "0"
        alg = self.algebra
        vnames = alg.names["v"]
        pnames = alg.names["p"]
        chunks = []
        for (m, g), p in self.sorted_terms():
            factors = []
            i = 0
            while i < len(m):
                j = i
                while j < len(m) and m[j] == m[i]:
                    j += 1
                factors.append(vnames[m[i]] if j - i == 1 else "%s^%d" % (vnames[m[i]], j - i))
                i = j
            if g != 0:
                factors.append(alg.group_name(g))
            body = "*".join(factors)
            ps = p.to_str(pnames)
            if body:
                if ps == "1":
                    chunks.append(body)
                elif ps == "-1":
                    chunks.append("-" + body)
                elif "+" in ps or (ps.count("-") - ps.startswith("-")) > 0:
                    chunks.append("(%s)*%s" % (ps, body))
                else:
                    chunks.append("%s*%s" % (ps, body))
            else:
                chunks.append(ps if ("+" not in ps and (ps.count("-") - ps.startswith("-")) == 0) else "(%s)" % ps)
        out = chunks[0]
        for t in chunks[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __repr__(self):
        return "<%s>" % self.to_str()


# -- literal parsing ------------------------------------------------------


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^()":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and (text[j].isdigit() or text[j] == "/"):
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise AlgebraError("unexpected character %r in element literal" % ch)
    return tokens


def _parse_element(alg, text):
    from .coeffs import parse_rational

    names = {}
    for i, nm in enumerate(alg.names["v"]):
        names[nm] = ("v", i)
    for i, nm in enumerate(alg.names["p"]):
        names[nm] = ("p", i)
    if alg.nparams == 2:
        names.setdefault("c", ("p", 1))
    for gid in range(alg.group.order):
        names.setdefault(alg.group_name(gid), ("g", gid))

    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_factor():
        tok = take()
        if tok == "(":
            e = parse_expr()
            if peek() != ")":
                raise AlgebraError("unbalanced parentheses in element literal")
            take()
            base = e
        elif tok and (tok[0].isdigit()):
            base = alg.scalar(parse_rational(tok))
        elif tok in names:
            kind, idx = names[tok]
            if kind == "v":
                base = alg.gen(idx)
            elif kind == "p":
                base = alg.param(idx)
            else:
                base = alg.group_elt(idx)
        else:
            raise AlgebraError("unknown symbol %r in element literal" % tok)
        if peek() == "^":
            take()
            exp = take()
            if not exp or not exp.isdigit():
                raise AlgebraError("exponent must be a nonnegative integer")
            n = int(exp)
            out = alg.one()
            for _ in range(n):
                out = out * base
            base = out
        return base

    def parse_term():
        out = parse_factor()
        while peek() == "*":
            take()
            out = out * parse_factor()
        return out

    def parse_expr():
        sign = R1
        if peek() in ("+", "-"):
            if take() == "-":
                sign = -R1
        out = parse_term().scale(sign)
        while peek() in ("+", "-"):
            sgn = -R1 if take() == "-" else R1
            out = out + parse_term().scale(sgn)
        return out

    result = parse_expr()
    if pos != len(tokens):
        raise AlgebraError("trailing garbage in element literal")
    return result


# -- graded dimensions ------------------------------------------------------


def pbw_dimension(alg, d):
    """Count of normal-form basis elements of V-degree exactly d."""
    if d < 0:
        raise AlgebraError("degree must be nonnegative")
    n = alg.nv
    return math.comb(d + n - 1, n - 1) * alg.group.order


# -- spherical corner -------------------------------------------------------


def spherical_idempotent(alg):
    scale = rat(1, alg.group.order)
    return SRAElement(alg, {((), g): ParamPoly.const(alg.nparams, scale) for g in range(alg.group.order)})


def spherical_corner(alg, a):
    e = spherical_idempotent(alg)
    return alg.multiply(alg.multiply(e, a), e)


# -- center computation -----------------------------------------------------


def _coord_keys(alg, d, c_values, include_t):
    """Coordinate keys (mono, gid, param exponents) for elements of
    V-degree <= d.  With symbolic parameters the keys carry parameter
    exponents and enumeration is by scaling weight; with specialized
    parameters the exponents are all zero."""
    n = alg.nv
    keys = []

    def monos(deg):
        if deg == 0:
            yield ()
            return
        stack = [((), 0)]
        while stack:
            prefix, start = stack.pop()
            if len(prefix) == deg:
                yield prefix
                continue
            for v in range(start, n):
                stack.append((prefix + (v,), v))

    if c_values is not None:
        for deg in range(d + 1):
            for m in sorted(monos(deg)):
                for g in range(alg.group.order):
                    keys.append((m, g, (0,) * alg.nparams))
        return keys
    # symbolic: enumerate by weight w = |mono| + 2*|param exponents|
    pvars = list(range(alg.nparams)) if include_t else list(range(1, alg.nparams))

    def pexps(total):
        if total == 0:
            yield (0,) * alg.nparams
            return
        if not pvars:
            return
        def rec(idx, left, acc):
            if idx == len(pvars) - 1:
                e = list(acc) + [left]
                out = [0] * alg.nparams
                for v, k in zip(pvars, e):
                    out[v] = k
                yield tuple(out)
                return
            for k in range(left + 1):
                yield from rec(idx + 1, left - k, acc + [k])
        yield from rec(0, total, [])

    for w in range(d + 1):
        for pdeg in range(w // 2 + 1):
            vdeg = w - 2 * pdeg
            for m in sorted(monos(vdeg)):
                for g in range(alg.group.order):
                    for pe in sorted(pexps(pdeg)):
                        keys.append((m, g, pe))
    return keys


def _key_element(alg, key):
    m, g, pe = key
    return SRAElement(alg, {(m, g): ParamPoly.monomial(alg.nparams, pe, R1)})


def _flatten(alg, elt, slots):
    """Coordinates of an element over (mono, gid, param-exponent) slots."""
    vec = [R0] * len(slots)
    for (m, g), p in elt.terms.items():
        for pe, c in p.terms.items():
            idx = slots.get((m, g, pe))
            if idx is None:
                slots[(m, g, pe)] = idx = len(slots)
                vec.append(R0)
            while len(vec) < len(slots):
                vec.append(R0)
            vec[idx] = vec[idx] + c
    return vec


class CenterBasis:
    """Result of the degree-truncated center computation.

    ``elements`` are normal-form central elements; with symbolic
    parameters they form a module basis over the parameter ring (scaling
    weight homogeneous, new at their own weight); ``graded_dims[d]``
    counts basis elements of top V-degree d. ``cutoff`` records the
    truncation: centrality is asserted for the span only up to it.
    """

    def __init__(self, elements, graded_dims, cutoff, mode):
        self.elements = elements
        self.graded_dims = graded_dims
        self.cutoff = cutoff
        self.mode = mode


def center_basis(alg, d, c_values=None, include_t=False, t_value=None):
    """Basis of central elements of V-degree <= d at t = t_value (default 0).

    ``c_values``: rationals to specialize the orbit parameters, or None
    to work with symbolic parameters (module basis over the parameter
    ring).  ``include_t`` keeps t symbolic instead of pinning it (used by
    the generic-center cross-check).
    """
    if t_value is None:
        t_value = R0
    gens = list(alg.group.generator_ids)
    test_elts = [alg.gen(i) for i in range(alg.nv)] + [alg.group_elt(g) for g in gens]

    def commute_vec(z, slots):
        rows = []
        for u in test_elts:
            c = z.commutator(u)
            if not include_t:
                c = c.specialize(t=t_value)
            if c_values is not None:
                c = c.specialize(c=c_values)
            rows.append(_flatten(alg, c, slots))
        return rows

    if c_values is not None:
        keys = _coord_keys(alg, d, c_values, include_t)
        basis_elts = [_key_element(alg, k) for k in keys]
        slots = {}
        cols = []
        for z in basis_elts:
            rows = commute_vec(z, slots)
            cols.append(rows)
        width = len(slots)
        matrix_rows = []
        for r in range(len(test_elts)):
            stacked = []
            for col in cols:
                v = col[r]
                v = v + [R0] * (width - len(v))
                stacked.append(v)
            for out_c in range(width):
                matrix_rows.append([stacked[k][out_c] for k in range(len(cols))])
        null = linalg.nullspace(matrix_rows, len(cols))
        elements = []
        for v in null:
            v = linalg.clear_denominators(v)
            acc = alg.zero()
            for coef, z in zip(v, basis_elts):
                if coef:
                    acc = acc + z.scale(coef)
            elements.append(acc)
        elements.sort(key=lambda e: (e.vdegree(), sorted(e.terms)))
        dims = [0] * (d + 1)
        for e in elements:
            dims[e.vdegree()] += 1
        return CenterBasis(elements, dims, d, "specialized")

    # symbolic parameters: weight-by-weight over Q, keeping only the
    # elements that are new modulo parameter multiples of lower weights
    elements = []
    dims = [0] * (d + 1)
    prev_weight_elts = {}
    pvars = list(range(alg.nparams)) if include_t else list(range(1, alg.nparams))
    for w in range(d + 1):
        keys = [k for k in _coord_keys(alg, d, None, include_t) if len(k[0]) + 2 * sum(k[2]) == w]
        if not keys:
            prev_weight_elts[w] = []
            continue
        basis_elts = [_key_element(alg, k) for k in keys]
        slots = {}
        cols = [commute_vec(z, slots) for z in basis_elts]
        width = len(slots)
        matrix_rows = []
        for r in range(len(test_elts)):
            stacked = []
            for col in cols:
                v = col[r]
                v = v + [R0] * (width - len(v))
                stacked.append(v)
            for out_c in range(width):
                matrix_rows.append([stacked[k][out_c] for k in range(len(cols))])
        null = linalg.nullspace(matrix_rows, len(cols))
        weight_elements = []
        for v in null:
            v = linalg.clear_denominators(v)
            acc = alg.zero()
            for coef, z in zip(v, basis_elts):
                if coef:
                    acc = acc + z.scale(coef)
            weight_elements.append(acc)
        prev_weight_elts[w] = weight_elements
        # new = complement of (parameter * weight-(w-2) center) in weight-w center
        old = prev_weight_elts.get(w - 2, [])
        coordslots = {}
        old_vecs = []
        for z in old:
            for pv in pvars:
                zp = z.scale(ParamPoly.var(alg.nparams, pv))
                old_vecs.append((zp, None))
        allvecs = [(z, "old") for z, _ in old_vecs] + [(z, "new") for z in weight_elements]
        flat = [_flatten(alg, z, coordslots) for z, _ in allvecs]
        width2 = len(coordslots)
        flat = [v + [R0] * (width2 - len(v)) for v in flat]
        tracker = linalg.RankTracker(width2)
        for (z, tag), v in zip(allvecs, flat):
            isnew = tracker.add(v)
            if tag == "new" and isnew:
                elements.append(z)
                dims[z.vdegree()] += 1
    return CenterBasis(elements, dims, d, "symbolic")


def recheck_central(alg, elt, c_values=None, include_t=False, t_value=None):
    """Post-hoc check: commutes with every basis vector and generator."""
    if t_value is None:
        t_value = R0
    for u in [alg.gen(i) for i in range(alg.nv)] + [alg.group_elt(g) for g in alg.group.generator_ids]:
        c = elt.commutator(u)
        if not include_t:
            c = c.specialize(t=t_value)
        if c_values is not None:
            c = c.specialize(c=c_values)
        if c:
            return False
    return True


def satake_corner_check(alg, basis, d, c_values=None):
    """The corner map z -> e z e on the center: injectivity plus equality
    with the dimension of the degree-<= d spherical corner."""
    e = spherical_idempotent(alg)

    def center_side(z):
        w = alg.multiply(e, z)
        if c_values is not None:
            w = w.specialize(c=c_values)
        return w.specialize(t=R0)

    slots = {}
    vecs = [_flatten(alg, center_side(z), slots) for z in basis]
    width = len(slots)
    vecs = [v + [R0] * (width - len(v)) for v in vecs]
    tr = linalg.RankTracker(width)
    for v in vecs:
        tr.add(v)
    injective = tr.rank == len(basis)

    # corner dimension: span of e * (monomial x group) * e up to degree d
    slots2 = {}
    tr2 = linalg.RankTracker(0)
    corner_vecs = []
    n = alg.nv

    def monos(deg):
        out = [()]
        for _ in range(deg):
            nxt = []
            for m in out:
                start = m[-1] if m else 0
                for v in range(start, n):
                    nxt.append(m + (v,))
            out = nxt
        return out

    for deg in range(d + 1):
        for m in monos(deg):
            for g in range(alg.group.order):
                z = SRAElement(alg, {(m, g): ParamPoly.one(alg.nparams)})
                w = spherical_corner(alg, z).specialize(t=R0)
                if c_values is not None:
                    w = w.specialize(c=c_values)
                corner_vecs.append(_flatten(alg, w, slots2))
    width2 = len(slots2)
    tr2 = linalg.RankTracker(width2)
    for v in corner_vecs:
        tr2.add(v + [R0] * (width2 - len(v)))
    corner_dim = tr2.rank
    return {"injective": injective, "corner_dim": corner_dim, "basis_size": len(basis), "spans_corner": injective and corner_dim == len(basis)}


def ideal_recovery_check(alg, basis, gens, d, c_values):
    """Intersecting the two-sided span H*I with the center span recovers
    the center-ideal span, in filtration degree <= d (specialized
    parameters; evidence for the corner/center ideal correspondence)."""

    def at(z):
        return z.specialize(t=R0, c=c_values)

    slots = {}
    n = alg.nv

    def monos_upto(deg):
        out = [()]
        acc = [()]
        for _ in range(deg):
            nxt = []
            for m in acc:
                start = m[-1] if m else 0
                for v in range(start, n):
                    nxt.append(m + (v,))
            out.extend(nxt)
            acc = nxt
        return out

    hi_vecs = []
    for g in gens:
        gdeg = g.vdegree()
        for m in monos_upto(max(0, d - gdeg)):
            for gg in range(alg.group.order):
                h = SRAElement(alg, {(m, gg): ParamPoly.one(alg.nparams)})
                hi_vecs.append(_flatten(alg, at(alg.multiply(h, g)), slots))
    z_vecs = [_flatten(alg, at(z), slots) for z in basis if z.vdegree() <= d]
    zi_vecs = []
    for g in gens:
        gdeg = g.vdegree()
        for z in basis:
            if z.vdegree() + gdeg <= d:
                zi_vecs.append(_flatten(alg, at(alg.multiply(z, g)), slots))
    width = len(slots)
    hi_vecs = [v + [R0] * (width - len(v)) for v in hi_vecs]
    z_vecs = [v + [R0] * (width - len(v)) for v in z_vecs]
    zi_vecs = [v + [R0] * (width - len(v)) for v in zi_vecs]
    inter = linalg.intersect_spans(hi_vecs, z_vecs, width)
    return linalg.span_equal(inter, zi_vecs, width)


# -- Poisson bracket --------------------------------------------------------


def poisson_bracket(alg, z1, z2):
    """Bracket on the t = 0 center: lift with identical coefficients,
    commutate over the full parameter ring, divide exactly by t, set t = 0.

    Raises AlgebraError when the commutator is not divisible by t (the
    inputs were not central at t = 0).
    """
    com = alg.multiply(z1, z2) - alg.multiply(z2, z1)
    out = {}
    for k, p in com.terms.items():
        if not p.t_multiple():
            raise AlgebraError("inputs not central at t=0: commutator has a t-free part")
        q = p.div_t().specialize({0: R0})
        if q:
            out[k] = q
    return SRAElement(alg, out)


# -- trace obstruction and the lattice gate ---------------------------------


def trace_obstruction(dims_and_traces, m_list, c_list, t_value):
    """Residuals  dim*t + sum_i n_i m_i c_i  per module datum.

    A nonzero residual certifies that no finite-dimensional module with
    those group traces exists at the given parameters (omega-form
    normalization).
    """
    t_value = rat(t_value) if isinstance(t_value, int) else t_value
    c_list = [rat(c) if isinstance(c, int) else c for c in c_list]
    if len(m_list) != len(c_list):
        raise AlgebraError("orbit count mismatch between weights and parameters")
    out = []
    for dim, traces in dims_and_traces:
        if len(traces) != len(m_list):
            raise AlgebraError("trace vector has wrong orbit count")
        r = rat(dim) * t_value
        for n_i, m_i, c_i in zip(traces, m_list, c_list):
            r = r + n_i * m_i * c_i
        out.append(r)
    return out


def simplicity_lattice(m_list, irreducibles):
    """Generators (m_i * n_i(M'))_i over the irreducibles, zero vectors
    removed, deduplicated, sorted."""
    vecs = set()
    for dim, traces in irreducibles:
        if len(traces) != len(m_list):
            raise AlgebraError("trace vector has wrong orbit count")
        v = tuple(m * n for m, n in zip(m_list, traces))
        if any(v):
            vecs.add(v)
    return sorted(vecs)


def lattice_gate(lattice, c_list, t_value=1):
    """True when some integer pairing occurs: the no-finite-dimensional-
    representation certificate fails and the parameter is a candidate for
    non-simplicity.  c in omega-form normalization, t = 1 scaling."""
    t_value = rat(t_value) if isinstance(t_value, int) else t_value
    witnesses = []
    for lam in lattice:
        val = sum((l * (rat(c) if isinstance(c, int) else c) for l, c in zip(lam, c_list)), R0) / t_value
        if val == int(val):
            witnesses.append(lam)
    return {"candidate_nonsimple": bool(witnesses), "integral_witnesses": witnesses}


# -- symmetric group characters ----------------------------------------------


def partitions(n):
    """Partitions of n in descending lexicographic order."""
    out = []

    def rec(left, maxpart, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        for k in range(min(left, maxpart), 0, -1):
            rec(left - k, k, acc + [k])

    rec(n, n, [])
    return out


@lru_cache(maxsize=None)
def hook_dimension(lam):
    """Number of standard tableaux by the hook length formula."""
    n = sum(lam)
    conj = [0] * (lam[0] if lam else 0)
    for part in lam:
        for j in range(part):
            conj[j] += 1
    prod = 1
    for i, part in enumerate(lam):
        for j in range(part):
            prod *= part - j + conj[j] - i - 1
    return math.factorial(n) // prod


def sn_reflection_characters(n):
    """Per partition of n: (dimension, character value on a transposition).

    The trace is dim * 2 * (sum of contents) / (n(n-1)).
    """
    if not (2 <= n <= 10):
        raise AlgebraError("supported range is 2 <= n <= 10")
    out = []
    for lam in partitions(n):
        dim = hook_dimension(lam)
        contents = sum(j - i for i, part in enumerate(lam) for j in range(part))
        tr = rat(dim * 2 * contents, n * (n - 1))
        if tr != int(tr):
            raise AlgebraError("character value is not integral")  # pragma: no cover
        out.append((lam, dim, rat(int(tr))))
    return out
