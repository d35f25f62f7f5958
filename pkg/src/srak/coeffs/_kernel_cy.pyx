# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernel_py``.

Same contract as the pure-Python kernel: sparse term maps with exact
coefficient objects.  The win comes from C-level dict iteration and
tuple construction in the convolution loops; coefficient arithmetic
stays in the exact types supplied by the caller.
"""

cdef inline tuple _eadd(tuple ea, tuple eb):
    cdef Py_ssize_t i, n = len(ea)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = ea[i] + eb[i]
    return tuple(out)


def eadd(tuple ea, tuple eb):
    return _eadd(ea, eb)


def madd(dict a, dict b):
    cdef dict out = dict(a)
    cdef object k, v, cur
    for k, v in b.items():
        cur = out.get(k)
        if cur is None:
            out[k] = v
        else:
            cur = cur + v
            if cur:
                out[k] = cur
            else:
                del out[k]
    return out


def maxpy(dict acc, dict b, object s):
    cdef object k, v, cur, sv
    if not s:
        return acc
    for k, v in b.items():
        cur = acc.get(k)
        if cur is None:
            sv = s * v
            if sv:
                acc[k] = sv
        else:
            cur = cur + s * v
            if cur:
                acc[k] = cur
            else:
                del acc[k]
    return acc


def mscale(dict a, object s):
    cdef dict out = {}
    cdef object k, v
    if not s:
        return out
    for k, v in a.items():
        out[k] = s * v
    return out


def mneg(dict a):
    cdef dict out = {}
    cdef object k, v
    for k, v in a.items():
        out[k] = -v
    return out


def mmul(dict a, dict b):
    cdef dict out = {}
    cdef object ea, ca, eb, cb, c, cur
    cdef tuple e
    if not a or not b:
        return out
    if len(a) > len(b):
        a, b = b, a
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = _eadd(<tuple> ea, <tuple> eb)
            c = ca * cb
            cur = out.get(e)
            if cur is None:
                out[e] = c
            else:
                cur = cur + c
                if cur:
                    out[e] = cur
                else:
                    del out[e]
    return out


def emap_axpy(dict out, object key, dict poly, object s):
    cdef dict cur = <dict> out.get(key)
    if cur is None:
        cur = {}
        out[key] = cur
    maxpy(cur, poly, s)
    if not cur:
        del out[key]
    return out
