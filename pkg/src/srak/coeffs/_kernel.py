"""Kernel dispatch: compiled extension when built, pure Python otherwise."""

try:
    from . import _kernel_cy as _impl

    BACKEND = "compiled"
except ImportError:  # extension not built
    from . import _kernel_py as _impl

    BACKEND = "pure"

eadd = _impl.eadd
madd = _impl.madd
maxpy = _impl.maxpy
mscale = _impl.mscale
mneg = _impl.mneg
mmul = _impl.mmul
emap_axpy = _impl.emap_axpy
