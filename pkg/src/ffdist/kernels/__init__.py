"""Kernel backend selection.

The numba kernels are used unless ``FFDIST_DISABLE_NUMBA`` is set to a truthy
value (or numba cannot be imported), in which case the pure-numpy twins are
used. Results are identical either way; only speed differs.
"""
import os

_FLAG = "FFDIST_DISABLE_NUMBA"


def _numba_disabled():
    return os.environ.get(_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


if _numba_disabled():
    from . import numpy_kernels as _impl
    BACKEND = "numpy"
else:
    try:
        from . import numba_kernels as _impl
        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is a declared dependency
        from . import numpy_kernels as _impl
        BACKEND = "numpy"

cyclic_shift_or = _impl.cyclic_shift_or
cyclic_convolution = _impl.cyclic_convolution
ntt_butterflies = _impl.ntt_butterflies
pair_distance_mark = _impl.pair_distance_mark

__all__ = [
    "BACKEND",
    "cyclic_shift_or",
    "cyclic_convolution",
    "ntt_butterflies",
    "pair_distance_mark",
]
