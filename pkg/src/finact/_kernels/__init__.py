"""Hot-loop kernels: compiled extension when available, pure Python otherwise.

Both backends expose the same five functions; `SEMIAB_KERNELS=python`
forces the fallback (useful for benchmarking and differential tests).
"""

import os

from . import pyref

if os.environ.get("SEMIAB_KERNELS", "").lower() == "python":
    _impl = pyref
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl

        BACKEND = "c"
    except ImportError:
        _impl = pyref
        BACKEND = "python"

prepare = _impl.prepare
closure = _impl.closure
pair_commutators = _impl.pair_commutators
normal_closure = _impl.normal_closure
normalize_syllables = _impl.normalize_syllables

__all__ = [
    "BACKEND",
    "prepare",
    "closure",
    "pair_commutators",
    "normal_closure",
    "normalize_syllables",
    "pyref",
]
