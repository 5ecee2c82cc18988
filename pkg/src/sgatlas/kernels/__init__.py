"""Pair-enumeration kernels: compiled core with a pure-Python fallback.

The compiled extension is preferred when importable; set
``SGATLAS_PURE_PYTHON=1`` to force the numpy implementation.  Both
backends return identical arrays (see ``tests/test_kernels.py``).
"""

import os

from . import _pairs_py

if os.environ.get("SGATLAS_PURE_PYTHON") == "1":
    _impl = _pairs_py
    BACKEND = "python"
else:
    try:
        from . import _pairs_cy as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pairs_py
        BACKEND = "python"

MAX_KERNEL_SITES = _pairs_py.MAX_KERNEL_SITES

pair_block = _impl.pair_block


def available_backends() -> dict:
    """Importable kernel backends keyed by name (for benchmarks/tests)."""
    backends = {"python": _pairs_py.pair_block}
    try:
        from . import _pairs_cy
        backends["cython"] = _pairs_cy.pair_block
    except ImportError:
        pass
    return backends
