"""Backend selection for the factorization kernels.

The compiled extension ``rblse._ckernels`` is used when it was built and
imports cleanly; otherwise the numpy versions in ``rblse._pykernels`` are
used.  Setting ``RBLSE_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if not os.environ.get("RBLSE_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

householder_qr = _impl.householder_qr
forward_substitution = _impl.forward_substitution


def get_backend(name: str | None = None):
    """Return the kernel module for ``name`` ('cython', 'python' or the active one)."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")
