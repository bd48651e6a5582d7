"""Kernel selection: compiled extension when available, numpy otherwise.

Set ``CONE_HULL_PURE=1`` to force the fallback (used by the benchmark and
the kernel-agreement tests).
"""
from __future__ import annotations

import os

if os.environ.get("CONE_HULL_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

IMPL = _impl.IMPL
HAVE_COMPILED = IMPL == "compiled"
lattice_points_in_box = _impl.lattice_points_in_box
monomial_scores = _impl.monomial_scores
