"""Kernel backend selection.

The hot numerical loops (planar entropy objectives, golden-section
refinement, Monte Carlo outcome counting) exist twice: a compiled Cython
extension (``_speedups``) and a pure NumPy/Python fallback (``_purepy``).
The compiled backend is preferred when importable; set ``JMENTROPY_PURE=1``
to force the fallback.  Both backends expose the same functions and agree
to floating-point roundoff (see tests/test_kernels.py).
"""

import os

from . import _purepy

if os.environ.get("JMENTROPY_PURE"):
    _impl = _purepy
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _purepy

BACKEND = _impl.BACKEND

entropy2 = _impl.entropy2
entropy2_array = _impl.entropy2_array
planar_objective = _impl.planar_objective
planar_objective_grid = _impl.planar_objective_grid
planar_objective_deriv = _impl.planar_objective_deriv
golden_minimize = _impl.golden_minimize
count_joint_outcomes = _impl.count_joint_outcomes


def backend_name() -> str:
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return BACKEND
