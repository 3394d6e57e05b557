"""Kernel dispatch: the compiled extension when importable, pure Python otherwise.

Set ``REORILAT_PURE=1`` to force the fallback (used by the equivalence tests
and the benchmark).
"""

from __future__ import annotations

import os

from . import _pykernels

SearchBudgetExceeded = _pykernels.SearchBudgetExceeded

_impl = _pykernels
if os.environ.get("REORILAT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _compiled
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        _impl = _compiled

BACKEND = "compiled" if _impl is not _pykernels else "python"

acyclic_reorientations = _impl.acyclic_reorientations
flippable_mask = _impl.flippable_mask
is_acyclic = _impl.is_acyclic
hamiltonian_search = _impl.hamiltonian_search
max_relabel_codes = _pykernels.max_relabel_codes

__all__ = [
    "BACKEND",
    "SearchBudgetExceeded",
    "acyclic_reorientations",
    "flippable_mask",
    "is_acyclic",
    "hamiltonian_search",
    "max_relabel_codes",
]
