"""Kernel backend selection.

The compiled extension is used when it was built; set
``BARYTILE_PURE_PYTHON=1`` to force the pure-Python implementation.
"""
from __future__ import annotations

import os

from . import _pykernels

python_backend = _pykernels
compiled_backend = None

if os.environ.get("BARYTILE_PURE_PYTHON") != "1":
    try:
        from . import _ckernels as compiled_backend  # type: ignore[no-redef]
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "compiled" if _active is compiled_backend else "python"

gf2_rank = _active.gf2_rank
restricted_ranks = _active.restricted_ranks
component_labels = _active.component_labels
