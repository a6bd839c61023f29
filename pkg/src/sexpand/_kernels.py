"""Kernel backend selection.

Imports the compiled extension when available and falls back to the pure
Python implementation otherwise.  ``SEXPAND_BACKEND=pure`` or ``=compiled``
forces a backend (the latter raises if the extension is missing).
"""

from __future__ import annotations

import os

_forced = os.environ.get("SEXPAND_BACKEND")

if _forced == "pure":
    from . import _pure as _impl

    BACKEND = "pure"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        if _forced == "compiled":
            raise
        from . import _pure as _impl

        BACKEND = "pure"

signed_product_sum = _impl.signed_product_sum
gji_pair_terms = _impl.gji_pair_terms
