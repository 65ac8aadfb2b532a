"""Scan-kernel backend, chosen once at import.

The compiled extension is used when it was built; otherwise the pure-Python
module.  Set ``PLURACT_PURE_PYTHON=1`` to force the fallback.
"""

import importlib
import os

_PURE = os.environ.get("PLURACT_PURE_PYTHON", "") not in ("", "0")


def available() -> dict:
    """Importable backends by name."""
    found = {"python": importlib.import_module("pluract._pykernels")}
    try:
        found["compiled"] = importlib.import_module("pluract._ckernels")
    except ImportError:
        pass
    return found


_backends = available()
BACKEND = "python" if _PURE or "compiled" not in _backends else "compiled"
_impl = _backends[BACKEND]

contains = _impl.contains
pairs_with_member = _impl.pairs_with_member
pairs_within = _impl.pairs_within
members_in_pairs = _impl.members_in_pairs
pairs_with_label = _impl.pairs_with_label
powerset = _impl.powerset
sps_scan = _impl.sps_scan
