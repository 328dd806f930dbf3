"""Pick the spectral-scan implementation at import time.

``GRADES_BACKEND`` may be ``auto`` (default: compiled if importable),
``compiled`` (fail loudly if missing) or ``python``.
"""
import os

from . import _fallback

_choice = os.environ.get("GRADES_BACKEND", "auto").strip().lower()

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

if _choice not in ("auto", "compiled", "python"):
    raise ImportError(f"GRADES_BACKEND must be auto, compiled or python, not {_choice!r}")
if _choice == "compiled" and _compiled is None:
    raise ImportError("GRADES_BACKEND=compiled but grades._kernels is not built")

if _compiled is not None and _choice != "python":
    impl = _compiled
    BACKEND = "compiled"
else:
    impl = _fallback
    BACKEND = "python"

lex_extremes = impl.lex_extremes
support_extremes = impl.support_extremes


def available():
    """Names of the importable backends."""
    return ["compiled", "python"] if _compiled is not None else ["python"]


def get(name):
    """Return the backend module called ``name``."""
    if name == "python":
        return _fallback
    if name == "compiled" and _compiled is not None:
        return _compiled
    raise LookupError(f"backend {name!r} is not available")
