"""Backend switch for the compiled kernels.

Set ``BOUNDSCRAMBLE_NUMBA=0`` before import to force the pure-numpy path.
Numba is also skipped silently when it is not importable.
"""
import os

_flag = os.environ.get("BOUNDSCRAMBLE_NUMBA", "1").strip().lower()
NUMBA_REQUESTED = _flag not in ("0", "false", "no", "off")

try:
    from numba import njit as _njit
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    _njit = None

USE_NUMBA = NUMBA_REQUESTED and _njit is not None
BACKEND = "numba" if USE_NUMBA else "numpy"


def jit(fn):
    """Compile ``fn`` in nopython mode, or return it unchanged."""
    if not USE_NUMBA:
        return fn
    return _njit(cache=True, nogil=True)(fn)
