"""Hot-kernel backend selection.

Prefers the compiled Cython extension; falls back to pure numpy. Set
ADSPEECH_KERNELS=python to force the fallback (used by the benchmark and
the backend-parity tests).
"""

from __future__ import annotations

import os

from . import fallback

if os.environ.get("ADSPEECH_KERNELS", "").lower() == "python":
    _impl = fallback
    BACKEND = "python"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = fallback
        BACKEND = "python"

acf_pitch_search = _impl.acf_pitch_search
svc_epoch = _impl.svc_epoch
svr_epoch = _impl.svr_epoch


def backend() -> str:
    """Name of the active kernel backend: 'cython' or 'python'."""
    return BACKEND
