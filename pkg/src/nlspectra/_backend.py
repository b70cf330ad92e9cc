"""Backend selection: compiled extension when available, pure Python otherwise.

``NLSPECTRA_BACKEND`` forces a choice (``compiled`` or ``python``); it is an
environment variable rather than a flag so that worker processes spawned by
the lattice evaluator inherit the same backend.
"""

from __future__ import annotations

import os

_forced = os.environ.get("NLSPECTRA_BACKEND", "").strip().lower()

if _forced in ("", "auto"):
    try:
        from . import _core as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _purepy as kernels  # type: ignore[no-redef]
elif _forced in ("compiled", "c", "ext"):
    from . import _core as kernels  # type: ignore[attr-defined, no-redef]
elif _forced in ("python", "pure", "py"):
    from . import _purepy as kernels  # type: ignore[no-redef]
else:
    raise ImportError(
        f"NLSPECTRA_BACKEND={_forced!r} not recognized; "
        "use 'compiled', 'python', or 'auto'"
    )

BACKEND: str = kernels.BACKEND_NAME

__all__ = ["kernels", "BACKEND"]
