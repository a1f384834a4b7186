"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``ENRQ_KERNEL=py`` or ``ENRQ_KERNEL=c`` to force a backend; the default
prefers the compiled one and silently falls back.
"""

import os

_choice = os.environ.get("ENRQ_KERNEL", "").strip().lower()

if _choice in ("", "c"):
    try:
        from ._ckernel import madd

        BACKEND = "c"
    except ImportError:
        if _choice == "c":
            raise
        from ._pykernel import madd

        BACKEND = "py"
elif _choice == "py":
    from ._pykernel import madd

    BACKEND = "py"
else:
    raise ValueError(f"unknown ENRQ_KERNEL value: {_choice!r}")

__all__ = ["madd", "BACKEND"]
