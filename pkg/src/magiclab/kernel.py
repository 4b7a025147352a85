"""Backend selection for the labelling search.

The compiled ``_ckernel`` is used when it was built; otherwise the
pure-Python ``_pykernel`` is used. Set ``MAGICLAB_BACKEND=python`` to force
the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from magiclab import _pykernel

BACKENDS: dict[str, ModuleType] = {"python": _pykernel}

try:
    from magiclab import _ckernel
except ImportError:  # extension not built
    _ckernel = None
else:
    BACKENDS["cython"] = _ckernel


def _select() -> tuple[str, ModuleType]:
    wanted = os.environ.get("MAGICLAB_BACKEND", "").strip().lower()
    if wanted:
        if wanted not in BACKENDS:
            raise ImportError(f"MAGICLAB_BACKEND={wanted!r} is not available; "
                              f"have {sorted(BACKENDS)}")
        return wanted, BACKENDS[wanted]
    if "cython" in BACKENDS:
        return "cython", BACKENDS["cython"]
    return "python", _pykernel


BACKEND, _impl = _select()


def get_backend(name: str | None = None) -> ModuleType:
    if name is None:
        return _impl
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {sorted(BACKENDS)}") from None
