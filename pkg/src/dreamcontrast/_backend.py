"""Pick the compiled kernels when they import, else the pure-Python ones.

Set ``DREAMCONTRAST_BACKEND`` to ``python`` or ``compiled`` to force one.
"""

from __future__ import annotations

import importlib
import os

_MODULES = {"compiled": "dreamcontrast._kernels", "python": "dreamcontrast._pykernels"}


def load(name: str):
    if name not in _MODULES:
        raise ValueError(f"unknown backend {name!r}; choose from {sorted(_MODULES)}")
    return importlib.import_module(_MODULES[name])


def available() -> list[str]:
    out = []
    for name in _MODULES:
        try:
            load(name)
        except ImportError:
            continue
        out.append(name)
    return out


def _select():
    want = os.environ.get("DREAMCONTRAST_BACKEND", "auto").lower()
    if want != "auto":
        return want, load(want)
    try:
        return "compiled", load("compiled")
    except ImportError:
        return "python", load("python")


NAME, kernels = _select()
