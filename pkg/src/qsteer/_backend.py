"""Kernel selection: compiled extension when importable, numpy fallback otherwise.

Set ``QSTEER_PURE_PYTHON=1`` to force the fallback.
"""

import importlib
import os

from . import _kernels_py

BACKENDS = ("compiled", "python")


def load(name):
    if name == "python":
        return _kernels_py
    if name == "compiled":
        return importlib.import_module("qsteer._kernels")
    raise ValueError(f"unknown backend {name!r}")


def available():
    names = []
    for name in BACKENDS:
        try:
            load(name)
        except ImportError:
            continue
        names.append(name)
    return names


if os.environ.get("QSTEER_PURE_PYTHON") == "1":
    kernels, name = _kernels_py, "python"
else:
    try:
        kernels, name = load("compiled"), "compiled"
    except ImportError:
        kernels, name = _kernels_py, "python"
