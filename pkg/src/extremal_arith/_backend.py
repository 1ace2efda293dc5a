"""Selects the compiled or pure-numpy inner loops.

Set ``EXTREMAL_ARITH_BACKEND=numpy`` to force the fallback; the default is
``numba`` when it imports cleanly.
"""

import importlib
import logging
import os

logger = logging.getLogger(__name__)

ENV_VAR = "EXTREMAL_ARITH_BACKEND"
BACKENDS = ("numba", "numpy")


def load(name: str | None = None):
    """Return the kernel module for ``name`` (or the environment's choice)."""
    name = (name or os.environ.get(ENV_VAR, "numba")).strip().lower()
    if name not in BACKENDS:
        raise ValueError(f"{ENV_VAR} must be one of {BACKENDS}, got {name!r}")
    if name == "numba":
        try:
            return importlib.import_module("extremal_arith._numba_kernels")
        except ImportError:  # pragma: no cover - numba is a declared dependency
            logger.warning("numba unavailable, falling back to numpy kernels")
    return importlib.import_module("extremal_arith._numpy_kernels")


kernels = load()
NAME = "numba" if kernels.__name__.endswith("_numba_kernels") else "numpy"
