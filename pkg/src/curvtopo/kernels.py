"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the pure-Python
implementation with the same signatures is loaded.
"""

from . import _kernels_py as python

try:
    from . import _kernels as compiled
except ImportError:  # extension not built
    compiled = None

BACKENDS = {"python": python}
if compiled is not None:
    BACKENDS["cython"] = compiled

BACKEND = "cython" if compiled is not None else "python"


def get(name=None):
    """Kernel module by name; ``None`` means the default backend."""
    return BACKENDS[name or BACKEND]
