"""Picks the compiled hot loops when the extension is built, else the Python ones.

Set ``DYNCOVER_PURE=1`` to force the Python path.
"""

import os

from . import _pykernels

BACKEND = "python"
bucket_best = _pykernels.bucket_best

if not os.environ.get("DYNCOVER_PURE"):
    try:
        from . import _speedups
    except ImportError:
        pass
    else:
        bucket_best = _speedups.bucket_best
        BACKEND = "compiled"


def use_backend(name):
    """Switch backends at runtime (benchmarks and tests)."""
    global bucket_best, BACKEND
    if name == "python":
        bucket_best = _pykernels.bucket_best
    elif name == "compiled":
        from . import _speedups
        bucket_best = _speedups.bucket_best
    else:
        raise ValueError(name)
    BACKEND = name
