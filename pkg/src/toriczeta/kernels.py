"""Kernel selection: the compiled extension when importable, else numpy.

Set ``TORICZETA_PURE=1`` to force the numpy path.
"""

import os

if os.environ.get("TORICZETA_PURE", "") not in ("", "0"):
    from . import _kernels_py as impl

    BACKEND = "numpy"
else:
    try:
        from . import _kernels as impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        from . import _kernels_py as impl

        BACKEND = "numpy"

value_histogram = impl.value_histogram
common_zeros = impl.common_zeros
