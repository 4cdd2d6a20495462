"""Polynomial kernels: compiled extension when built, pure Python otherwise.

Set ``HOPFGEN_PURE_PYTHON=1`` to force the fallback.
"""

import os

BACKEND = "python"

if not os.environ.get("HOPFGEN_PURE_PYTHON"):
    try:
        from ._ckernels import (  # noqa: F401
            poly_add,
            poly_div_exact,
            poly_mul,
            poly_mul_term,
            poly_reduce,
            poly_scale,
            poly_sub,
        )

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._pykernels import (  # noqa: F401
        poly_add,
        poly_div_exact,
        poly_mul,
        poly_mul_term,
        poly_reduce,
        poly_scale,
        poly_sub,
    )
