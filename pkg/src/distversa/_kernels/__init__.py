"""Summation-kernel backend selection.

The compiled Cython extension is used when importable (and not disabled
via DISTVERSA_FORCE_PYTHON=1); otherwise the NumPy reference kernels
take over with identical semantics.  `BACKEND` reports the choice.
"""

from __future__ import annotations

import os

import numpy as np

from ..engines.moments import MomentRequest, component_layout
from . import pyref

_native = None
if not os.environ.get("DISTVERSA_FORCE_PYTHON"):
    try:
        from . import _native  # type: ignore[attr-defined]
    except ImportError:
        _native = None

BACKEND = "cython" if _native is not None else "python"


def _native_call(impl, a, x0: int, n: int) -> np.ndarray | None:
    """Full fixed-layout component sums from the compiled kernel, or None."""
    if _native is None or n <= 0:
        return None
    fam = impl.family_id
    ncomp = 4 if impl.k == 1 else 7
    out = np.zeros(ncomp)
    if fam == "poisson":
        _native.poisson_block(a[0], float(x0), n, out)
    elif fam == "geometric":
        _native.geometric_block(a[0], int(impl.form == "mean"), float(x0), n, out)
    elif fam == "negbinom":
        _native.negbinom_block(
            a[0], a[1], int(impl.form == "mean"), float(x0), n, out
        )
    elif fam == "waring":
        _native.waring_block(a[0], a[1], float(x0), n, out)
    elif fam == "genpoisson":
        _native.genpoisson_block(a[0], a[1], float(x0), n, out)
    elif fam == "discreteweibull":
        _native.dweibull_block(
            a[0], a[1], int(impl.form == "mean"), float(x0), n, out
        )
    else:
        return None
    return out


_FIXED_TAGS_1 = ["mass", ("s", 0), ("p", 0, 0), "nll"]
_FIXED_TAGS_2 = [
    "mass",
    ("s", 0),
    ("s", 1),
    ("p", 0, 0),
    ("p", 0, 1),
    ("p", 1, 1),
    "nll",
]


def block_sum(impl, a: np.ndarray, x0: int, x1: int, req: MomentRequest) -> np.ndarray:
    """Componentwise sums over [x0, x1), native when possible."""
    if req.power is None and impl.k in (1, 2):
        full = _native_call(impl, a, x0, x1 - x0)
        if full is not None:
            fixed = _FIXED_TAGS_1 if impl.k == 1 else _FIXED_TAGS_2
            index = {tag: i for i, tag in enumerate(fixed)}
            tags = component_layout(impl.k, req)
            return np.array([full[index[t]] for t in tags])
    return pyref.block_sum(impl, a, x0, x1, req)
