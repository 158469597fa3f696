"""NumPy reference implementation of the summation kernels.

This is the import-time fallback when the compiled extension is absent
and the always-on path for component sets the extension does not cover
(power-mean components).  Chunked vectorized evaluation keeps memory
bounded; chunk sums use NumPy's pairwise reduction, which is
deterministic for fixed shapes.
"""

from __future__ import annotations

import numpy as np

from ..engines.moments import MomentRequest, component_values

CHUNK = 16384


def block_sum(impl, a: np.ndarray, x0: int, x1: int, req: MomentRequest) -> np.ndarray:
    """Componentwise sum over the integer range [x0, x1)."""
    total = np.zeros(req.n_components(impl.k))
    for start in range(x0, x1, CHUNK):
        x = np.arange(start, min(start + CHUNK, x1), dtype=float)
        total += component_values(impl, a, x, req).sum(axis=1)
    return total
