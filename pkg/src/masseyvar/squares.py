"""Vectorized exact square-root tests on integer arrays."""

from __future__ import annotations

from math import isqrt

import numpy as np

# (r + 1)^2 must not overflow int64 during correction
INT64_SAFE = 1 << 62


def _isqrt_obj(v):
    return isqrt(v) if v >= 0 else -1


_isqrt_ufunc = np.frompyfunc(_isqrt_obj, 1, 1)


def exact_sqrt(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return (mask, roots): mask[i] iff values[i] is a perfect square, roots[i] its root.

    int64 input must stay below 2**62 in absolute value; anything else is
    handled exactly through Python integers.
    """
    values = np.asarray(values)
    if values.dtype == np.int64:
        nonneg = values >= 0
        clipped = np.where(nonneg, values, 0)
        r = np.floor(np.sqrt(clipped.astype(np.float64))).astype(np.int64)
        for _ in range(2):
            r = np.where(r * r > clipped, r - 1, r)
            r = np.where((r + 1) * (r + 1) <= clipped, r + 1, r)
        return nonneg & (r * r == values), r
    roots = _isqrt_ufunc(values)
    mask = np.array([int(r) >= 0 and int(r) * int(r) == int(v) for r, v in zip(roots.flat, values.flat)],
                    dtype=bool).reshape(values.shape)
    return mask, roots
