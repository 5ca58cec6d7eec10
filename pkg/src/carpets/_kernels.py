"""Float kernels behind rendering: point clouds and rasterization.

The exact analysis core never calls into this module; it exists for the
hot numeric loops that turn a spec into pixels.  Each kernel has a numba
implementation and a pure-numpy twin.  Selection happens once per call
chain: numba is used when it imports and the CARPETS_DISABLE_NUMBA
environment variable is unset (or "0"), otherwise numpy.  Both paths
must produce identical arrays; the benchmark and the tests compare them.
"""

from __future__ import annotations

import os

import numpy as np

DISABLE_ENV = "CARPETS_DISABLE_NUMBA"

_numba_cache: dict[str, object] = {}


def numba_enabled() -> bool:
    if os.environ.get(DISABLE_ENV, "").strip() not in ("", "0"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def active_impl() -> str:
    return "numba" if numba_enabled() else "numpy"


# --- point cloud ----------------------------------------------------
#
# Level-synchronous expansion: level l holds the m**l images of the
# start point under all length-l composition words.  Blocks are laid
# out so the outermost (last applied) map index is most significant;
# after n levels, index // m**(n-1) is the first letter of the word.


def _point_cloud_numpy(linears: np.ndarray, shifts: np.ndarray, start: np.ndarray, depth: int) -> np.ndarray:
    points = start[None, :].astype(np.float64)
    m = linears.shape[0]
    for _ in range(depth):
        count = points.shape[0]
        grown = np.empty((m * count, 2))
        x = points[:, 0]
        y = points[:, 1]
        for k in range(m):
            block = grown[k * count : (k + 1) * count]
            # elementwise, not matmul: BLAS contracts a*x + b*y into fused
            # instructions, which would break bit equality with the scalar
            # numba kernel
            block[:, 0] = linears[k, 0, 0] * x + linears[k, 0, 1] * y + shifts[k, 0]
            block[:, 1] = linears[k, 1, 0] * x + linears[k, 1, 1] * y + shifts[k, 1]
        points = grown
    return points


def _numba_point_cloud():
    fn = _numba_cache.get("point_cloud")
    if fn is None:
        from numba import njit

        @njit(cache=False)
        def kernel(linears, shifts, start, depth):
            m = linears.shape[0]
            total = 1
            for _ in range(depth):
                total *= m
            cur = np.empty((total, 2))
            nxt = np.empty((total, 2))
            cur[0, 0] = start[0]
            cur[0, 1] = start[1]
            count = 1
            for _ in range(depth):
                for k in range(m):
                    base = k * count
                    a00 = linears[k, 0, 0]
                    a01 = linears[k, 0, 1]
                    a10 = linears[k, 1, 0]
                    a11 = linears[k, 1, 1]
                    bx = shifts[k, 0]
                    by = shifts[k, 1]
                    for i in range(count):
                        x = cur[i, 0]
                        y = cur[i, 1]
                        nxt[base + i, 0] = a00 * x + a01 * y + bx
                        nxt[base + i, 1] = a10 * x + a11 * y + by
                count *= m
                cur, nxt = nxt, cur
            return cur[:count]

        fn = kernel
        _numba_cache["point_cloud"] = fn
    return fn


def point_cloud(
    linears: np.ndarray,
    shifts: np.ndarray,
    start: np.ndarray,
    depth: int,
    impl: str | None = None,
) -> np.ndarray:
    """All m**depth word images of the start point, companion coordinates."""
    chosen = impl or active_impl()
    if chosen == "numba":
        return _numba_point_cloud()(linears, shifts, start, depth)
    return _point_cloud_numpy(linears, shifts, start, depth)


# --- rasterization --------------------------------------------------


def _rasterize_numpy(points, classes, width, height, cx, cy, half_w):
    pixel = 2.0 * half_w / width
    half_h = pixel * height / 2.0
    cols = np.floor((points[:, 0] - (cx - half_w)) / pixel).astype(np.int64)
    rows = np.floor(((cy + half_h) - points[:, 1]) / pixel).astype(np.int64)
    grid = np.full((height, width), -1, dtype=np.int32)
    valid = (cols >= 0) & (cols < width) & (rows >= 0) & (rows < height)
    # fancy assignment applies in order: with duplicate pixels the last
    # point wins, matching the explicit loop below
    grid[rows[valid], cols[valid]] = classes[valid].astype(np.int32)
    return grid


def _numba_rasterize():
    fn = _numba_cache.get("rasterize")
    if fn is None:
        from numba import njit

        @njit(cache=False)
        def kernel(points, classes, width, height, cx, cy, half_w):
            pixel = 2.0 * half_w / width
            half_h = pixel * height / 2.0
            grid = np.full((height, width), -1, dtype=np.int32)
            left = cx - half_w
            top = cy + half_h
            for i in range(points.shape[0]):
                col = int(np.floor((points[i, 0] - left) / pixel))
                row = int(np.floor((top - points[i, 1]) / pixel))
                if 0 <= col < width and 0 <= row < height:
                    grid[row, col] = classes[i]
            return grid

        fn = kernel
        _numba_cache["rasterize"] = fn
    return fn


def rasterize(
    points: np.ndarray,
    classes: np.ndarray,
    width: int,
    height: int,
    cx: float,
    cy: float,
    half_w: float,
    impl: str | None = None,
) -> np.ndarray:
    """Class grid (height x width, -1 for untouched pixels)."""
    chosen = impl or active_impl()
    if chosen == "numba":
        return _numba_rasterize()(
            points, classes.astype(np.int32), width, height, cx, cy, half_w
        )
    return _rasterize_numpy(points, classes, width, height, cx, cy, half_w)
