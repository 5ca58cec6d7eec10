"""Timing harness for the render kernels: numba path against the numpy twin.

Runs point_cloud and rasterize on a four-map square system at a chosen
depth, checks both implementations agree bit for bit, and prints the
per-call timings.  JIT compilation happens in an untimed warmup call so
the numbers reflect steady state.

    python3 benchmarks/bench_kernels.py --depth 10 --repeats 5
"""

import argparse
import time

import numpy as np

from carpets import make_spec
from carpets._kernels import numba_enabled, point_cloud, rasterize
from carpets.model import centroid, contractions


def square_system():
    spec = make_spec(
        a=0,
        b=0,
        c=2,
        maps=[
            ((0, 1, False), (0, 0)),
            ((0, 1, False), (1, 0)),
            ((0, 1, False), (0, 1)),
            ((0, 1, False), (1, 1)),
        ],
    )
    maps = contractions(spec)
    m = len(maps)
    linears = np.empty((m, 2, 2))
    shifts = np.empty((m, 2))
    for k, aff in enumerate(maps):
        lin = aff.linear
        linears[k] = [[float(lin.a), float(lin.b)], [float(lin.c), float(lin.d)]]
        shifts[k] = [float(aff.shift.x), float(aff.shift.y)]
    center = centroid(spec)
    start = np.array([float(center.x), float(center.y)])
    return linears, shifts, start


def timed(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--depth", type=int, default=10, help="composition depth (4**depth points)")
    parser.add_argument("--size", type=int, default=768, help="raster width and height")
    parser.add_argument("--repeats", type=int, default=5, help="timed repetitions, best is reported")
    args = parser.parse_args()

    if not numba_enabled():
        parser.error("numba path unavailable (not installed or CARPETS_DISABLE_NUMBA set)")

    linears, shifts, start = square_system()
    n_points = linears.shape[0] ** args.depth
    print(f"point_cloud: depth {args.depth}, {n_points} points")

    # warmup compiles the numba kernels; numpy warmup keeps cache state even
    point_cloud(linears, shifts, start, 2, impl="numba")
    point_cloud(linears, shifts, start, 2, impl="numpy")

    cloud_nb, t_nb = timed(lambda: point_cloud(linears, shifts, start, args.depth, impl="numba"), args.repeats)
    cloud_np, t_np = timed(lambda: point_cloud(linears, shifts, start, args.depth, impl="numpy"), args.repeats)
    if not np.array_equal(cloud_nb, cloud_np):
        raise SystemExit("point_cloud: implementations disagree")
    print(f"  numba {t_nb * 1e3:9.2f} ms   numpy {t_np * 1e3:9.2f} ms   speedup {t_np / t_nb:5.2f}x")

    classes = (np.arange(n_points) * 4 // n_points).astype(np.int64)
    w = h = args.size
    cx, cy, hw = 0.5, 0.5, 0.55
    rasterize(cloud_nb[:16], classes[:16], 8, 8, cx, cy, hw, impl="numba")
    rasterize(cloud_nb[:16], classes[:16], 8, 8, cx, cy, hw, impl="numpy")

    print(f"rasterize: {n_points} points onto {w}x{h}")
    grid_nb, t_nb = timed(lambda: rasterize(cloud_nb, classes, w, h, cx, cy, hw, impl="numba"), args.repeats)
    grid_np, t_np = timed(lambda: rasterize(cloud_np, classes, w, h, cx, cy, hw, impl="numpy"), args.repeats)
    if not np.array_equal(grid_nb, grid_np):
        raise SystemExit("rasterize: implementations disagree")
    print(f"  numba {t_nb * 1e3:9.2f} ms   numpy {t_np * 1e3:9.2f} ms   speedup {t_np / t_nb:5.2f}x")


if __name__ == "__main__":
    main()
