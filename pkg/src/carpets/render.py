"""Raster pictures of attractors and DOT export of neighbor graphs.

Rendering walks the float shadow of the exact IFS: the attractor is
approximated by the point cloud of all depth-n word images of the fixed
point of f_1, drawn in standard euclidean coordinates.  Depth is chosen
so a piece at that level is no larger than one pixel, capped so the
cloud stays within a fixed point budget.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .fields import embed_to_standard
from .model import IfsSpec, centroid, contractions, piece_deviation_sq
from .neighbors import NeighborGraph

MAX_CLOUD_POINTS = 10_000_000
WINDOW_SLACK = 1.05

# muted qualitative palette, cycled by map index
PALETTE = (
    (31, 119, 180),
    (255, 127, 14),
    (44, 160, 44),
    (214, 39, 40),
    (148, 103, 189),
    (140, 86, 75),
    (227, 119, 194),
    (127, 127, 127),
    (188, 189, 34),
    (23, 190, 207),
)
MONO_COLOR = (40, 40, 40)
BACKGROUND = (255, 255, 255)

COLORINGS = ("mono", "first", "second")


@dataclass(frozen=True)
class RenderRequest:
    width: int = 512
    height: int = 512
    depth: int | None = None
    window: tuple[float, float, float] | None = None  # cx, cy, half width
    coloring: str = "mono"


@dataclass(frozen=True)
class RenderResult:
    grid: np.ndarray  # (height, width) int32, -1 background
    width: int
    height: int
    depth: int
    capped: bool
    window: tuple[float, float, float]
    coloring: str


def _float_system(spec: IfsSpec):
    contr = contractions(spec)
    m = len(contr)
    linears = np.empty((m, 2, 2))
    shifts = np.empty((m, 2))
    for k, aff in enumerate(contr):
        lin = aff.linear
        linears[k] = [[float(lin.a), float(lin.b)], [float(lin.c), float(lin.d)]]
        shifts[k] = [float(aff.shift.x), float(aff.shift.y)]
    return linears, shifts


def _depth_cap(m: int) -> int:
    if m < 2:
        return 10**9  # a one-map cloud never grows
    return int(math.floor(math.log(MAX_CLOUD_POINTS) / math.log(m)))


def _auto_depth(diam: float, pixel: float, ratio: float, m: int) -> tuple[int, bool]:
    cap = _depth_cap(m)
    if diam <= pixel or diam == 0.0:
        wanted = 0
    else:
        wanted = int(math.ceil(math.log(pixel / diam) / math.log(ratio)))
    if wanted > cap:
        return cap, True
    return max(wanted, 0), False


def _classes(total: int, m: int, depth: int, coloring: str) -> np.ndarray:
    if coloring == "mono" or depth == 0:
        return np.zeros(total, dtype=np.int32)
    if coloring == "first":
        stride = m ** (depth - 1)
        return (np.arange(total, dtype=np.int64) // stride).astype(np.int32)
    if coloring == "second":
        if depth < 2:
            return np.zeros(total, dtype=np.int32)
        stride = m ** (depth - 2)
        return ((np.arange(total, dtype=np.int64) // stride) % m).astype(np.int32)
    raise ValueError(f"unknown coloring {coloring!r}")


def render(spec: IfsSpec, request: RenderRequest | None = None, impl: str | None = None) -> RenderResult:
    request = request or RenderRequest()
    if request.coloring not in COLORINGS:
        raise ValueError(f"unknown coloring {request.coloring!r}")
    if request.width <= 0 or request.height <= 0:
        raise ValueError("image dimensions must be positive")

    linears, shifts = _float_system(spec)
    m = spec.m
    ratio = 1.0 / math.sqrt(float(spec.expansion_det()))
    center = centroid(spec)
    deviation = math.sqrt(float(piece_deviation_sq(spec)))
    radius = deviation / (1.0 - ratio) if deviation > 0 else 0.0

    embed = embed_to_standard(spec.field)
    center_std = embed @ np.array([float(center.x), float(center.y)])

    if request.window is not None:
        cx, cy, half_w = (float(v) for v in request.window)
        if half_w <= 0:
            raise ValueError("window half width must be positive")
    else:
        cx, cy = float(center_std[0]), float(center_std[1])
        half_w = radius * WINDOW_SLACK if radius > 0 else 1.0

    pixel = 2.0 * half_w / request.width
    if request.depth is not None:
        if request.depth < 0:
            raise ValueError("depth must be non-negative")
        cap = _depth_cap(m)
        depth = min(request.depth, cap)
        capped = request.depth > cap
    else:
        depth, capped = _auto_depth(2.0 * radius, pixel, ratio, m)

    start = np.array([float(center.x), float(center.y)])
    cloud = _kernels.point_cloud(linears, shifts, start, depth, impl=impl)
    cloud_std = cloud @ embed.T
    classes = _classes(cloud_std.shape[0], m, depth, request.coloring)
    grid = _kernels.rasterize(
        cloud_std, classes, request.width, request.height, cx, cy, half_w, impl=impl
    )
    return RenderResult(
        grid=grid,
        width=request.width,
        height=request.height,
        depth=depth,
        capped=capped,
        window=(cx, cy, half_w),
        coloring=request.coloring,
    )


def _rgb_array(result: RenderResult) -> np.ndarray:
    lut = np.empty((len(PALETTE) + 1, 3), dtype=np.uint8)
    lut[0] = BACKGROUND
    if result.coloring == "mono":
        lut[1:] = MONO_COLOR
    else:
        lut[1:] = PALETTE
    shifted = (result.grid % len(PALETTE)) + 1
    shifted[result.grid < 0] = 0
    return lut[shifted]


def to_ppm(result: RenderResult) -> bytes:
    """Binary P6 image, one palette color per class, white background."""
    rgb = _rgb_array(result)
    header = f"P6\n{result.width} {result.height}\n255\n".encode("ascii")
    return header + rgb.tobytes()


def to_png(result: RenderResult) -> bytes:
    try:
        from PIL import Image
    except ImportError as exc:  # pragma: no cover - Pillow is an extra
        raise RuntimeError("PNG output needs Pillow installed") from exc
    buf = io.BytesIO()
    Image.fromarray(_rgb_array(result), mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


def export_dot(graph: NeighborGraph | None) -> str:
    """Graphviz source for a neighbor graph.

    The synthetic root is a point node named id; initial edges leave it
    dashed, so plain arrows are exactly the successor relation.  A
    missing graph (empty attractor overlap) keeps just the root.
    """
    lines = ["digraph neighbors {", "  rankdir=LR;", '  id [shape=point, label=""];']
    if graph is None:
        lines.append("}")
        return "\n".join(lines) + "\n"
    for i in range(graph.type_count):
        lines.append(f"  {graph.vertex_name(i)};")
    for dst, (k, j) in graph.initial:
        lines.append(f'  id -> {graph.vertex_name(dst)} [label="{k},{j}", style=dashed];')
    for src, dst, (k, j) in graph.edges:
        lines.append(f'  {graph.vertex_name(src)} -> {graph.vertex_name(dst)} [label="{k},{j}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
