import math

import numpy as np
import pytest

from carpets._kernels import numba_enabled, point_cloud, rasterize
from carpets.model import centroid, contractions, piece_deviation_sq
from carpets.neighbors import build
from carpets.render import (
    RenderRequest,
    export_dot,
    render,
    to_png,
    to_ppm,
)

from oracles import embedding

needs_numba = pytest.mark.skipif(not numba_enabled(), reason="numba path disabled")


class TestPointCloudKernel:
    def test_block_layout_first_letter_most_significant(self, square2_spec):
        fs = contractions(square2_spec)
        linears = np.array(
            [[[float(f.linear.a), float(f.linear.b)], [float(f.linear.c), float(f.linear.d)]] for f in fs]
        )
        shifts = np.array([[float(f.shift.x), float(f.shift.y)] for f in fs])
        start = np.zeros(2)
        cloud = point_cloud(linears, shifts, start, 3, impl="numpy")
        assert cloud.shape == (64, 2)
        # index = k1*16 + k2*4 + k3 encodes the word (k1, k2, k3)
        from carpets.linalg import Vec2

        for index in (0, 17, 38, 63):
            word = (index // 16, (index // 4) % 4, index % 4)
            point = Vec2.of(0, 0)
            for k in reversed(word):
                point = fs[k](point)
            assert abs(float(point.x) - cloud[index, 0]) < 1e-12
            assert abs(float(point.y) - cloud[index, 1]) < 1e-12

    @needs_numba
    def test_numba_matches_numpy(self, square2_spec, rotation_spec):
        for spec in (square2_spec, rotation_spec):
            fs = contractions(spec)
            linears = np.array(
                [[[float(f.linear.a), float(f.linear.b)], [float(f.linear.c), float(f.linear.d)]] for f in fs]
            )
            shifts = np.array([[float(f.shift.x), float(f.shift.y)] for f in fs])
            start = np.array([0.25, -0.5])
            a = point_cloud(linears, shifts, start, 6, impl="numpy")
            b = point_cloud(linears, shifts, start, 6, impl="numba")
            assert np.array_equal(a, b)


class TestRasterizeKernel:
    def test_grid_values_and_background(self):
        points = np.array([[0.1, 0.1], [0.9, 0.9], [5.0, 5.0]])
        classes = np.array([2, 5, 7])
        grid = rasterize(points, classes, 4, 4, 0.5, 0.5, 0.5, impl="numpy")
        assert grid.shape == (4, 4)
        assert grid[3, 0] == 2  # y up, row 0 at the top
        assert grid[0, 3] == 5
        assert (grid == -1).sum() == 14  # the far point lands outside

    @needs_numba
    def test_numba_matches_numpy_including_overwrites(self):
        rng = np.random.default_rng(5)
        points = rng.uniform(-1.2, 1.2, size=(4000, 2))
        classes = rng.integers(0, 6, size=4000)
        a = rasterize(points, classes, 32, 32, 0.0, 0.0, 1.0, impl="numpy")
        b = rasterize(points, classes, 32, 32, 0.0, 0.0, 1.0, impl="numba")
        assert np.array_equal(a, b)


class TestRender:
    def test_deterministic(self, rotation_spec):
        one = render(rotation_spec, RenderRequest(width=64, height=64))
        two = render(rotation_spec, RenderRequest(width=64, height=64))
        assert np.array_equal(one.grid, two.grid)
        assert one.window == two.window
        assert one.depth == two.depth

    def test_auto_depth_resolves_to_pixel_size(self, square2_spec):
        result = render(square2_spec, RenderRequest(width=64, height=64))
        det = float(square2_spec.expansion_det())
        r = 1.0 / math.sqrt(det)
        pixel = 2.0 * result.window[2] / 64
        # one more level would be finer than a pixel, one less coarser
        assert not result.capped
        diam_scaled = r**result.depth
        assert diam_scaled * 2.0 >= pixel * 0.2

    def test_square_fills_its_unit_square(self, square2_spec):
        result = render(square2_spec, RenderRequest(width=128, height=128))
        cx, cy, hw = result.window
        pixel = 2.0 * hw / 128
        half_h = pixel * 128 / 2.0
        filled = 0
        total = 0
        for row in range(128):
            for col in range(128):
                x = (cx - hw) + (col + 0.5) * pixel
                y = (cy + half_h) - (row + 0.5) * pixel
                # strict interior pixels of the unit square must be hit
                if 0.02 < x < 0.98 and 0.02 < y < 0.98:
                    total += 1
                    if result.grid[row, col] >= 0:
                        filled += 1
        assert total > 1000
        assert filled / total >= 0.99

    def test_cloud_stays_in_attractor_ball(self, rotation_spec):
        result = render(rotation_spec, RenderRequest(width=96, height=96, depth=6))
        # every touched pixel center is within the covering ball, up to
        # one pixel diagonal of slack
        det = float(rotation_spec.expansion_det())
        r = 1.0 / math.sqrt(det)
        delta = math.sqrt(float(piece_deviation_sq(rotation_spec)))
        radius = delta / (1.0 - r)
        center = centroid(rotation_spec)
        embedded_center = embedding(rotation_spec) @ np.array(
            [float(center.x), float(center.y)]
        )
        cx, cy, hw = result.window
        pixel = 2.0 * hw / 96
        half_h = pixel * 96 / 2.0
        rows, cols = np.nonzero(result.grid >= 0)
        xs = (cx - hw) + (cols + 0.5) * pixel
        ys = (cy + half_h) - (rows + 0.5) * pixel
        distances = np.hypot(xs - embedded_center[0], ys - embedded_center[1])
        assert distances.max() <= radius + pixel * math.sqrt(2.0) + 1e-6

    def test_depth_cap_flag(self, square2_spec):
        result = render(square2_spec, RenderRequest(width=16, height=16, depth=50))
        assert result.capped
        assert result.depth < 50

    def test_explicit_window_honored(self, square2_spec):
        request = RenderRequest(width=32, height=32, window=(0.25, 0.25, 0.25))
        result = render(square2_spec, request)
        assert result.window == (0.25, 0.25, 0.25)
        # zoomed into the lower-left quarter: everything is attractor
        assert (result.grid >= 0).mean() > 0.97

    def test_first_letter_coloring_quadrants(self, square2_spec):
        result = render(
            square2_spec, RenderRequest(width=64, height=64, coloring="first")
        )
        present = set(np.unique(result.grid)) - {-1}
        assert present == {0, 1, 2, 3}

        cx, cy, hw = result.window
        pixel = 2.0 * hw / 64
        half_h = pixel * 64 / 2.0

        def class_at(x, y):
            col = int((x - (cx - hw)) / pixel)
            row = int(((cy + half_h) - y) / pixel)
            return result.grid[row, col]

        # map order: t=(0,0) owns the lower-left quarter, t=(1,1) the
        # upper-right one
        assert class_at(0.25, 0.25) == 0
        assert class_at(0.25, 0.75) == 1
        assert class_at(0.75, 0.25) == 2
        assert class_at(0.75, 0.75) == 3

    def test_second_letter_coloring(self, rotation_spec):
        result = render(
            rotation_spec, RenderRequest(width=64, height=64, coloring="second")
        )
        present = set(np.unique(result.grid)) - {-1}
        assert present == {0, 1, 2, 3}

    def test_mono_coloring_single_class(self, rotation_spec):
        result = render(rotation_spec, RenderRequest(width=32, height=32))
        assert set(np.unique(result.grid)) <= {-1, 0}

    @needs_numba
    def test_render_impl_paths_agree(self, rotation_spec):
        request = RenderRequest(width=80, height=80, coloring="first")
        a = render(rotation_spec, request, impl="numpy")
        b = render(rotation_spec, request, impl="numba")
        assert np.array_equal(a.grid, b.grid)


class TestImageEncodings:
    def test_ppm_header_and_size(self, rotation_spec):
        result = render(rotation_spec, RenderRequest(width=40, height=30))
        data = to_ppm(result)
        assert data.startswith(b"P6\n40 30\n255\n")
        header_len = len(b"P6\n40 30\n255\n")
        assert len(data) == header_len + 40 * 30 * 3

    def test_ppm_background_is_white(self, cantor_spec):
        result = render(cantor_spec, RenderRequest(width=16, height=16))
        data = to_ppm(result)
        header_len = len(b"P6\n16 16\n255\n")
        body = data[header_len:]
        assert body[0:3] == b"\xff\xff\xff"

    def test_ppm_deterministic_bytes(self, rotation_spec):
        request = RenderRequest(width=32, height=32, coloring="first")
        assert to_ppm(render(rotation_spec, request)) == to_ppm(
            render(rotation_spec, request)
        )

    def test_png_round_trip(self, rotation_spec):
        PIL = pytest.importorskip("PIL")
        from io import BytesIO

        from PIL import Image

        result = render(rotation_spec, RenderRequest(width=24, height=24))
        image = Image.open(BytesIO(to_png(result)))
        assert image.size == (24, 24)
        assert image.mode == "RGB"


class TestDotExport:
    def test_rotation_graph_text(self, rotation_record):
        text = export_dot(rotation_record.graph)
        assert text.splitlines()[0] == "digraph neighbors {"
        assert '  id [shape=point, label=""];' in text
        assert '  id -> n1 [label="1,3", style=dashed];' in text
        assert '  n5 -> n4 [label="1,1"];' in text
        # the double edge appears twice
        assert text.count("n4 -> n5") == 2
        assert text.rstrip().endswith("}")

    def test_vertex_lines_present(self, rotation_record):
        text = export_dot(rotation_record.graph)
        for name in ("n1", "n2", "n3", "n4", "n5"):
            assert f"  {name};" in text

    def test_empty_graph_is_root_only(self):
        text = export_dot(None)
        assert text == 'digraph neighbors {\n  rankdir=LR;\n  id [shape=point, label=""];\n}\n'

    def test_dashed_edges_match_initial_count(self, carpet_record):
        text = export_dot(carpet_record.graph)
        assert text.count("style=dashed") == len(carpet_record.graph.initial)
