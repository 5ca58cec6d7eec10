"""Shared example systems.

The rotation spec is the det-5 example with one irrational rotation:
its neighbor graph, dimensions and boundary equations are known in
closed form, so most exactness tests run against it.  The rest are
classical square-lattice systems with independently known answers.
"""

import pytest

from carpets import analyze, make_spec

ROTATION_SPEC_ID = "cb460e0524850f6a996330793b5472b306056cac626c52e8c02e980d9da1d24e"


def rotation_maps():
    return [
        (("-3/5", "-4/5", False), (-1, -2)),
        (("0", "-1", False), (-1, -4)),
        (("0", "1", False), (-1, -1)),
        (("0", "-1", False), (0, -3)),
    ]


@pytest.fixture(scope="session")
def rotation_spec():
    return make_spec(0, -1, 2, rotation_maps())


@pytest.fixture(scope="session")
def rotation_record(rotation_spec):
    return analyze(rotation_spec)


@pytest.fixture(scope="session")
def triangle_spec():
    return make_spec(
        0, 0, 2, [((0, 1, False), (0, 0)), ((0, 1, False), (1, 0)), ((0, 1, False), (0, 1))]
    )


@pytest.fixture(scope="session")
def square2_spec():
    return make_spec(
        0,
        0,
        2,
        [((0, 1, False), (x, y)) for x in range(2) for y in range(2)],
    )


@pytest.fixture(scope="session")
def square3_spec():
    return make_spec(
        0,
        0,
        3,
        [((0, 1, False), (x, y)) for x in range(3) for y in range(3)],
    )


@pytest.fixture(scope="session")
def carpet_spec():
    return make_spec(
        0,
        0,
        3,
        [((0, 1, False), (x, y)) for x in range(3) for y in range(3) if (x, y) != (1, 1)],
    )


@pytest.fixture(scope="session")
def carpet_record(carpet_spec):
    return analyze(carpet_spec)


@pytest.fixture(scope="session")
def cantor_spec():
    # two pieces of a 3x scaling, diagonal corners: certifiably disjoint
    return make_spec(0, 0, 3, [((0, 1, False), (0, 0)), ((0, 1, False), (2, 2))])


@pytest.fixture(scope="session")
def duplicate_map_spec():
    return make_spec(
        0, 0, 2, [((0, 1, False), (0, 0)), ((0, 1, False), (0, 0)), ((0, 1, False), (1, 0))]
    )
