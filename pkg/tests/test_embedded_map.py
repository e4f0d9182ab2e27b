from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from o1tg.embedded_map import (
    build_from_rotation,
    canonical_rotation,
    degrees,
    dumps_rot,
    euler_characteristic,
    loads_rot,
    trace_faces,
)
from o1tg.errors import (
    CrossingEdgesPresent,
    DegenerateMap,
    InconsistentRotation,
    NonSimple,
    ParseError,
)
from o1tg.quad_torus import qprq_rotation

TRIANGLE = {0: (1, 2), 1: (2, 0), 2: (0, 1)}
# K4 drawn in the plane with 3 in the middle of triangle 0 1 2
K4_PLANAR = {0: (1, 3, 2), 1: (2, 3, 0), 2: (0, 3, 1), 3: (0, 1, 2)}


def test_triangle_has_two_faces():
    m = build_from_rotation(TRIANGLE)
    faces = trace_faces(m)
    assert sorted(len(f) for f in faces) == [3, 3]
    assert euler_characteristic(m) == 2


def test_planar_k4_is_a_sphere():
    m = build_from_rotation(K4_PLANAR)
    assert m.num_edges == 6
    assert sorted(len(f) for f in m.faces) == [3, 3, 3, 3]
    assert euler_characteristic(m) == 2


def test_sequence_input_matches_mapping_input():
    assert build_from_rotation([TRIANGLE[v] for v in range(3)]) == build_from_rotation(TRIANGLE)


def test_face_next_crosses_then_turns():
    m = build_from_rotation(K4_PLANAR)
    d = m.dart_of[(0, 1)]
    e = m.face_next(d)
    assert m.tail[e] == 1
    # the dart after 1->0 in 1's rotation is 1->2
    assert m.head[e] == 2


def test_torus_grid_euler_characteristic():
    m = build_from_rotation(qprq_rotation(3, 1, 4))
    assert euler_characteristic(m) == 0
    assert all(len(f) == 4 for f in m.faces)


@pytest.mark.parametrize(
    "rot, exc",
    [
        ({0: (1,), 1: ()}, InconsistentRotation),
        ({0: (1, 5), 1: (0,)}, InconsistentRotation),
        ({0: (1, 1, 2), 1: (0, 0, 2), 2: (0, 1)}, NonSimple),
        ({0: (0, 0, 1), 1: (0,)}, NonSimple),
        ({0: (1,), 1: (0,)}, DegenerateMap),
        ({0: (1, 2), 1: (2, 0), 2: (0, 1), 3: ()}, DegenerateMap),
    ],
)
def test_invalid_rotations_rejected(rot, exc):
    with pytest.raises(exc):
        build_from_rotation(rot)


def test_multigraph_allowed_when_requested():
    m = build_from_rotation({0: (1, 1), 1: (0, 0)}, simple=False, allow_degenerate=True)
    # a digon on the sphere: two faces of length 2
    assert sorted(len(f) for f in m.faces) == [2, 2]


def test_crossing_map_refuses_face_tracing():
    from o1tg.o1t import build_o1t
    from o1tg.quad_torus import build_qprq

    full = build_o1t(build_qprq(4, 0, 3)).full_map()
    with pytest.raises(CrossingEdgesPresent):
        trace_faces(full)


def test_rot_round_trip_is_canonical():
    m = build_from_rotation({0: (2, 1), 1: (0, 2), 2: (1, 0)})
    text = dumps_rot(m)
    assert text == "n 3\n0: 1 2\n1: 0 2\n2: 0 1\n"
    assert loads_rot(text) == m


@pytest.mark.parametrize(
    "text",
    ["", "0: 1 2\n", "n 2\n0: 1\n", "n 3\n0: 1 x\n1: 0\n2:\n", "n 1\n0 1\n", "n 2\n0: 1\n0: 1\n"],
)
def test_rot_parse_errors(text):
    with pytest.raises(ParseError):
        loads_rot(text)


def test_rot_ignores_comments_and_blank_lines():
    m = loads_rot("# a triangle\nn 3\n\n0: 1 2  # first\n1: 2 0\n2: 0 1\n")
    assert m == build_from_rotation(TRIANGLE)


def _random_rotation(seed: int, n: int, p: float) -> dict[int, tuple[int, ...]]:
    rng = random.Random(seed)
    nbrs: dict[int, list[int]] = {v: [] for v in range(n)}
    for v in range(1, n):
        u = rng.randrange(v)
        nbrs[u].append(v)
        nbrs[v].append(u)
    for u in range(n):
        for v in range(u + 2, n):
            if v not in nbrs[u] and rng.random() < p:
                nbrs[u].append(v)
                nbrs[v].append(u)
    for v in nbrs:
        rng.shuffle(nbrs[v])
    return {v: tuple(ns) for v, ns in nbrs.items()}


@given(st.integers(0, 10**6), st.integers(3, 12), st.floats(0.0, 0.8))
def test_face_orbits_partition_darts(seed, n, p):
    m = build_from_rotation(_random_rotation(seed, n, p))
    seen = sorted(d for f in m.faces for d in f.darts)
    assert seen == list(range(m.num_darts))
    assert sum(len(f) for f in m.faces) == 2 * m.num_edges


@given(st.integers(0, 10**6), st.integers(3, 12), st.floats(0.0, 0.8))
def test_euler_characteristic_is_even_and_at_most_two(seed, n, p):
    m = build_from_rotation(_random_rotation(seed, n, p))
    chi = euler_characteristic(m)
    assert chi <= 2 and chi % 2 == 0


@given(st.integers(0, 10**6), st.integers(3, 12), st.floats(0.0, 0.8))
def test_mirror_preserves_face_lengths(seed, n, p):
    m = build_from_rotation(_random_rotation(seed, n, p))
    assert sorted(map(len, m.faces)) == sorted(map(len, m.mirrored().faces))


@given(st.integers(0, 10**6), st.integers(3, 12), st.floats(0.0, 0.8))
def test_rot_text_round_trip(seed, n, p):
    m = build_from_rotation(_random_rotation(seed, n, p))
    back = loads_rot(dumps_rot(m))
    assert canonical_rotation(back) == canonical_rotation(m)
    assert degrees(back) == degrees(m)


@given(st.integers(0, 10**6), st.integers(3, 12))
def test_relabel_preserves_face_structure(seed, n):
    m = build_from_rotation(_random_rotation(seed, n, 0.4))
    perm = list(range(n))
    random.Random(seed).shuffle(perm)
    r = m.relabeled(dict(enumerate(perm)))
    assert sorted(map(len, r.faces)) == sorted(map(len, m.faces))
