from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from o1tg.embedded_map import build_from_rotation
from o1tg.errors import DiagonalCollision
from o1tg.o1t import build_o1t, induced_quad_subgraph, quadrangular_subgraph
from o1tg.quad_torus import Quadrangulation, build_qprq, random_split_move, vertex_split


def test_q403_is_eight_regular(q403):
    assert q403.n == 12 and q403.num_edges == 48
    assert q403.is_regular(8)
    assert len(q403.crossing_edges()) == 24
    assert quadrangular_subgraph(q403) is q403.quad


def test_diagonals_join_opposite_corners(q403):
    for v0, v1, v2, v3 in q403.crossing_pairs:
        assert v2 in q403.adjacency[v0] and v3 in q403.adjacency[v1]
        assert not q403.quad.map.has_edge(v0, v2)


def test_full_map_degrees_double(q404):
    full = q404.full_map()
    assert all(full.degree(v) == 8 for v in full.vertices)
    assert full.crossing == frozenset(q404.crossing_edges())


def test_k5_torus_diagonals_collide():
    # Q(1,2,5) is K5, so every diagonal is already an edge
    with pytest.raises(DiagonalCollision):
        build_o1t(build_qprq(1, 2, 5))
    # two faces of Q(2,2,4) share the diagonal 0-7
    with pytest.raises(DiagonalCollision):
        build_o1t(build_qprq(2, 2, 4))


def test_q303_gives_k9():
    # the 18 diagonals of the 3x3 grid are exactly the pairs differing in both coordinates
    g = build_o1t(build_qprq(3, 0, 3))
    assert g.num_edges == 36 and g.is_regular(8)


def test_labels_must_be_contiguous():
    m = build_qprq(4, 0, 3).map.relabeled({v: v + 1 for v in range(12)})
    with pytest.raises(ValueError):
        build_o1t(Quadrangulation(m))


def test_induced_quad_subgraph_keeps_order(q403):
    sub = induced_quad_subgraph(q403, [0, 1, 2, 3])
    assert sorted(sub.vertices) == [0, 1, 2, 3]
    for v in sub.vertices:
        assert set(sub.rotation[v]) <= {0, 1, 2, 3}


@given(st.integers(0, 10**6), st.integers(0, 6))
def test_counting_invariants(seed, steps):
    rng = random.Random(seed)
    qd = build_qprq(rng.randint(4, 6), rng.randint(0, 2), 3)
    for _ in range(steps):
        try:
            qd = vertex_split(qd, *random_split_move(qd, rng))
        except ValueError:
            continue
    try:
        g = build_o1t(qd)
    except DiagonalCollision:
        return
    assert g.num_edges == 4 * g.n
    for v in range(g.n):
        assert g.degree(v) == 2 * len(qd.map.rotation[v])
        assert g.degree(v) % 2 == 0
