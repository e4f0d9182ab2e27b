from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from o1tg.embedded_map import build_from_rotation
from o1tg.errors import AdjacentSplitNeighbors, NonSimple, NotFourRegular, NotQuadrangulation
from o1tg.quad_torus import (
    Quadrangulation,
    build_qprq,
    find_map_isomorphism,
    insert_quad_face,
    is_qpr3,
    is_quadrangulation,
    maps_isomorphic,
    random_split_move,
    replay_provenance,
    vertex_split,
)

SIMPLE_PARAMS = [(p, r, q) for p in range(3, 7) for q in (3, 4, 5) for r in range(q)]


def _nx(m) -> nx.Graph:
    return nx.Graph([(u, v) for u, v in m.edges()])


@pytest.mark.parametrize("p, r, q", SIMPLE_PARAMS)
def test_qprq_counts(p, r, q):
    qd = build_qprq(p, r, q)
    m = qd.map
    assert (m.num_vertices, m.num_edges, m.num_faces) == (p * q, 2 * p * q, p * q)
    assert qd.is_regular(4)


def test_qprq_labels_and_seam():
    m = build_qprq(4, 1, 3).map
    # vertex (i, j) = 3i + j; rotation is right, up, left, down
    assert m.rotation[4] == (7, 5, 1, 3)
    # right of (3, 2) crosses the seam to (0, (2 + 1) % 3) = 0
    assert m.rotation[11][0] == 0


@pytest.mark.parametrize("p, r, q", [(1, 0, 3), (1, 1, 4), (2, 0, 3)])
def test_degenerate_parameters_are_non_simple(p, r, q):
    with pytest.raises(NonSimple):
        build_qprq(p, r, q)


@pytest.mark.parametrize("args", [(0, 0, 3), (3, 0, 2), (3, -1, 3)])
def test_parameters_out_of_range(args):
    with pytest.raises(ValueError):
        build_qprq(*args)


def test_transposed_grid_is_isomorphic():
    assert maps_isomorphic(build_qprq(3, 0, 4).map, build_qprq(4, 0, 3).map)
    assert maps_isomorphic(build_qprq(5, 0, 3).map, build_qprq(3, 0, 5).map)


@pytest.mark.parametrize("r1, r2", [(0, 1), (0, 2)])
def test_different_seams_are_distinguished(r1, r2):
    a, b = build_qprq(4, r1, 3).map, build_qprq(4, r2, 3).map
    # networkx is an independent witness: non-isomorphic graphs give non-isomorphic maps
    if not nx.is_isomorphic(_nx(a), _nx(b)):
        assert not maps_isomorphic(a, b)


def test_is_qpr3_recognises_relabelled_copy():
    qd = build_qprq(5, 1, 3)
    perm = list(range(15))
    random.Random(7).shuffle(perm)
    relabelled = Quadrangulation(qd.map.relabeled(dict(enumerate(perm))))
    assert is_qpr3(relabelled) == (5, 1)
    # Q(3,0,4) is the transposed Q(4,0,3)
    assert is_qpr3(build_qprq(3, 0, 4)) == (4, 0)
    assert is_qpr3(build_qprq(4, 0, 4)) is None


def test_is_qpr3_needs_four_regular(q403):
    qd = vertex_split(build_qprq(4, 0, 3), 0, 3, 9)
    with pytest.raises(NotFourRegular):
        is_qpr3(qd)


def test_isomorphism_reports_orientation():
    m = build_qprq(4, 0, 3).map
    f, rev = find_map_isomorphism(m, m.mirrored())
    assert len(f) == m.num_darts
    assert isinstance(rev, bool)


def test_split_creates_new_face():
    qd = build_qprq(4, 0, 3)
    v, a, b = 0, 3, 9
    out = vertex_split(qd, v, a, b)
    w = qd.n
    assert out.n == qd.n + 1 and out.map.num_faces == qd.map.num_faces + 1
    assert set(out.map.rotation[v]) >= {a, b} and set(out.map.rotation[w]) >= {a, b}
    face_sets = {frozenset(f.vertices) for f in out.faces}
    assert frozenset({a, v, b, w}) in face_sets
    assert out.provenance["moves"] == [[0, 3, 9]]


def test_split_rejects_consecutive_neighbours():
    qd = build_qprq(4, 0, 3)
    nb = qd.map.rotation[0]
    with pytest.raises(AdjacentSplitNeighbors):
        vertex_split(qd, 0, nb[0], nb[1])
    with pytest.raises(ValueError):
        vertex_split(qd, 0, nb[0], 7)


def test_insert_adds_nested_cycle():
    qd = build_qprq(4, 0, 3)
    out = insert_quad_face(qd, [0, 3, 5, 2])
    assert out.n == 16 and out.map.num_faces == 16
    assert [len(out.map.rotation[x]) for x in range(12, 16)] == [3, 3, 3, 3]
    with pytest.raises(ValueError):
        insert_quad_face(qd, [0, 3, 4, 1])


def test_not_a_quadrangulation():
    tri = build_from_rotation({0: (1, 2), 1: (2, 0), 2: (0, 1)})
    ok, face = is_quadrangulation(tri)
    assert not ok and len(face) == 3
    with pytest.raises(NotQuadrangulation):
        Quadrangulation(tri)


def _random_expansion(seed: int, steps: int) -> Quadrangulation:
    rng = random.Random(seed)
    qd = build_qprq(rng.randint(3, 5), rng.randint(0, 2), rng.choice([3, 4]))
    for _ in range(steps):
        try:
            if rng.random() < 0.2:
                f = rng.choice(qd.faces)
                qd = insert_quad_face(qd, list(f.vertices))
            else:
                qd = vertex_split(qd, *random_split_move(qd, rng))
        except NonSimple:
            continue
    return qd


@given(st.integers(0, 10**6), st.integers(0, 6))
def test_expansions_stay_quadrangulations(seed, steps):
    qd = _random_expansion(seed, steps)
    m = qd.map
    assert is_quadrangulation(m)[0]
    assert m.num_vertices - m.num_edges + m.num_faces == 0
    assert m.num_edges == 2 * m.num_vertices
    assert min(len(nb) for nb in m.rotation.values()) >= 3


@given(st.integers(0, 10**6), st.integers(0, 6))
def test_provenance_replays_exactly(seed, steps):
    qd = _random_expansion(seed, steps)
    assert replay_provenance(qd.provenance).map.rotation == qd.map.rotation


@given(st.integers(0, 10**6), st.integers(0, 4))
def test_isomorphism_invariant_under_relabelling(seed, steps):
    qd = _random_expansion(seed, steps)
    perm = list(range(qd.n))
    random.Random(seed).shuffle(perm)
    assert maps_isomorphic(qd.map, qd.map.relabeled(dict(enumerate(perm))))


def test_transposition_is_an_explicit_isomorphism():
    # (i, j) of Q(4,0,3) goes to (j, i) of Q(3,0,4); faces map to faces
    a, b = build_qprq(4, 0, 3).map, build_qprq(3, 0, 4).map
    phi = {3 * i + j: 4 * j + i for i in range(4) for j in range(3)}
    assert {tuple(sorted((phi[u], phi[v]))) for u, v in a.edges()} == set(b.edges())
    fa = {frozenset(phi[x] for x in f.vertices) for f in a.faces}
    assert fa == {frozenset(f.vertices) for f in b.faces}
