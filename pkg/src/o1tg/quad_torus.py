"""Toroidal quadrangulations: the Q(p, r, q) family, vertex splits, isomorphism."""

from __future__ import annotations

import copy
import random
from dataclasses import dataclass, field
from typing import Any, Optional

from .embedded_map import EmbeddedMap, FaceWalk, build_from_rotation
from .errors import (
    AdjacentSplitNeighbors,
    Disconnected,
    NonSimple,
    NotFourRegular,
    NotQuadrangulation,
    ResultNonSimple,
)


@dataclass(frozen=True, eq=False)
class Quadrangulation:
    """A simple map on the torus in which every face has length 4.

    ``provenance`` is either ``{"kind": "qprq", "p", "r", "q"}`` or
    ``{"kind": "expansion", "base": <qprq provenance>, "moves": [...]}`` where a
    move is ``[v, a, b]`` for :func:`vertex_split` or ``{"insert": [f0, f1, f2, f3]}``
    for :func:`insert_quad_face`.
    """

    map: EmbeddedMap
    provenance: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ok, face = is_quadrangulation(self.map)
        if not ok:
            where = f" (face {list(face.vertices)})" if face is not None else ""
            raise NotQuadrangulation(f"map is not a toroidal quadrangulation{where}")

    @property
    def n(self) -> int:
        return self.map.num_vertices

    @property
    def faces(self) -> list[FaceWalk]:
        return self.map.faces

    def is_regular(self, k: int = 4) -> bool:
        return all(len(nb) == k for nb in self.map.rotation.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quadrangulation):
            return NotImplemented
        return self.map == other.map

    def __hash__(self) -> int:
        return hash(self.map)

    def __repr__(self) -> str:
        return f"Quadrangulation(V={self.n}, provenance={self.provenance})"


def qprq_vertex(i: int, j: int, q: int) -> int:
    return i * q + j


def qprq_rotation(p: int, r: int, q: int) -> dict[int, tuple[int, ...]]:
    """Rotation system of the p x q grid closed up with a seam shift of r.

    Vertex (i, j) gets label ``i*q + j``; its counterclockwise order is
    right, up, left, down, where "right" of the last column crosses the seam
    to (0, j + r) and "left" of column 0 comes back from (p - 1, j - r).
    """
    r %= q
    rot = {}
    for i in range(p):
        for j in range(q):
            right = (i + 1, j) if i < p - 1 else (0, (j + r) % q)
            left = (i - 1, j) if i > 0 else (p - 1, (j - r) % q)
            up = (i, (j + 1) % q)
            down = (i, (j - 1) % q)
            rot[qprq_vertex(i, j, q)] = tuple(qprq_vertex(a, b, q) for a, b in (right, up, left, down))
    return rot


def build_qprq(p: int, r: int, q: int) -> Quadrangulation:
    """The 4-regular quadrangulation Q(p, r, q).

    Raises:
        ValueError: parameters out of range.
        NonSimple: the construction produces a loop or a parallel edge
            (e.g. p = 1 with r in {0, 1, q - 1}, or p = 2 with r = 0).
    """
    if p < 1 or q < 3 or r < 0:
        raise ValueError(f"need p >= 1, r >= 0, q >= 3; got ({p}, {r}, {q})")
    r %= q
    m = build_from_rotation(qprq_rotation(p, r, q))
    return Quadrangulation(m, {"kind": "qprq", "p": p, "r": r, "q": q})


def is_quadrangulation(m: EmbeddedMap) -> tuple[bool, Optional[FaceWalk]]:
    """Check that ``m`` is a simple connected torus map with only 4-faces.

    Returns ``(verdict, first offending face)``; the face is ``None`` when the
    failure is not attributable to a single face (non-simple, disconnected or
    wrong Euler characteristic).
    """
    if m.crossing or not m.is_connected() or m.num_vertices == 0:
        return False, None
    for v, nbrs in m.rotation.items():
        if v in nbrs or len(set(nbrs)) != len(nbrs):
            return False, None
    for f in m.faces:
        if len(f) != 4:
            return False, f
    if m.num_vertices - m.num_edges + m.num_faces != 0:
        return False, None
    return True, None


def vertex_split(qd: Quadrangulation, v: int, a: int, b: int) -> Quadrangulation:
    """Split ``v`` along the non-consecutive neighbours ``a`` and ``b``.

    The neighbours strictly between ``a`` and ``b`` counterclockwise stay on
    ``v``; the remaining ones move to a new vertex labelled ``n``.  Both
    halves are joined to ``a`` and ``b``, creating the face ``a v b n``.
    """
    rot = {x: list(nb) for x, nb in qd.map.rotation.items()}
    nbrs = rot[v]
    if a == b or a not in nbrs or b not in nbrs:
        raise ValueError(f"{a} and {b} must be distinct neighbours of {v}")
    d = len(nbrs)
    ia, ib = nbrs.index(a), nbrs.index(b)
    if (ib - ia) % d in (1, d - 1):
        raise AdjacentSplitNeighbors(f"{a} and {b} are consecutive around {v}")
    arc1 = [nbrs[(ia + k) % d] for k in range(1, (ib - ia) % d)]
    arc2 = [nbrs[(ib + k) % d] for k in range(1, (ia - ib) % d)]

    w = max(rot) + 1
    rot[v] = [a, *arc1, b]
    rot[w] = [b, *arc2, a]
    for x in arc2:
        rot[x] = [w if y == v else y for y in rot[x]]
    ka = rot[a].index(v)
    rot[a][ka:ka + 1] = [v, w]
    kb = rot[b].index(v)
    rot[b][kb:kb + 1] = [w, v]

    try:
        m = build_from_rotation(rot)
    except NonSimple as exc:
        raise ResultNonSimple(str(exc)) from exc
    return Quadrangulation(m, _extend_provenance(qd.provenance, [v, a, b]))


def _extend_provenance(prov: dict[str, Any], move: Any) -> dict[str, Any]:
    prov = copy.deepcopy(prov)
    if prov.get("kind") != "expansion":
        prov = {"kind": "expansion", "base": prov, "moves": []}
    prov["moves"].append(move)
    return prov


def insert_quad_face(qd: Quadrangulation, face: tuple[int, int, int, int] | list[int]) -> Quadrangulation:
    """Place a new 4-cycle inside ``face`` and join its i-th vertex to the i-th corner.

    ``face`` lists the corners in face-walk order starting anywhere.  The old
    face becomes a disk bounded by a non-facial 4-cycle with four vertices of
    degree 3 inside.  New vertices are labelled ``n .. n + 3``.
    """
    qm = qd.map
    f = [int(x) for x in face]
    d0 = qm.dart_of.get((f[0], f[1]))
    if d0 is None:
        raise ValueError(f"{f[0]}-{f[1]} is not an edge")
    walk = qm.faces[qm.face_of[d0]].vertices
    if len(walk) != 4 or list(walk[walk.index(f[0]):] + walk[:walk.index(f[0])]) != f:
        raise ValueError(f"{f} is not a face walk")
    n0 = max(qm.rotation) + 1
    inner = [n0 + i for i in range(4)]
    base = {x: list(nb) for x, nb in qm.rotation.items()}
    for i in range(4):
        # in the walk f[i-1] -> f[i] -> f[i+1], f[i+1] follows f[i-1] around f[i]
        nb = base[f[i]]
        k = nb.index(f[i - 1])
        nb.insert(k + 1, inner[i])
    for flip in (False, True):
        rot = {x: list(nb) for x, nb in base.items()}
        for i in range(4):
            nxt, prv = inner[(i + 1) % 4], inner[i - 1]
            rot[inner[i]] = [f[i], prv, nxt] if flip else [f[i], nxt, prv]
        m = build_from_rotation(rot)
        ok, _ = is_quadrangulation(m)
        if ok:
            return Quadrangulation(m, _extend_provenance(qd.provenance, {"insert": f}))
    raise NotQuadrangulation(f"inserting into {f} did not give a quadrangulation")


def replay_provenance(prov: dict[str, Any]) -> Quadrangulation:
    """Rebuild a quadrangulation from its provenance record."""
    if prov.get("kind") == "qprq":
        return build_qprq(prov["p"], prov["r"], prov["q"])
    if prov.get("kind") != "expansion":
        raise ValueError(f"unknown provenance kind {prov.get('kind')!r}")
    qd = replay_provenance(prov["base"])
    for mv in prov["moves"]:
        if isinstance(mv, dict):
            qd = insert_quad_face(qd, mv["insert"])
        else:
            qd = vertex_split(qd, *mv)
    return qd


def random_split_move(qd: Quadrangulation, rng: random.Random, v: Optional[int] = None) -> tuple[int, int, int]:
    """Draw a valid ``(v, a, b)`` for :func:`vertex_split` (``v`` random unless given).

    Only vertices of degree >= 4 admit a split.
    """
    rot = qd.map.rotation
    if v is None:
        v = rng.choice([x for x in sorted(rot) if len(rot[x]) >= 4])
    nbrs = rot[v]
    d = len(nbrs)
    i = rng.randrange(d)
    k = rng.randrange(2, d - 1)
    return v, nbrs[i], nbrs[(i + k) % d]


# -- isomorphism -------------------------------------------------------------

def _invariants(m: EmbeddedMap) -> tuple:
    return (
        m.num_vertices,
        m.num_edges,
        sorted(len(nb) for nb in m.rotation.values()),
        sorted(len(f) for f in m.faces),
    )


def _extend(m1: EmbeddedMap, m2: EmbeddedMap, d0: int, e0: int, reverse: bool) -> Optional[dict[int, int]]:
    step2 = m2.rot_prev if reverse else m2.rot_next
    f = {d0: e0}
    used = {e0}
    stack = [d0]
    while stack:
        d = stack.pop()
        e = f[d]
        for x, y in ((m1.mate[d], m2.mate[e]), (m1.rot_next[d], step2[e])):
            if x in f:
                if f[x] != y:
                    return None
            else:
                if y in used:
                    return None
                f[x] = y
                used.add(y)
                stack.append(x)
    return f if len(f) == m1.num_darts else None


def find_map_isomorphism(m1: EmbeddedMap, m2: EmbeddedMap) -> Optional[tuple[dict[int, int], bool]]:
    """Dart bijection preserving the involution and the rotation (or its inverse).

    Returns ``(dart map, reversed)`` or ``None``.  Both maps must be connected.
    """
    if not (m1.is_connected() and m2.is_connected()):
        raise Disconnected("map isomorphism is only implemented for connected maps")
    if _invariants(m1) != _invariants(m2):
        return None
    if m1.num_darts == 0:
        return {}, False
    # root at a vertex of the rarest degree to keep the candidate list short
    counts: dict[int, int] = {}
    for nb in m1.rotation.values():
        counts[len(nb)] = counts.get(len(nb), 0) + 1
    root_deg = min(counts, key=lambda k: (counts[k], k))
    root_v = next(v for v in m1.vertices if len(m1.rotation[v]) == root_deg)
    d0 = m1.vertex_darts[root_v][0]
    for e0 in range(m2.num_darts):
        if len(m2.rotation[m2.tail[e0]]) != root_deg:
            continue
        for reverse in (False, True):
            f = _extend(m1, m2, d0, e0, reverse)
            if f is not None:
                return f, reverse
    return None


def maps_isomorphic(m1: EmbeddedMap, m2: EmbeddedMap) -> bool:
    return find_map_isomorphism(m1, m2) is not None


def is_qpr3(qd: Quadrangulation) -> Optional[tuple[int, int]]:
    """Return ``(p, r)`` with p >= 4 if ``qd`` is isomorphic to Q(p, r, 3)."""
    if not qd.is_regular(4):
        raise NotFourRegular("is_qpr3 expects a 4-regular quadrangulation")
    n = qd.n
    if n % 3 or n // 3 < 4:
        return None
    p = n // 3
    for r in range(3):
        if maps_isomorphic(qd.map, build_qprq(p, r, 3).map):
            return p, r
    return None
