"""Cycles on the torus: homology labels, regions of torus minus a subgraph, disks.

Everything here runs on the quadrangulation Q(G).  Homology is computed from
a tree-cotree decomposition: primal spanning-tree edges get label (0, 0), the
two leftover edges get (1, 0) and (0, 1), and the dual-tree edges are solved
so that every face boundary sums to zero.  The resulting basis depends on the
instance, so callers should only ask basis-free questions (zero?  equal up to
sign?).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Union

from .embedded_map import Edge, EmbeddedMap, FaceWalk
from .errors import AmbiguousDisk, InternalInvariant, NoDiskSide, NotClosed, NotSimpleCycle
from .o1t import OptimalOneEmbedding
from .quad_torus import Quadrangulation

Host = Union[OptimalOneEmbedding, Quadrangulation]


def _quad(host: Host) -> Quadrangulation:
    return host.quad if isinstance(host, OptimalOneEmbedding) else host


class HomologyClass(NamedTuple):
    a: int
    b: int

    def __add__(self, other):  # type: ignore[override]
        return HomologyClass(self.a + other[0], self.b + other[1])

    def __neg__(self) -> HomologyClass:
        return HomologyClass(-self.a, -self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_primitive(self) -> bool:
        return math.gcd(abs(self.a), abs(self.b)) == 1


ZERO = HomologyClass(0, 0)


@dataclass(frozen=True)
class HomologyLabels:
    """Per-dart homology labels of one quadrangulation (read-only, shareable)."""

    quad: Quadrangulation
    labels: tuple[HomologyClass, ...]
    generators: tuple[Edge, Edge]

    def of_dart(self, d: int) -> HomologyClass:
        return self.labels[d]

    def of_edge(self, u: int, v: int) -> HomologyClass:
        return self.labels[self.quad.map.dart_of[(u, v)]]


def homology_labels(qd: Host) -> HomologyLabels:
    """Tree-cotree homology labels for every oriented edge of Q(G)."""
    qd = _quad(qd)
    m = qd.map
    nd = m.num_darts
    if not m.is_connected():
        raise InternalInvariant("homology labels need a connected map")

    # primal BFS spanning tree, recorded as darts (both halves)
    tree = [False] * nd
    root = m.vertices[0]
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for d in m.vertex_darts[v]:
            u = m.head[d]
            if u not in seen:
                seen.add(u)
                tree[d] = tree[m.mate[d]] = True
                queue.append(u)

    # dual BFS spanning tree over the remaining edges
    face_of = m.face_of
    nf = m.num_faces
    parent_dart = [-1] * nf  # dart on the child face's boundary crossing to its parent
    cotree = [False] * nd
    order = [0]
    reached = [False] * nf
    reached[0] = True
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for d in m.faces[f].darts:
            if tree[d]:
                continue
            e = m.mate[d]
            g = face_of[e]
            if not reached[g]:
                reached[g] = True
                cotree[d] = cotree[e] = True
                parent_dart[g] = e
                order.append(g)
                queue.append(g)

    leftover = [d for d in range(nd) if d < m.mate[d] and not tree[d] and not cotree[d]]
    if len(leftover) != 2:
        raise InternalInvariant(f"expected 2 leftover edges on the torus, found {len(leftover)}")

    labels: list[Optional[HomologyClass]] = [None] * nd
    for d in range(nd):
        if tree[d]:
            labels[d] = ZERO
    for d, cls in zip(leftover, (HomologyClass(1, 0), HomologyClass(0, 1))):
        labels[d] = cls
        labels[m.mate[d]] = -cls

    for f in reversed(order[1:]):
        pd = parent_dart[f]
        total = ZERO
        for d in m.faces[f].darts:
            if d != pd:
                if labels[d] is None:
                    raise InternalInvariant(f"face {f} has an unlabelled dart {d} before its parent edge")
                total = total + labels[d]
        labels[pd] = -total
        labels[m.mate[pd]] = total

    for f in m.faces:
        total = ZERO
        for d in f.darts:
            total = total + labels[d]
        if not total.is_zero():
            raise InternalInvariant(f"face {f.vertices} sums to {tuple(total)}")

    gens = tuple((m.tail[d], m.head[d]) for d in leftover)
    return HomologyLabels(qd, tuple(labels), gens)  # type: ignore[arg-type]


def _closed_vertices(c: Sequence[int]) -> list[int]:
    c = list(c)
    if len(c) > 1 and c[0] == c[-1]:
        c.pop()
    return c


def cycle_class(labels: HomologyLabels, c: Sequence[int]) -> HomologyClass:
    """Homology class of the closed walk visiting ``c`` (last vertex joins the first)."""
    c = _closed_vertices(c)
    if len(c) < 2:
        raise NotClosed("a closed walk needs at least two vertices")
    dart_of = labels.quad.map.dart_of
    total = ZERO
    for u, v in zip(c, c[1:] + c[:1]):
        d = dart_of.get((u, v))
        if d is None:
            raise NotClosed(f"{u} and {v} are not adjacent in Q(G)")
        total = total + labels.labels[d]
    return total


def _require_simple(c: Sequence[int]) -> list[int]:
    c = _closed_vertices(c)
    if len(c) < 3 or len(set(c)) != len(c):
        raise NotSimpleCycle(f"{c} is not a simple cycle")
    return c


def is_trivial_cycle(labels: HomologyLabels, c: Sequence[int]) -> bool:
    return cycle_class(labels, _require_simple(c)).is_zero()


def freely_homotopic(labels: HomologyLabels, c1: Sequence[int], c2: Sequence[int]) -> bool:
    """Simple cycles on the torus are freely homotopic iff their classes agree up to sign."""
    h1 = cycle_class(labels, _require_simple(c1))
    h2 = cycle_class(labels, _require_simple(c2))
    return h1 == h2 or h1 == -h2


# -- regions -----------------------------------------------------------------

class Subgraph(NamedTuple):
    vertices: frozenset[int]
    edges: frozenset[Edge]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def cycle_subgraph(c: Sequence[int]) -> Subgraph:
    c = _closed_vertices(c)
    return Subgraph(frozenset(c), frozenset(_norm(u, v) for u, v in zip(c, c[1:] + c[:1])))


def as_subgraph(k: Union[EmbeddedMap, Subgraph, tuple]) -> Subgraph:
    if isinstance(k, EmbeddedMap):
        return Subgraph(frozenset(k.vertices), frozenset(k.edges()))
    verts, edges = k
    return Subgraph(frozenset(verts), frozenset(_norm(u, v) for u, v in edges))


@dataclass(frozen=True)
class Region:
    """One connected component of the torus minus a subgraph K."""

    id: int
    faces: tuple[int, ...]
    boundary_walks: tuple[FaceWalk, ...]
    interior_vertices: tuple[int, ...]
    interior_edge_count: int

    @property
    def size(self) -> int:
        """Total length of the boundary walks (edges seen twice count twice)."""
        return sum(len(w) for w in self.boundary_walks)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @property
    def euler_char(self) -> int:
        return len(self.interior_vertices) - self.interior_edge_count + len(self.faces)

    @property
    def is_two_cell(self) -> bool:
        return self.euler_char == 1 and len(self.boundary_walks) == 1

    @property
    def boundary_vertices(self) -> frozenset[int]:
        return frozenset(v for w in self.boundary_walks for v in w.vertices)

    def summary(self) -> dict:
        return {
            "size": self.size,
            "walks": [list(w.vertices) for w in self.boundary_walks],
            "interior_vertices": len(self.interior_vertices),
            "faces": self.face_count,
            "euler_char": self.euler_char,
            "two_cell": self.is_two_cell,
        }


@dataclass(frozen=True)
class RegionDecomposition:
    subgraph: Subgraph
    regions: tuple[Region, ...]
    face_region: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.regions)

    def __iter__(self) -> Iterator[Region]:
        return iter(self.regions)

    def region_of_vertex(self, v: int) -> Optional[int]:
        for r in self.regions:
            if v in r.interior_vertices:
                return r.id
        return None


def regions(host: Host, k: Union[EmbeddedMap, Subgraph, tuple]) -> RegionDecomposition:
    """Decompose the torus minus ``k`` (a subgraph of Q(G)) into regions."""
    qm = _quad(host).map
    sub = as_subgraph(k)
    kv, ke = sub.vertices, sub.edges
    for e in ke:
        if e not in qm.dart_of and (e[1], e[0]) not in qm.dart_of:
            raise ValueError(f"edge {e} is not an edge of Q(G)")

    nf = qm.num_faces
    face_of = qm.face_of
    parent = list(range(nf))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    in_k = [False] * qm.num_darts
    interior_edges = []
    for d in range(qm.num_darts):
        e = qm.mate[d]
        if d > e:
            continue
        if _norm(qm.tail[d], qm.head[d]) in ke:
            in_k[d] = in_k[e] = True
        else:
            interior_edges.append(d)
            a, b = find(face_of[d]), find(face_of[e])
            if a != b:
                parent[max(a, b)] = min(a, b)

    roots = sorted({find(f) for f in range(nf)})
    rid = {r: i for i, r in enumerate(roots)}
    face_region = tuple(rid[find(f)] for f in range(nf))

    faces_by: list[list[int]] = [[] for _ in roots]
    for f, r in enumerate(face_region):
        faces_by[r].append(f)
    verts_by: list[list[int]] = [[] for _ in roots]
    for v in qm.vertices:
        if v not in kv:
            verts_by[face_region[face_of[qm.vertex_darts[v][0]]]].append(v)
    edges_by = [0] * len(roots)
    for d in interior_edges:
        edges_by[face_region[face_of[d]]] += 1

    # K's own rotation: the next K-dart counterclockwise at the same vertex
    k_next = {}
    for v in kv:
        ds = [d for d in qm.vertex_darts[v] if in_k[d]]
        for i, d in enumerate(ds):
            k_next[d] = ds[(i + 1) % len(ds)]
    walks_by: list[list[FaceWalk]] = [[] for _ in roots]
    done = set()
    for d in sorted(k_next):
        if d in done:
            continue
        walk = []
        x = d
        while x not in done:
            done.add(x)
            walk.append(x)
            x = k_next[qm.mate[x]]
        walks_by[face_region[face_of[d]]].append(FaceWalk(tuple(walk), tuple(qm.tail[y] for y in walk)))
    for v in sorted(kv):
        if not any(in_k[d] for d in qm.vertex_darts[v]):
            walks_by[face_region[face_of[qm.vertex_darts[v][0]]]].append(FaceWalk((), (v,)))

    regs = tuple(
        Region(i, tuple(faces_by[i]), tuple(walks_by[i]), tuple(verts_by[i]), edges_by[i])
        for i in range(len(roots))
    )
    return RegionDecomposition(sub, regs, face_region)


def disk_interior(host: Host, c: Sequence[int]) -> tuple[int, int]:
    """``(interior vertex count, region id)`` of the disk bounded by a trivial cycle."""
    c = _require_simple(c)
    dec = regions(host, cycle_subgraph(c))
    disks = [r for r in dec.regions if r.is_two_cell]
    if not disks:
        raise NoDiskSide(f"cycle {c} bounds no disk")
    if len(disks) > 1:
        raise AmbiguousDisk(f"both sides of cycle {c} are disks")
    return len(disks[0].interior_vertices), disks[0].id


def separates_torus(host: Host, c: Sequence[int]) -> bool:
    """Whether cutting along ``c`` disconnects the faces (flood fill, no homology)."""
    return len(regions(host, cycle_subgraph(_require_simple(c)))) > 1


# -- cycle enumeration -------------------------------------------------------

def simple_cycles(m: EmbeddedMap, max_len: int, min_len: int = 3) -> Iterator[tuple[int, ...]]:
    """All simple cycles with ``min_len <= length <= max_len``, each once.

    A cycle is reported starting at its smallest vertex, in the direction
    whose second vertex is smaller than its last.
    """
    rot = m.rotation
    for s in sorted(rot):
        path = [s]
        on_path = {s}

        def dfs(v: int) -> Iterator[tuple[int, ...]]:
            for u in rot[v]:
                if u == s:
                    if min_len <= len(path) and len(path) >= 3 and path[1] < path[-1]:
                        yield tuple(path)
                elif u > s and u not in on_path and len(path) < max_len:
                    path.append(u)
                    on_path.add(u)
                    yield from dfs(u)
                    path.pop()
                    on_path.discard(u)

        yield from dfs(s)


@dataclass(frozen=True)
class BarrierCycle:
    cycle: tuple[int, ...]
    region: int
    interior_count: int

    def to_json(self) -> dict:
        return {"cycle": list(self.cycle), "region": self.region, "interior_vertices": self.interior_count}


def barrier_cycles(host: Host, k: int = 4, labels: Optional[HomologyLabels] = None) -> list[BarrierCycle]:
    """Trivial cycles of Q(G) of length <= k whose disk holds an odd number of vertices."""
    qd = _quad(host)
    labels = labels or homology_labels(qd)
    out = []
    for c in simple_cycles(qd.map, k, min_len=4):
        if not cycle_class(labels, c).is_zero():
            continue
        count, rid = disk_interior(qd, c)
        if count % 2 == 1:
            out.append(BarrierCycle(c, rid, count))
    return out


def faces_as_edge_sets(qd: Host) -> set[frozenset[Edge]]:
    qm = _quad(qd).map
    return {frozenset(_norm(qm.tail[d], qm.head[d]) for d in f.darts) for f in qm.faces}


def edge_set(c: Iterable[int]) -> frozenset[Edge]:
    return cycle_subgraph(list(c)).edges
