"""Optimal 1-embedded toroidal graphs built from quadrangulations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .embedded_map import Edge, EmbeddedMap
from .errors import DiagonalCollision
from .quad_torus import Quadrangulation


@dataclass(frozen=True, eq=False)
class OptimalOneEmbedding:
    """A quadrangulation together with both diagonals of every face.

    The diagonals are the crossing edges; they are kept as per-face records
    rather than in a rotation system.  ``adjacency[v]`` is the neighbourhood of
    ``v`` in the full graph G.  Vertex labels are ``0 .. n-1``.
    """

    quad: Quadrangulation
    crossing_pairs: tuple[tuple[int, int, int, int], ...]
    adjacency: tuple[frozenset[int], ...]

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[Edge]:
        return sorted((u, v) for u, nb in enumerate(self.adjacency) for v in nb if u < v)

    def noncrossing_edges(self) -> list[Edge]:
        return self.quad.map.edges()

    def crossing_edges(self) -> list[Edge]:
        out = []
        for v0, v1, v2, v3 in self.crossing_pairs:
            out.append((min(v0, v2), max(v0, v2)))
            out.append((min(v1, v3), max(v1, v3)))
        return sorted(out)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_regular(self, k: int = 8) -> bool:
        return all(len(a) == k for a in self.adjacency)

    def full_map(self) -> EmbeddedMap:
        """G with every diagonal placed in the rotation inside its face corner.

        The diagonals are flagged as crossing, so face tracing refuses this map;
        it exists for degree queries and serialization of the drawing.
        """
        qm = self.quad.map
        rot: dict[int, list[int]] = {}
        for v in qm.vertices:
            seq: list[int] = []
            for d in qm.vertex_darts[v]:
                seq.append(qm.head[d])
                # the corner after dart d at v belongs to the face traced
                # through mate(d) = (u -> v), which continues v -> w -> x
                f = qm.face_next(qm.face_next(qm.mate[d]))
                seq.append(qm.head[f])
            rot[v] = seq
        return EmbeddedMap(rot, crossing=self.crossing_edges())

    def __repr__(self) -> str:
        return f"OptimalOneEmbedding(V={self.n}, E={self.num_edges})"


def build_o1t(qd: Quadrangulation) -> OptimalOneEmbedding:
    """Add the crossing diagonal pair to every face of ``qd``.

    Raises:
        DiagonalCollision: a diagonal is a loop or duplicates an edge of ``qd``
            or another face's diagonal, i.e. ``qd`` is not polyhedral.
    """
    qm = qd.map
    verts = qm.vertices
    if verts != list(range(len(verts))):
        raise ValueError("quadrangulation vertices must be labelled 0..n-1")
    adj = [set(qm.rotation[v]) for v in verts]
    pairs = []
    seen: set[Edge] = set()
    for f in qm.faces:
        v0, v1, v2, v3 = f.vertices
        for a, b in ((v0, v2), (v1, v3)):
            e = (min(a, b), max(a, b))
            if a == b:
                raise DiagonalCollision(f"face {f.vertices} has a repeated vertex {a}")
            if b in adj[a] and e not in seen:
                raise DiagonalCollision(f"diagonal {e} of face {f.vertices} is an edge of the quadrangulation")
            if e in seen:
                raise DiagonalCollision(f"diagonal {e} is shared by two faces")
            seen.add(e)
            adj[a].add(b)
            adj[b].add(a)
        pairs.append((v0, v1, v2, v3))
    g = OptimalOneEmbedding(qd, tuple(pairs), tuple(frozenset(a) for a in adj))
    if g.num_edges != 4 * g.n:
        raise DiagonalCollision(f"|E| = {g.num_edges} != 4|V| = {4 * g.n}")
    return g


def quadrangular_subgraph(g: OptimalOneEmbedding) -> Quadrangulation:
    return g.quad


def induced_quad_subgraph(g: OptimalOneEmbedding | Quadrangulation, s: Iterable[int]) -> EmbeddedMap:
    """Q(G)[S] with the cyclic orders inherited from Q(G); may be empty or disconnected."""
    qd = g.quad if isinstance(g, OptimalOneEmbedding) else g
    return qd.map.restricted(s)
