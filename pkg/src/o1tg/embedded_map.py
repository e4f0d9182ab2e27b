"""Combinatorial maps: graphs with a rotation system.

A map is stored on *darts* (directed edge-ends).  Each vertex owns a cyclic,
counterclockwise list of outgoing darts; the involution ``mate`` pairs the
two darts of an edge.  Faces are the orbits of ``d -> rot_next[mate[d]]``:
cross the edge, then turn to the next dart counterclockwise.  This convention
is used everywhere in the package.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    CrossingEdgesPresent,
    DegenerateMap,
    Disconnected,
    InconsistentRotation,
    NonSimple,
    ParseError,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class FaceWalk:
    """One traced face orbit, as the darts in traversal order."""

    darts: tuple[int, ...]
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.darts)

    @property
    def length(self) -> int:
        return len(self.darts)

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def canonical(self) -> tuple[int, ...]:
        """Vertex sequence rotated to start at its smallest cyclic shift."""
        vs = self.vertices
        if not vs:
            return ()
        return min(vs[i:] + vs[:i] for i in range(len(vs)))


class EmbeddedMap:
    """A graph cellularly drawn on an orientable surface, given by rotations.

    Instances are immutable once built; use :func:`build_from_rotation`.
    Vertex labels are arbitrary non-negative integers.

    Attributes:
        rotation: vertex -> tuple of neighbours in counterclockwise order.
        tail, head: per-dart endpoints.
        mate: the edge involution on darts.
        rot_next, rot_prev: successor / predecessor around the tail vertex.
        crossing: edges (as sorted pairs) flagged as crossing.  Only maps that
            display a full optimal 1-embedding carry such flags.
    """

    __slots__ = (
        "rotation", "tail", "head", "mate", "rot_next", "rot_prev",
        "vertex_darts", "crossing", "_dart_of", "_faces", "_face_of",
    )

    def __init__(
        self,
        rotation: Mapping[int, Sequence[int]],
        *,
        simple: bool = True,
        allow_degenerate: bool = False,
        crossing: Iterable[Edge] = (),
    ) -> None:
        rot = {int(v): tuple(int(u) for u in nbrs) for v, nbrs in rotation.items()}
        _check_consistent(rot)
        if simple:
            _check_simple(rot)
        if not allow_degenerate:
            if len(rot) <= 2:
                raise DegenerateMap(f"map needs at least 3 vertices, got {len(rot)}")
            isolated = [v for v, nbrs in rot.items() if not nbrs]
            if isolated:
                raise DegenerateMap(f"vertex {isolated[0]} has no incident edges")

        tail: list[int] = []
        head: list[int] = []
        rot_next: list[int] = []
        rot_prev: list[int] = []
        vertex_darts: dict[int, tuple[int, ...]] = {}
        for v in sorted(rot):
            nbrs = rot[v]
            first = len(tail)
            k = len(nbrs)
            for i, u in enumerate(nbrs):
                tail.append(v)
                head.append(u)
                rot_next.append(first + (i + 1) % k)
                rot_prev.append(first + (i - 1) % k)
            vertex_darts[v] = tuple(range(first, first + k))

        # Pair the occurrences of each vertex pair.  Parallel darts are paired
        # in opposite order (k-th out of u with the k-th from last out of v),
        # which is how a digon sits in the plane; loops pair consecutively.
        occ: dict[Edge, list[int]] = defaultdict(list)
        for d, (t, h) in enumerate(zip(tail, head)):
            occ[(t, h)].append(d)
        mate = [-1] * len(tail)
        for (t, h), ds in occ.items():
            if t == h:
                for a, b in zip(ds[0::2], ds[1::2]):
                    mate[a], mate[b] = b, a
            elif t < h:
                back = occ[(h, t)]
                for a, b in zip(ds, reversed(back)):
                    mate[a], mate[b] = b, a

        self.rotation = rot
        self.tail = tuple(tail)
        self.head = tuple(head)
        self.mate = tuple(mate)
        self.rot_next = tuple(rot_next)
        self.rot_prev = tuple(rot_prev)
        self.vertex_darts = vertex_darts
        self.crossing = frozenset(_norm(e) for e in crossing)
        self._dart_of = None
        self._faces = None
        self._face_of = None

    # -- basic queries -------------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        return sorted(self.rotation)

    @property
    def num_vertices(self) -> int:
        return len(self.rotation)

    @property
    def num_darts(self) -> int:
        return len(self.tail)

    @property
    def num_edges(self) -> int:
        return len(self.tail) // 2

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotation[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.dart_of

    def edges(self) -> list[Edge]:
        """Sorted list of edges as ``(min, max)`` pairs (one per dart pair)."""
        return sorted(_norm((self.tail[d], self.head[d])) for d in range(self.num_darts) if d < self.mate[d])

    @property
    def dart_of(self) -> dict[Edge, int]:
        """``(u, v) -> dart`` lookup; meaningful for simple maps only."""
        if self._dart_of is None:
            self._dart_of = {(t, h): d for d, (t, h) in enumerate(zip(self.tail, self.head))}
        return self._dart_of

    def face_next(self, d: int) -> int:
        return self.rot_next[self.mate[d]]

    def is_connected(self) -> bool:
        verts = self.vertices
        if not verts:
            return True
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            v = stack.pop()
            for u in self.rotation[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(verts)

    # -- faces ---------------------------------------------------------------

    @property
    def faces(self) -> list[FaceWalk]:
        if self._faces is None:
            faces: list[FaceWalk] = []
            face_of = [-1] * self.num_darts
            for start in range(self.num_darts):
                if face_of[start] != -1:
                    continue
                walk = []
                d = start
                while face_of[d] == -1:
                    face_of[d] = len(faces)
                    walk.append(d)
                    d = self.face_next(d)
                faces.append(FaceWalk(tuple(walk), tuple(self.tail[x] for x in walk)))
            self._faces = faces
            self._face_of = tuple(face_of)
        return self._faces

    @property
    def face_of(self) -> tuple[int, ...]:
        """Index (into :attr:`faces`) of the face traced through each dart."""
        self.faces
        return self._face_of

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    # -- derived maps --------------------------------------------------------

    def mirrored(self) -> EmbeddedMap:
        """The same graph with every rotation reversed (orientation flip)."""
        return EmbeddedMap({v: tuple(reversed(n)) for v, n in self.rotation.items()},
                           simple=False, allow_degenerate=True)

    def relabeled(self, mapping: Mapping[int, int]) -> EmbeddedMap:
        return EmbeddedMap({mapping[v]: tuple(mapping[u] for u in n) for v, n in self.rotation.items()},
                           simple=False, allow_degenerate=True)

    def restricted(self, keep: Iterable[int], edges: Iterable[Edge] | None = None) -> EmbeddedMap:
        """Submap on ``keep`` with inherited cyclic orders.

        Without ``edges`` this is the induced submap; with ``edges`` only the
        listed edges (which must join kept vertices) survive.
        """
        keep = set(keep)
        allowed = None if edges is None else {_norm(e) for e in edges}
        rot = {}
        for v in keep:
            rot[v] = tuple(u for u in self.rotation[v]
                           if u in keep and (allowed is None or _norm((u, v)) in allowed))
        return EmbeddedMap(rot, simple=False, allow_degenerate=True)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EmbeddedMap):
            return NotImplemented
        return canonical_rotation(self) == canonical_rotation(other) and self.crossing == other.crossing

    def __hash__(self) -> int:
        return hash(tuple(sorted(canonical_rotation(self).items())))

    def __repr__(self) -> str:
        return f"EmbeddedMap(V={self.num_vertices}, E={self.num_edges})"


def _norm(e: Sequence[int]) -> Edge:
    u, v = e
    return (u, v) if u <= v else (v, u)


def _check_consistent(rot: dict[int, tuple[int, ...]]) -> None:
    for v, nbrs in rot.items():
        for u in nbrs:
            if u not in rot:
                raise InconsistentRotation(f"vertex {v} lists unknown neighbour {u}")
    counts = {v: Counter(nbrs) for v, nbrs in rot.items()}
    for v, c in counts.items():
        for u, k in c.items():
            if u == v:
                if k % 2:
                    raise InconsistentRotation(f"loop at {v} listed an odd number of times")
            elif counts[u][v] != k:
                raise InconsistentRotation(f"{v} lists {u} {k} times but {u} lists {v} {counts[u][v]} times")


def _check_simple(rot: dict[int, tuple[int, ...]]) -> None:
    for v, nbrs in rot.items():
        if v in nbrs:
            raise NonSimple(f"loop at vertex {v}")
        if len(set(nbrs)) != len(nbrs):
            dup = next(u for u, k in Counter(nbrs).items() if k > 1)
            raise NonSimple(f"parallel edges between {v} and {dup}")


# -- public operations -------------------------------------------------------

def build_from_rotation(
    rotation: Mapping[int, Sequence[int]] | Sequence[Sequence[int]],
    *,
    simple: bool = True,
    allow_degenerate: bool = False,
) -> EmbeddedMap:
    """Build and validate a map from per-vertex counterclockwise neighbour lists.

    ``rotation`` may be a mapping or a sequence indexed by vertex.  Pass
    ``simple=False`` to accept loops and parallel edges (used while rejection
    sampling); such maps must not be handed to the graph algorithms.

    Raises:
        InconsistentRotation: adjacency lists disagree.
        NonSimple: a loop or parallel edge, unless ``simple`` is False.
        DegenerateMap: fewer than three vertices or an isolated vertex.
    """
    if not isinstance(rotation, Mapping):
        rotation = dict(enumerate(rotation))
    return EmbeddedMap(rotation, simple=simple, allow_degenerate=allow_degenerate)


def trace_faces(m: EmbeddedMap) -> list[FaceWalk]:
    if m.crossing:
        raise CrossingEdgesPresent("face tracing is defined on crossing-free maps only")
    return list(m.faces)


def euler_characteristic(m: EmbeddedMap) -> int:
    if not m.is_connected():
        raise Disconnected("Euler characteristic needs a connected map")
    return m.num_vertices - m.num_edges + len(trace_faces(m))


def degrees(m: EmbeddedMap) -> Counter[int]:
    """Multiset of vertex degrees, as ``Counter(degree -> count)``."""
    return Counter(len(n) for n in m.rotation.values())


def canonical_rotation(m: EmbeddedMap) -> dict[int, tuple[int, ...]]:
    """Rotation with every cyclic list started at its smallest neighbour."""
    out = {}
    for v in sorted(m.rotation):
        n = m.rotation[v]
        if n:
            i = n.index(min(n))
            n = n[i:] + n[:i]
        out[v] = n
    return out


# -- "rot v1" text format ----------------------------------------------------

def dumps_rot(m: EmbeddedMap) -> str:
    rot = canonical_rotation(m)
    lines = [f"n {len(rot)}"]
    for v, nbrs in rot.items():
        lines.append(f"{v}: " + " ".join(map(str, nbrs)) if nbrs else f"{v}:")
    return "\n".join(lines) + "\n"


def parse_rot_lines(lines: Iterable[str]) -> dict[int, tuple[int, ...]]:
    count = None
    rot: dict[int, tuple[int, ...]] = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if count is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
                raise ParseError(f"line {lineno}: expected 'n <count>'")
            count = int(parts[1])
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"line {lineno}: expected '<id>: <nbr> ...'")
        try:
            v = int(head)
            nbrs = tuple(int(x) for x in rest.split())
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if v in rot:
            raise ParseError(f"line {lineno}: vertex {v} listed twice")
        rot[v] = nbrs
    if count is None:
        raise ParseError("missing 'n <count>' header")
    if count != len(rot):
        raise ParseError(f"header announces {count} vertices, found {len(rot)}")
    return rot


def loads_rot(text: str, **kwargs) -> EmbeddedMap:
    rot = parse_rot_lines(text.splitlines())
    try:
        return build_from_rotation(rot, **kwargs)
    except (InconsistentRotation, NonSimple, DegenerateMap) as exc:
        raise ParseError(str(exc)) from exc
