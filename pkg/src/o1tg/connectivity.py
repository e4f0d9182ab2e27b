"""Vertex connectivity, small-cut enumeration and the structural classifier."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Optional, Sequence, Union

from .embedded_map import EmbeddedMap
from .errors import Disconnected, TheoremViolation, TooLarge
from .o1t import OptimalOneEmbedding, induced_quad_subgraph
from .quad_torus import is_qpr3
from .topology import (
    HomologyLabels,
    cycle_class,
    faces_as_edge_sets,
    edge_set,
    homology_labels,
    regions,
    simple_cycles,
)

Adjacency = Sequence[Sequence[int]]
GraphLike = Union[OptimalOneEmbedding, EmbeddedMap, Adjacency]

DEFAULT_CUT_BUDGET = 5_000_000


def as_adjacency(g: GraphLike) -> list[frozenset[int]]:
    """Adjacency lists indexed ``0..n-1`` for any of the accepted graph forms."""
    if isinstance(g, OptimalOneEmbedding):
        return list(g.adjacency)
    if isinstance(g, EmbeddedMap):
        verts = g.vertices
        if verts != list(range(len(verts))):
            raise ValueError("map vertices must be labelled 0..n-1")
        return [frozenset(g.rotation[v]) for v in verts]
    return [frozenset(nb) for nb in g]


def _masks(adj: Sequence[frozenset[int]]) -> list[int]:
    out = []
    for nb in adj:
        m = 0
        for u in nb:
            m |= 1 << u
        out.append(m)
    return out


def components_mask(masks: Sequence[int], alive: int) -> list[int]:
    """Connected components (as bitmasks) of the subgraph induced on ``alive``."""
    comps = []
    rest = alive
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            new = masks[b.bit_length() - 1] & alive & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def is_connected(g: GraphLike) -> bool:
    adj = as_adjacency(g)
    if not adj:
        return True
    return len(components_mask(_masks(adj), (1 << len(adj)) - 1)) == 1


# -- max-flow vertex connectivity ---------------------------------------------

def local_vertex_cut(adj: Sequence[frozenset[int]], s: int, t: int, cutoff: Optional[int] = None) -> tuple[int, set[int]]:
    """Maximum number of internally disjoint s-t paths and a minimum s-t vertex cut.

    ``s`` and ``t`` must be non-adjacent.  Vertex v is split into ``2v``
    (in) and ``2v + 1`` (out) joined by a unit arc; graph edges become
    uncapacitated arcs out -> in.  With ``cutoff`` the search stops once that
    many paths are found, and the returned cut is then empty.
    """
    if t in adj[s]:
        raise ValueError(f"{s} and {t} are adjacent")
    n = len(adj)
    big = n + 1
    cap: list[dict[int, int]] = [dict() for _ in range(2 * n)]
    for v in range(n):
        cap[2 * v][2 * v + 1] = big if v in (s, t) else 1
        cap[2 * v + 1].setdefault(2 * v, 0)
        for u in adj[v]:
            cap[2 * v + 1][2 * u] = big
            cap[2 * u].setdefault(2 * v + 1, 0)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while cutoff is None or flow < cutoff:
        prev = {source: source}
        queue = deque([source])
        while queue and sink not in prev:
            x = queue.popleft()
            for y, c in cap[x].items():
                if c > 0 and y not in prev:
                    prev[y] = x
                    queue.append(y)
        if sink not in prev:
            cut = {v for v in range(n) if 2 * v in prev and 2 * v + 1 not in prev}
            return flow, cut
        y = sink
        while y != source:
            x = prev[y]
            cap[x][y] -= 1
            cap[y][x] += 1
            y = x
        flow += 1
    return flow, set()


def minimum_vertex_cut(g: GraphLike) -> tuple[int, Optional[set[int]]]:
    """``(kappa, a minimum cut)``; the cut is ``None`` for complete graphs.

    Let v have minimum degree.  A minimum cut either misses v, and then
    separates v from some non-neighbour, or contains v, and then separates
    two non-adjacent neighbours of v.
    """
    adj = as_adjacency(g)
    n = len(adj)
    if n < 2:
        raise ValueError("connectivity needs at least two vertices")
    if not is_connected(adj):
        raise Disconnected("graph is disconnected")
    if all(len(nb) == n - 1 for nb in adj):
        return n - 1, None
    v = min(range(n), key=lambda x: (len(adj[x]), x))
    best = n - 1
    best_cut: Optional[set[int]] = None
    pairs = [(v, w) for w in range(n) if w != v and w not in adj[v]]
    nbrs = sorted(adj[v])
    pairs += [(x, y) for x, y in combinations(nbrs, 2) if y not in adj[x]]
    for s, t in pairs:
        k, cut = local_vertex_cut(adj, s, t, cutoff=best)
        if k < best:
            best, best_cut = k, cut
    return best, best_cut


def vertex_connectivity(g: GraphLike) -> int:
    return minimum_vertex_cut(g)[0]


# -- cut enumeration ---------------------------------------------------------

@dataclass
class CutWitness:
    vertices: tuple[int, ...]
    components: list[tuple[int, ...]]
    minimal: bool
    regions: Optional[list[dict[str, Any]]] = None

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def component_count(self) -> int:
        return len(self.components)

    @property
    def odd_components(self) -> int:
        return sum(len(c) % 2 for c in self.components)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "vertices": list(self.vertices),
            "size": self.size,
            "components": self.component_count,
            "odd_components": self.odd_components,
            "minimal": self.minimal,
        }
        if self.regions is not None:
            out["regions"] = self.regions
        return out


def cut_witness(g: GraphLike, s: Sequence[int], with_regions: bool = True) -> CutWitness:
    adj = as_adjacency(g)
    masks = _masks(adj)
    smask = sum(1 << v for v in s)
    comps = components_mask(masks, ((1 << len(adj)) - 1) & ~smask)
    minimal = len(comps) > 1 and all(all(masks[v] & c for c in comps) for v in s)
    w = CutWitness(tuple(sorted(s)), [tuple(_bits(c)) for c in comps], minimal)
    if with_regions and isinstance(g, OptimalOneEmbedding):
        w.regions = [r.summary() for r in regions(g, induced_quad_subgraph(g, s))]
    return w


def enumerate_cuts(
    g: GraphLike,
    size: int,
    minimal_only: bool = True,
    budget: int = DEFAULT_CUT_BUDGET,
    with_regions: bool = False,
) -> list[CutWitness]:
    """All vertex cuts of exactly ``size`` vertices (only minimal ones by default).

    S is a minimal cut iff G - S is disconnected and every vertex of S has a
    neighbour in every component of G - S.
    """
    adj = as_adjacency(g)
    n = len(adj)
    if math.comb(n, size) > budget:
        raise TooLarge(f"C({n}, {size}) = {math.comb(n, size)} subsets exceeds budget {budget}")
    masks = _masks(adj)
    full = (1 << n) - 1
    out = []
    for s in combinations(range(n), size):
        smask = 0
        for v in s:
            smask |= 1 << v
        comps = components_mask(masks, full & ~smask)
        if len(comps) < 2:
            continue
        minimal = all(all(masks[v] & c for c in comps) for v in s)
        if minimal_only and not minimal:
            continue
        w = CutWitness(s, [tuple(_bits(c)) for c in comps], minimal)
        if with_regions and isinstance(g, OptimalOneEmbedding):
            w.regions = [r.summary() for r in regions(g, induced_quad_subgraph(g, s))]
        out.append(w)
    return out


# -- structural witnesses ------------------------------------------------------

def find_nonfacial_trivial_4cycle(
    g: OptimalOneEmbedding, labels: Optional[HomologyLabels] = None
) -> Optional[tuple[int, ...]]:
    """A null-homologous 4-cycle of Q(G) that is not a face boundary, if any."""
    labels = labels or homology_labels(g.quad)
    faces = faces_as_edge_sets(g.quad)
    for c in simple_cycles(g.quad.map, 4, min_len=4):
        if edge_set(c) in faces:
            continue
        if cycle_class(labels, c).is_zero():
            return c
    return None


def triangles(m: EmbeddedMap) -> list[tuple[int, int, int]]:
    return [c for c in simple_cycles(m, 3)]  # type: ignore[misc]


def find_homotopic_3cycle_pair(
    g: OptimalOneEmbedding, labels: Optional[HomologyLabels] = None
) -> Optional[tuple[int, int, int, int, int]]:
    """``(x, y1, z1, y2, z2)``: 3-cycles x y1 z1 and x y2 z2 of Q(G), freely homotopic,
    sharing only ``x``."""
    labels = labels or homology_labels(g.quad)
    tris = triangles(g.quad.map)
    classes = [cycle_class(labels, t) for t in tris]
    for i, j in combinations(range(len(tris)), 2):
        common = set(tris[i]) & set(tris[j])
        if len(common) != 1:
            continue
        hi, hj = classes[i], classes[j]
        if hi != hj and hi != -hj:
            continue
        (x,) = common
        y1, z1 = (v for v in tris[i] if v != x)
        y2, z2 = (v for v in tris[j] if v != x)
        return x, y1, z1, y2, z2
    return None


@dataclass
class ConnectivityVerdict:
    kappa_computed: int
    kappa_predicted: int
    cut: Optional[tuple[int, ...]]
    witness: dict[str, Any] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return self.kappa_computed == self.kappa_predicted

    def to_json(self) -> dict[str, Any]:
        return {
            "kappa_computed": self.kappa_computed,
            "kappa_predicted": self.kappa_predicted,
            "agree": self.agree,
            "cut": list(self.cut) if self.cut is not None else None,
            "witness": self.witness,
        }


def predict_connectivity(g: OptimalOneEmbedding, labels: Optional[HomologyLabels] = None) -> tuple[int, dict[str, Any]]:
    """Connectivity predicted from the structure of Q(G) alone, with its witness."""
    labels = labels or homology_labels(g.quad)
    c4 = find_nonfacial_trivial_4cycle(g, labels)
    if c4 is not None:
        return 4, {"kind": "nonfacial_trivial_4cycle", "cycle": list(c4)}
    pair = find_homotopic_3cycle_pair(g, labels)
    if pair is not None:
        x, y1, z1, y2, z2 = pair
        return 5, {"kind": "homotopic_3cycle_pair", "cycles": [[x, y1, z1], [x, y2, z2]]}
    if g.is_regular(8):
        pr = is_qpr3(g.quad)
        if pr is not None:
            return 6, {"kind": "qpr3", "p": pr[0], "r": pr[1]}
        return 8, {"kind": "not_qpr3"}
    return 6, {"kind": "default", "min_degree": min(len(a) for a in g.adjacency)}


def classify_connectivity(g: OptimalOneEmbedding, check: bool = True) -> ConnectivityVerdict:
    """Compare the flow-computed connectivity with the structural prediction.

    Raises:
        TheoremViolation: the two disagree (only when ``check`` is True).
    """
    kappa, cut = minimum_vertex_cut(g)
    predicted, witness = predict_connectivity(g)
    verdict = ConnectivityVerdict(kappa, predicted, tuple(sorted(cut)) if cut else None, witness)
    if check and not verdict.agree:
        raise TheoremViolation(
            f"computed kappa {kappa} but structure predicts {predicted}",
            instance=g, details=verdict.to_json(),
        )
    return verdict
