"""Perfect matchings, m-extendability and Tutte-style blocker witnesses."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterator, Optional, Sequence

from .connectivity import GraphLike, _masks, as_adjacency, components_mask
from .errors import BudgetExceeded, OddOrder, OrderTooSmall, TheoremViolation
from .o1t import OptimalOneEmbedding
from .quad_torus import is_quadrangulation
from .topology import HomologyLabels, barrier_cycles, cycle_subgraph, homology_labels, regions

Edge = tuple[int, int]


# -- maximum matching (Edmonds' blossom algorithm) ---------------------------

def maximum_matching(g: GraphLike, removed: frozenset[int] | set[int] = frozenset()) -> list[int]:
    """Maximum-cardinality matching of G - ``removed`` as a mate array (-1 = exposed)."""
    adj = as_adjacency(g)
    n = len(adj)
    alive = [v not in removed for v in range(n)]
    nbrs = [[u for u in sorted(adj[v]) if alive[u]] if alive[v] else [] for v in range(n)]
    match = [-1] * n
    for v in range(n):
        if alive[v] and match[v] == -1:
            for u in nbrs[v]:
                if match[u] == -1:
                    match[v], match[u] = u, v
                    break
    for root in range(n):
        if alive[root] and match[root] == -1:
            _augment_from(root, nbrs, match)
    return match


def _augment_from(root: int, nbrs: list[list[int]], match: list[int]) -> bool:
    n = len(nbrs)
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    while queue:
        v = queue.popleft()
        for to in nbrs[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and parent[match[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if match[to] == -1:
                    # flip the alternating path ending at ``to``
                    u = to
                    while u != -1:
                        pu = parent[u]
                        nxt = match[pu]
                        match[u], match[pu] = pu, u
                        u = nxt
                    return True
                used[match[to]] = True
                queue.append(match[to])
    return False


def perfect_matching(g: GraphLike, removed: frozenset[int] | set[int] = frozenset()) -> Optional[list[Edge]]:
    """A perfect matching of G - ``removed`` as a sorted edge list, or None."""
    adj = as_adjacency(g)
    alive = [v for v in range(len(adj)) if v not in removed]
    if len(alive) % 2:
        return None
    match = maximum_matching(adj, removed)
    if any(match[v] == -1 for v in alive):
        return None
    return sorted((v, match[v]) for v in alive if v < match[v])


def has_perfect_matching(g: GraphLike) -> bool:
    return perfect_matching(g) is not None


# -- extendability -------------------------------------------------------------

def odd_components(g: GraphLike, s: Sequence[int] | set[int]) -> int:
    """Number of odd-order components of G - S."""
    adj = as_adjacency(g)
    masks = _masks(adj)
    smask = 0
    for v in s:
        smask |= 1 << v
    comps = components_mask(masks, ((1 << len(adj)) - 1) & ~smask)
    return sum(bin(c).count("1") % 2 for c in comps)


def iter_matchings(edges: Sequence[Edge], m: int) -> Iterator[tuple[int, ...]]:
    """Index tuples ``i1 < i2 < ...`` of ``m`` pairwise disjoint edges, lexicographically."""
    chosen: list[int] = []
    covered: set[int] = set()

    def rec(start: int) -> Iterator[tuple[int, ...]]:
        if len(chosen) == m:
            yield tuple(chosen)
            return
        for i in range(start, len(edges)):
            u, v = edges[i]
            if u in covered or v in covered:
                continue
            chosen.append(i)
            covered.update((u, v))
            yield from rec(i + 1)
            chosen.pop()
            covered.difference_update((u, v))

    yield from rec(0)


@dataclass
class ExtendabilityVerdict:
    m: int
    extendable_computed: bool
    extendable_predicted: Optional[bool] = None
    witness: Optional[dict[str, Any]] = None
    tested: int = 0

    @property
    def agree(self) -> bool:
        return self.extendable_computed == self.extendable_predicted

    def to_json(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "computed": self.extendable_computed,
            "predicted": self.extendable_predicted,
            "agree": self.agree,
            "witness": self.witness,
        }


def is_m_extendable(g: GraphLike, m: int, max_matchings: Optional[int] = None) -> ExtendabilityVerdict:
    """Decide m-extendability by trying every matching of size m.

    Each perfect matching found certifies all of its m-subsets at once, so
    those are skipped; the verdict is still exhaustive.  The first matching
    that does not extend is returned as the witness.

    Raises:
        OddOrder, OrderTooSmall: precondition failures.
        BudgetExceeded: more than ``max_matchings`` candidates would be tried.
    """
    adj = as_adjacency(g)
    n = len(adj)
    if n % 2:
        raise OddOrder(f"graph has odd order {n}")
    if n < 2 * m + 2:
        raise OrderTooSmall(f"{m}-extendability needs at least {2 * m + 2} vertices, got {n}")
    edges = sorted((u, v) for u in range(n) for v in adj[u] if u < v)
    index = {e: i for i, e in enumerate(edges)}
    certified: set[tuple[int, ...]] = set()
    tested = 0
    for combo in iter_matchings(edges, m):
        if combo in certified:
            continue
        tested += 1
        if max_matchings is not None and tested > max_matchings:
            raise BudgetExceeded(f"more than {max_matchings} matchings to test")
        removed = {x for i in combo for x in edges[i]}
        rest = perfect_matching(adj, removed)
        if rest is None:
            mm = [list(edges[i]) for i in combo]
            return ExtendabilityVerdict(m, False, witness={"matching": mm}, tested=tested)
        full = sorted([index[e] for e in rest] + list(combo))
        certified.update(combinations(full, m))
    return ExtendabilityVerdict(m, True, tested=tested)


# -- blockers ------------------------------------------------------------------

@dataclass
class BlockerWitness:
    vertices: tuple[int, ...]
    matching: list[Edge]
    odd_components: int
    m: int

    @property
    def slack(self) -> int:
        """``C_o(G - S) + 2m - |S|``; non-negative for a valid blocker."""
        return self.odd_components + 2 * self.m - len(self.vertices)

    def to_json(self) -> dict[str, Any]:
        return {"S": list(self.vertices), "matching": [list(e) for e in self.matching],
                "odd_components": self.odd_components, "m": self.m}


def find_blocker(
    g: GraphLike,
    matching: Sequence[Sequence[int]],
    m: Optional[int] = None,
    budget: int = 2_000_000,
) -> Optional[BlockerWitness]:
    """Smallest S containing V(M) with ``|S| <= C_o(G - S) + 2m``.

    ``m`` defaults to ``len(matching) - 1``.  Supersets are tried by
    increasing size, then lexicographically.  Returns None when M is
    extendable (no such S can exist then).

    Raises:
        BudgetExceeded: more than ``budget`` candidate sets were examined.
    """
    adj = as_adjacency(g)
    n = len(adj)
    if m is None:
        m = len(matching) - 1
    vm = sorted({v for e in matching for v in e})
    if perfect_matching(adj, set(vm)) is not None:
        return None
    masks = _masks(adj)
    full = (1 << n) - 1
    others = [v for v in range(n) if v not in vm]
    base = sum(1 << v for v in vm)
    seen = 0
    for extra in range(len(others) + 1):
        for xs in combinations(others, extra):
            seen += 1
            if seen > budget:
                raise BudgetExceeded(f"blocker search exceeded {budget} candidate sets")
            smask = base
            for v in xs:
                smask |= 1 << v
            size = len(vm) + extra
            comps = components_mask(masks, full & ~smask)
            odd = sum(bin(c).count("1") % 2 for c in comps)
            if size <= odd + 2 * m:
                return BlockerWitness(tuple(sorted(vm + list(xs))), [tuple(e) for e in matching], odd, m)
    return None


# -- blocking quadrangulation subgraph ----------------------------------------------

def _is_blocking_set(g: OptimalOneEmbedding, s: Sequence[int]) -> bool:
    """Q[S] quadrangulates the torus and every one of its faces holds an odd number of vertices."""
    sub = g.quad.map.restricted(s)
    if sub.num_vertices == 0 or not sub.is_connected():
        return False
    if any(len(nb) < 2 for nb in sub.rotation.values()):
        return False
    if sub.num_edges != 2 * sub.num_vertices:
        return False
    ok, _ = is_quadrangulation(sub)
    if not ok:
        return False
    dec = regions(g, sub)
    return all(r.is_two_cell and len(r.interior_vertices) % 2 == 1 for r in dec.regions)


def find_blocking_quad_subgraph(
    g: OptimalOneEmbedding,
    labels: Optional[HomologyLabels] = None,
    budget: int = 1_000_000,
) -> Optional[tuple[int, ...]]:
    """Vertex set S such that Q[S] is a torus quadrangulation with only odd faces.

    Every face of such a Q[S] is a 4-cycle of Q(G) bounding a disk with an
    odd number of vertices inside, and these disks tile the torus.  So the
    search enumerates barrier 4-cycles and looks for a family of them whose
    disks partition the faces of Q(G); each candidate is then checked with
    the defining predicate.

    Raises:
        OddOrder: G has odd order.
        BudgetExceeded: the exact-cover search visited more than ``budget`` nodes.
    """
    if g.n % 2:
        raise OddOrder(f"graph has odd order {g.n}")
    labels = labels or homology_labels(g.quad)
    nf = g.quad.map.num_faces
    disks: list[tuple[tuple[int, ...], frozenset[int]]] = []
    for b in barrier_cycles(g, 4, labels=labels):
        dec = regions(g, cycle_subgraph(b.cycle))
        disks.append((b.cycle, frozenset(dec.regions[b.region].faces)))
    if not disks:
        return None
    by_face: list[list[int]] = [[] for _ in range(nf)]
    for i, (_, fs) in enumerate(disks):
        for f in fs:
            by_face[f].append(i)

    visited = 0
    chosen: list[int] = []

    def search(covered: frozenset[int]) -> Optional[tuple[int, ...]]:
        nonlocal visited
        visited += 1
        if visited > budget:
            raise BudgetExceeded(f"blocking-subgraph search exceeded {budget} nodes")
        if len(covered) == nf:
            s = sorted({v for i in chosen for v in disks[i][0]})
            return tuple(s) if _is_blocking_set(g, s) else None
        f = min(x for x in range(nf) if x not in covered)
        for i in by_face[f]:
            fs = disks[i][1]
            if fs & covered:
                continue
            chosen.append(i)
            found = search(covered | fs)
            chosen.pop()
            if found is not None:
                return found
        return None

    return search(frozenset())


def brute_force_blocking_quad_subgraph(g: OptimalOneEmbedding, max_n: int = 20) -> Optional[tuple[int, ...]]:
    """Subset search for the same object, pruned only by necessary counts.

    Independent of the barrier-cycle route; exponential, so limited to
    ``n <= max_n``.  A blocking Q[S] has |S| faces, each holding a vertex
    outside S, hence ``|S| <= n / 2``.
    """
    n = g.n
    if n > max_n:
        raise BudgetExceeded(f"subset search limited to n <= {max_n}, got {n}")
    qadj = as_adjacency(g.quad.map)
    qmasks = _masks(qadj)
    for size in range(3, n // 2 + 1):
        for s in combinations(range(n), size):
            smask = 0
            for v in s:
                smask |= 1 << v
            e2 = 0
            ok = True
            for v in s:
                d = bin(qmasks[v] & smask).count("1")
                if d < 2:
                    ok = False
                    break
                e2 += d
            if not ok or e2 != 4 * size:
                continue
            if _is_blocking_set(g, s):
                return s
    return None


# -- classification ----------------------------------------------------------------

@dataclass
class ExtendabilityReport:
    verdicts: dict[int, ExtendabilityVerdict] = field(default_factory=dict)
    barrier_4cycles: list[Any] = field(default_factory=list)
    blocking_set: Optional[tuple[int, ...]] = None

    @property
    def agree(self) -> bool:
        return all(v.agree for v in self.verdicts.values())


def classify_extendability(
    g: OptimalOneEmbedding,
    ms: Sequence[int] = (1, 2, 3),
    check: bool = True,
    max_matchings: Optional[int] = None,
    blocking_budget: int = 1_000_000,
) -> ExtendabilityReport:
    """Computed vs predicted m-extendability for m in ``ms``.

    Predictions: 1-extendable iff no blocking quadrangulation subgraph;
    2-extendable iff no barrier 4-cycle; 3-extendable iff 8-regular.

    Raises:
        OddOrder: G has odd order.
        TheoremViolation: a prediction disagrees with brute force (``check``).
    """
    if g.n % 2:
        raise OddOrder(f"graph has odd order {g.n}")
    labels = homology_labels(g.quad)
    rep = ExtendabilityReport()
    rep.barrier_4cycles = barrier_cycles(g, 4, labels=labels)
    for m in ms:
        v = is_m_extendable(g, m, max_matchings=max_matchings)
        if m == 1:
            rep.blocking_set = find_blocking_quad_subgraph(g, labels=labels, budget=blocking_budget)
            v.extendable_predicted = rep.blocking_set is None
            if rep.blocking_set is not None:
                v.witness = dict(v.witness or {}, blocking_set=list(rep.blocking_set))
        elif m == 2:
            v.extendable_predicted = not rep.barrier_4cycles
            if rep.barrier_4cycles:
                cyc = rep.barrier_4cycles[0].cycle
                pair = barrier_pair_matching(cyc)
                extends = perfect_matching(g, {x for e in pair for x in e}) is not None
                v.witness = dict(v.witness or {}, barrier_cycle=list(cyc),
                                 barrier_pair=[list(e) for e in pair], barrier_pair_extends=extends)
        elif m == 3:
            v.extendable_predicted = g.is_regular(8)
        else:
            raise ValueError("only m in {1, 2, 3} is supported")
        rep.verdicts[m] = v
        if check and not v.agree:
            raise TheoremViolation(
                f"{m}-extendability: computed {v.extendable_computed}, predicted {v.extendable_predicted}",
                instance=g, details=v.to_json(),
            )
    return rep


def barrier_pair_matching(cycle: Sequence[int]) -> list[Edge]:
    """Two independent edges of a 4-cycle: (c0, c1) and (c2, c3)."""
    c = list(cycle)
    return [(c[0], c[1]), (c[2], c[3])]


__all__ = [
    "BlockerWitness",
    "ExtendabilityReport",
    "ExtendabilityVerdict",
    "barrier_pair_matching",
    "brute_force_blocking_quad_subgraph",
    "classify_extendability",
    "find_blocker",
    "find_blocking_quad_subgraph",
    "has_perfect_matching",
    "is_m_extendable",
    "iter_matchings",
    "maximum_matching",
    "odd_components",
    "perfect_matching",
]
