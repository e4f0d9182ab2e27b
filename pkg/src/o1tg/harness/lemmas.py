"""Executable checks of the structural lemmas over cuts, cycles and blockers.

Every suite returns a :class:`LemmaResult` counting the objects it examined
and listing each violation with enough data to reproduce it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Optional

from ..connectivity import (
    CutWitness,
    enumerate_cuts,
    minimum_vertex_cut,
    triangles,
)
from ..errors import BudgetExceeded, TooLarge
from ..matching import barrier_pair_matching, find_blocker, is_m_extendable
from ..o1t import OptimalOneEmbedding, induced_quad_subgraph
from ..topology import (
    HomologyLabels,
    RegionDecomposition,
    barrier_cycles,
    cycle_class,
    cycle_subgraph,
    homology_labels,
    regions,
    separates_torus,
    simple_cycles,
)

CUT_SIZES = (4, 5, 6, 7)


@dataclass
class LemmaResult:
    name: str
    checked: int = 0
    violations: list[dict[str, Any]] = field(default_factory=list)
    skipped: Optional[str] = None
    flags: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "pass": self.passed,
            "checked": self.checked,
            "violations": self.violations,
        }
        if self.skipped:
            out["skipped"] = self.skipped
        if self.flags:
            out["flags"] = self.flags
        return out


@dataclass
class CutContext:
    """One cut with its G - S components and the region decomposition of Q[S]."""

    witness: CutWitness
    decomposition: RegionDecomposition

    @property
    def s(self) -> tuple[int, ...]:
        return self.witness.vertices

    def regions_with_components(self) -> dict[int, set[int]]:
        out: dict[int, set[int]] = {}
        for ci, comp in enumerate(self.witness.components):
            for v in comp:
                rid = self.decomposition.region_of_vertex(v)
                assert rid is not None
                out.setdefault(rid, set()).add(ci)
        return out


def collect_cuts(
    g: OptimalOneEmbedding,
    sizes: tuple[int, ...] = CUT_SIZES,
    budget: int = 200_000,
) -> dict[int, list[CutContext]]:
    """All cuts (minimal or not) of each size, with Q[S] regions attached.

    Raises:
        TooLarge: a size has more than ``budget`` candidate subsets.
    """
    out = {}
    for k in sizes:
        ctx = []
        for w in enumerate_cuts(g, k, minimal_only=False, budget=budget):
            ctx.append(CutContext(w, regions(g, induced_quad_subgraph(g, w.vertices))))
        out[k] = ctx
    return out


def _minimal(cuts: dict[int, list[CutContext]]) -> list[CutContext]:
    return [c for k in sorted(cuts) for c in cuts[k] if c.witness.minimal]


def check_parity(cuts: dict[int, list[CutContext]]) -> LemmaResult:
    res = LemmaResult("parity")
    for c in _minimal(cuts):
        for r in c.decomposition.regions:
            res.checked += 1
            if r.size % 2:
                res.violations.append({"S": list(c.s), "region": r.id, "size": r.size})
    return res


def check_sep(cuts: dict[int, list[CutContext]]) -> LemmaResult:
    res = LemmaResult("sep")
    for c in _minimal(cuts):
        res.checked += 1
        for rid, comps in c.regions_with_components().items():
            if len(comps) > 1:
                res.violations.append({"S": list(c.s), "region": rid, "components": len(comps)})
    return res


def check_degree(cuts: dict[int, list[CutContext]], g: OptimalOneEmbedding) -> LemmaResult:
    res = LemmaResult("degree")
    for c in _minimal(cuts):
        res.checked += 1
        sub = induced_quad_subgraph(g, c.s)
        low = {v: len(nb) for v, nb in sub.rotation.items() if len(nb) < 2}
        if low:
            res.violations.append({"S": list(c.s), "low_degree": low})
    return res


def check_qs_inequalities(cuts: dict[int, list[CutContext]], g: OptimalOneEmbedding) -> LemmaResult:
    """For each q >= 3: with p regions of size >= 2q, |E(Q[S])| >= 2|F| + (q-2)p and
    |S| + (2-q)p >= |F| (Euler characteristic 0)."""
    res = LemmaResult("qs_bounds")
    for c in _minimal(cuts):
        sizes = [r.size for r in c.decomposition.regions]
        nf = len(sizes)
        ne = len(c.decomposition.subgraph.edges)
        for q in range(3, max(sizes) // 2 + 1):
            p = sum(1 for x in sizes if x >= 2 * q)
            res.checked += 1
            if ne < 2 * nf + (q - 2) * p or len(c.s) + (2 - q) * p < nf:
                res.violations.append({"S": list(c.s), "q": q, "p": p, "E": ne, "F": nf})
    return res


def check_4cycle(cuts: dict[int, list[CutContext]]) -> LemmaResult:
    """Every 4-cut: exactly two regions hold vertices of G, one of them of size 4."""
    res = LemmaResult("4cycle")
    for c in cuts.get(4, []):
        res.checked += 1
        occupied = [r for r in c.decomposition.regions if r.interior_vertices]
        if len(occupied) != 2 or not any(r.size == 4 for r in occupied):
            res.violations.append({"S": list(c.s), "occupied_sizes": [r.size for r in occupied]})
    return res


def check_5conn(cuts: dict[int, list[CutContext]]) -> LemmaResult:
    """Every minimal 5-cut: a region of size 6 whose boundary vertices are S and which holds a component."""
    res = LemmaResult("5conn")
    for c in cuts.get(5, []):
        if not c.witness.minimal:
            continue
        res.checked += 1
        s = set(c.s)
        if not any(r.size == 6 and set(r.boundary_vertices) == s and r.interior_vertices
                   for r in c.decomposition.regions):
            res.violations.append({"S": list(c.s), "regions": [r.summary() for r in c.decomposition.regions]})
    return res


def check_6cut2(cuts: dict[int, list[CutContext]], g: OptimalOneEmbedding) -> LemmaResult:
    res = LemmaResult("6cut2")
    if not g.is_regular(8):
        res.skipped = "not 8-regular"
        return res
    for k in (6, 7):
        for c in cuts.get(k, []):
            if not c.witness.minimal:
                continue
            res.checked += 1
            bad = sum(1 for r in c.decomposition.regions if not r.is_two_cell)
            if bad < 2:
                res.violations.append({"S": list(c.s), "non_disk_regions": bad})
    return res


def check_6cut3(cuts: dict[int, list[CutContext]], g: OptimalOneEmbedding, labels: HomologyLabels) -> LemmaResult:
    """In an 8-regular instance every 6-cut induces two disjoint, homotopic, essential 3-cycles."""
    res = LemmaResult("6cut3")
    if not g.is_regular(8):
        res.skipped = "not 8-regular"
        return res
    for c in cuts.get(6, []):
        res.checked += 1
        sub = induced_quad_subgraph(g, c.s)
        tris = triangles(sub) if sub.num_vertices else []
        ok = False
        if sub.num_edges == 6:
            for t1, t2 in combinations(tris, 2):
                if set(t1) | set(t2) == set(c.s) and not set(t1) & set(t2):
                    h1, h2 = cycle_class(labels, t1), cycle_class(labels, t2)
                    ok = not h1.is_zero() and (h1 == h2 or h1 == -h2)
                    break
        if not ok:
            res.violations.append({"S": list(c.s), "edges": sub.edges() if sub.num_vertices else []})
    return res


def check_min7(cuts: dict[int, list[CutContext]], g: OptimalOneEmbedding) -> LemmaResult:
    res = LemmaResult("min7cut")
    if not g.is_regular(8):
        res.skipped = "not 8-regular"
        return res
    res.checked = len(cuts.get(7, []))
    for c in cuts.get(7, []):
        if c.witness.minimal:
            res.violations.append({"S": list(c.s)})
    return res


def check_exceptional_faces(cuts: dict[int, list[CutContext]]) -> LemmaResult:
    """Flag regions bounded by two independent edges, each traversed on both sides."""
    res = LemmaResult("exceptional_face")
    for c in _minimal(cuts):
        for r in c.decomposition.regions:
            res.checked += 1
            walks = [w for w in r.boundary_walks if len(w)]
            if r.size == 4 and len(walks) == 2 and all(len(w) == 2 for w in walks):
                if not set(walks[0].vertices) & set(walks[1].vertices):
                    res.flags.append(f"S={list(c.s)} region={r.id}")
    return res


def check_4regular_disks(g: OptimalOneEmbedding, labels: HomologyLabels, max_len: int = 8) -> LemmaResult:
    """Quadrangulations of minimum degree >= 4: disks bounded by 4- or 6-cycles are
    empty; a disk bounded by an 8-cycle holds at most one vertex, of degree 4."""
    res = LemmaResult("4regular_disk")
    qm = g.quad.map
    if min(len(nb) for nb in qm.rotation.values()) < 4:
        res.skipped = "minimum degree below 4"
        return res
    for c in simple_cycles(qm, max_len, min_len=4):
        if not cycle_class(labels, c).is_zero():
            continue
        dec = regions(g, cycle_subgraph(c))
        for r in dec.regions:
            if not r.is_two_cell:
                continue
            res.checked += 1
            inside = r.interior_vertices
            if len(c) in (4, 6) and inside:
                res.violations.append({"cycle": list(c), "inside": list(inside)})
            elif len(c) == 8 and inside and (len(inside) != 1 or len(qm.rotation[inside[0]]) != 4):
                res.violations.append({"cycle": list(c), "inside": list(inside)})
    return res


def check_cycle_parity(g: OptimalOneEmbedding, labels: HomologyLabels, max_len: int = 6) -> LemmaResult:
    """Homotopic simple cycles have equal length parity; no odd cycle is trivial;
    triviality agrees with the flood-fill separation test."""
    res = LemmaResult("cycle_parity")
    cyc = list(simple_cycles(g.quad.map, max_len))
    classes = [cycle_class(labels, c) for c in cyc]
    for c, h in zip(cyc, classes):
        res.checked += 1
        if len(c) % 2 and h.is_zero():
            res.violations.append({"odd_trivial": list(c)})
        if h.is_zero() != separates_torus(g, c):
            res.violations.append({"separation_mismatch": list(c)})
    by_class: dict[Any, set[int]] = {}
    for c, h in zip(cyc, classes):
        if h.is_zero():
            continue
        key = max(h, -h)
        by_class.setdefault(key, set()).add(len(c) % 2)
    for key, parities in by_class.items():
        res.checked += 1
        if len(parities) > 1:
            res.violations.append({"class": list(key), "parities": sorted(parities)})
    return res


def blocker_checks(
    g: OptimalOneEmbedding,
    kappa: Optional[int] = None,
    max_matchings: Optional[int] = None,
    budget: int = 2_000_000,
) -> tuple[LemmaResult, LemmaResult, LemmaResult]:
    """Blocker existence, the edge bound and the odd-component bound.

    Sources of non-extendable matchings: the first failing matching of each
    m in 1..3 and both edge pairs of every barrier 4-cycle.
    """
    blk, edge, odd = LemmaResult("blocker"), LemmaResult("edge_bound"), LemmaResult("oddcompo")
    if g.n % 2:
        for r in (blk, edge, odd):
            r.skipped = "odd order"
        return blk, edge, odd
    if kappa is None:
        kappa = minimum_vertex_cut(g)[0]
    bad: list[list[tuple[int, int]]] = []
    for m in (1, 2, 3):
        if g.n < 2 * m + 2:
            continue
        try:
            v = is_m_extendable(g, m, max_matchings=max_matchings)
        except BudgetExceeded:
            blk.flags.append(f"budget: m={m}")
            continue
        if not v.extendable_computed and v.witness:
            bad.append([tuple(e) for e in v.witness["matching"]])
    for b in barrier_cycles(g, 4):
        c = list(b.cycle)
        bad.append(barrier_pair_matching(c))
        bad.append(barrier_pair_matching(c[1:] + c[:1]))
    seen = set()
    for mm in bad:
        key = tuple(sorted(tuple(sorted(e)) for e in mm))
        if key in seen:
            continue
        seen.add(key)
        try:
            w = find_blocker(g, mm, budget=budget)
        except BudgetExceeded:
            blk.flags.append(f"budget: {list(key)}")
            continue
        blk.checked += 1
        if w is None:
            # the matching extends; nothing to check
            continue
        if not set(v for e in mm for v in e) <= set(w.vertices) or w.slack < 0:
            blk.violations.append(w.to_json())
        m = w.m
        dec = regions(g, induced_quad_subgraph(g, w.vertices))
        nf, ne = len(dec.regions), len(dec.subgraph.edges)
        edge.checked += 1
        if 2 * nf + 2 * m < ne:
            edge.violations.append({**w.to_json(), "F": nf, "E": ne})
        q = kappa // 2
        if q >= 3:
            odd.checked += 1
            if w.odd_components * (q - 2) > 2 * m:
                odd.violations.append({**w.to_json(), "q": q})
    return blk, edge, odd



def run_lemma_suites(
    g: OptimalOneEmbedding,
    max_cut_n: int = 16,
    cut_budget: int = 200_000,
    max_matchings: Optional[int] = None,
    blocker_budget: int = 2_000_000,
    kappa: Optional[int] = None,
) -> dict[str, LemmaResult]:
    """Run every suite that applies to ``g``; cut-based suites need ``n <= max_cut_n``."""
    labels = homology_labels(g.quad)
    out: dict[str, LemmaResult] = {}
    cut_names = ("parity", "sep", "degree", "qs_bounds", "4cycle", "5conn", "6cut2", "6cut3", "min7cut",
                 "exceptional_face")
    cuts = None
    if g.n <= max_cut_n:
        try:
            cuts = collect_cuts(g, budget=cut_budget)
        except TooLarge as exc:
            reason = f"budget: {exc}"
    else:
        reason = f"n = {g.n} > {max_cut_n}"
    if cuts is None:
        for name in cut_names:
            out[name] = LemmaResult(name, skipped=reason)
    else:
        out["parity"] = check_parity(cuts)
        out["sep"] = check_sep(cuts)
        out["degree"] = check_degree(cuts, g)
        out["qs_bounds"] = check_qs_inequalities(cuts, g)
        out["4cycle"] = check_4cycle(cuts)
        out["5conn"] = check_5conn(cuts)
        out["6cut2"] = check_6cut2(cuts, g)
        out["6cut3"] = check_6cut3(cuts, g, labels)
        out["min7cut"] = check_min7(cuts, g)
        out["exceptional_face"] = check_exceptional_faces(cuts)
    out["4regular_disk"] = check_4regular_disks(g, labels)
    out["cycle_parity"] = check_cycle_parity(g, labels)
    blk, edge, odd = blocker_checks(g, kappa=kappa, max_matchings=max_matchings, budget=blocker_budget)
    out["blocker"], out["edge_bound"], out["oddcompo"] = blk, edge, odd
    return out


def cut_count_estimate(n: int, sizes: tuple[int, ...] = CUT_SIZES) -> int:
    return sum(math.comb(n, k) for k in sizes)


__all__ = [
    "CUT_SIZES",
    "CutContext",
    "LemmaResult",
    "blocker_checks",
    "check_4cycle",
    "check_4regular_disks",
    "check_5conn",
    "check_6cut2",
    "check_6cut3",
    "check_cycle_parity",
    "check_degree",
    "check_exceptional_faces",
    "check_min7",
    "check_parity",
    "check_qs_inequalities",
    "check_sep",
    "collect_cuts",
    "cut_count_estimate",
    "run_lemma_suites",
]
