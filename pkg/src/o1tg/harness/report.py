"""Per-instance analysis reports (schema ``o1t-report/1``)."""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Optional

from ..connectivity import classify_connectivity
from ..errors import BudgetExceeded, OddOrder, OrderTooSmall, TheoremViolation
from ..matching import classify_extendability
from ..o1t import OptimalOneEmbedding
from ..topology import barrier_cycles, homology_labels
from .lemmas import run_lemma_suites

SCHEMA = "o1t-report/1"

STATUS_AGREE = "agree"
STATUS_VIOLATION = "violation"
STATUS_BUDGET = "budget"


@dataclass
class Options:
    sections: tuple[str, ...] = ("connectivity", "extendability", "lemmas")
    max_matchings: Optional[int] = None
    max_subset: int = 200_000
    max_cut_n: int = 16
    max_blocking_nodes: int = 1_000_000


@dataclass
class AnalysisReport:
    """Deterministic analysis fields plus wall-clock timings kept apart in ``timing``."""

    instance: dict[str, Any]
    counts: dict[str, int]
    regularity: dict[str, Any]
    connectivity: Optional[dict[str, Any]] = None
    extendability: Optional[dict[str, Any]] = None
    barrier_cycles: list[dict[str, Any]] = field(default_factory=list)
    lemmas: dict[str, Any] = field(default_factory=dict)
    status: str = STATUS_AGREE
    flags: list[str] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict)
    schema: str = SCHEMA

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": self.schema,
            "instance": self.instance,
            "counts": self.counts,
            "regularity": self.regularity,
            "connectivity": self.connectivity,
            "extendability": self.extendability,
            "barrier_cycles": self.barrier_cycles,
            "lemmas": self.lemmas,
            "status": self.status,
            "flags": self.flags,
            "timing": self.timing,
        }

    def deterministic(self) -> dict[str, Any]:
        out = self.to_json()
        del out["timing"]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> AnalysisReport:
        if doc.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {doc.get('schema')!r}")
        fields = {k: v for k, v in doc.items() if k != "schema"}
        return cls(schema=SCHEMA, **fields)

    @classmethod
    def loads(cls, text: str) -> AnalysisReport:
        return cls.from_json(json.loads(text))

    @property
    def ok(self) -> bool:
        return self.status == STATUS_AGREE


def _regularity(g: OptimalOneEmbedding) -> dict[str, Any]:
    dq = Counter(len(nb) for nb in g.quad.map.rotation.values())
    dg = [g.degree(v) for v in range(g.n)]
    return {
        "quad_degrees": {str(k): dq[k] for k in sorted(dq)},
        "min_degree": min(dg),
        "max_degree": max(dg),
        "eight_regular": g.is_regular(8),
        "eulerian": all(d % 2 == 0 for d in dg),
        "degree_doubling": all(g.degree(v) == 2 * len(g.quad.map.rotation[v]) for v in range(g.n)),
    }


def analyze(g: OptimalOneEmbedding, instance_id: str = "", options: Optional[Options] = None) -> AnalysisReport:
    """Run the requested sections; a theorem disagreement sets ``status`` rather than raising."""
    opts = options or Options()
    qm = g.quad.map
    rep = AnalysisReport(
        instance={"id": instance_id, "provenance": g.quad.provenance},
        counts={
            "V": g.n,
            "E": g.num_edges,
            "E_quad": qm.num_edges,
            "E_crossing": len(g.crossing_edges()),
            "faces": qm.num_faces,
        },
        regularity=_regularity(g),
    )
    labels = homology_labels(g.quad)
    t = time.perf_counter()
    rep.barrier_cycles = [b.to_json() for b in barrier_cycles(g, 4, labels=labels)]
    rep.timing["barrier_cycles"] = time.perf_counter() - t

    kappa = None
    if "connectivity" in opts.sections:
        t = time.perf_counter()
        verdict = classify_connectivity(g, check=False)
        rep.timing["connectivity"] = time.perf_counter() - t
        rep.connectivity = verdict.to_json()
        kappa = verdict.kappa_computed
        if not verdict.agree:
            rep.status = STATUS_VIOLATION
            rep.flags.append("theorem_violation:connectivity")

    if "extendability" in opts.sections:
        t = time.perf_counter()
        try:
            ext = classify_extendability(g, check=False, max_matchings=opts.max_matchings,
                                         blocking_budget=opts.max_blocking_nodes)
            rep.extendability = {
                "skipped": None,
                "verdicts": {str(m): v.to_json() for m, v in ext.verdicts.items()},
                "blocking_set": list(ext.blocking_set) if ext.blocking_set is not None else None,
            }
            if not ext.agree:
                rep.status = STATUS_VIOLATION
                rep.flags.append("theorem_violation:extendability")
            m2 = ext.verdicts.get(2)
            if m2 is not None and m2.witness and m2.witness.get("barrier_pair_extends"):
                rep.status = STATUS_VIOLATION
                rep.flags.append("theorem_violation:barrier_pair_extends")
        except (OddOrder, OrderTooSmall) as exc:
            rep.extendability = {"skipped": str(exc), "verdicts": {}, "blocking_set": None}
        except BudgetExceeded as exc:
            rep.extendability = {"skipped": f"budget: {exc}", "verdicts": {}, "blocking_set": None}
            rep.flags.append("budget_exceeded:extendability")
            if rep.status == STATUS_AGREE:
                rep.status = STATUS_BUDGET
        rep.timing["extendability"] = time.perf_counter() - t

    if "lemmas" in opts.sections:
        t = time.perf_counter()
        results = run_lemma_suites(
            g,
            max_cut_n=opts.max_cut_n,
            cut_budget=opts.max_subset,
            max_matchings=opts.max_matchings,
            kappa=kappa,
        )
        rep.timing["lemmas"] = time.perf_counter() - t
        rep.lemmas = {name: r.to_json() for name, r in results.items()}
        if any(not r.passed for r in results.values()):
            rep.status = STATUS_VIOLATION
            rep.flags.append("lemma_violation")
        if results["exceptional_face"].flags:
            rep.flags.append("exceptional_face")
        if any(r.skipped and r.skipped.startswith("budget") for r in results.values()) or any(
            f.startswith("budget") for r in results.values() for f in r.flags
        ):
            rep.flags.append("budget_exceeded:lemmas")
            if rep.status == STATUS_AGREE:
                rep.status = STATUS_BUDGET
    return rep


def raise_on_violation(rep: AnalysisReport, g: OptimalOneEmbedding) -> None:
    if rep.status == STATUS_VIOLATION:
        raise TheoremViolation(f"instance {rep.instance['id']}: {', '.join(rep.flags)}", instance=g,
                               details=rep.deterministic())
