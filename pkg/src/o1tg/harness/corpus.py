"""Deterministic corpus generation: Q(p, r, q) seeds plus random expansion moves."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from ..errors import O1TError
from ..o1t import OptimalOneEmbedding, build_o1t
from ..quad_torus import Quadrangulation, build_qprq, insert_quad_face, random_split_move, vertex_split

Family = tuple[int, int, int]


def default_families() -> list[Family]:
    """Simple Q(p, r, q) with q = 3 (p = 4..8) and q in {4, 5} (p = 3..6)."""
    out: list[Family] = [(p, r, 3) for p in range(4, 9) for r in range(3)]
    for p in range(3, 7):
        for q in (4, 5):
            for r in range(3):
                try:
                    build_qprq(p, r, q)
                except O1TError:
                    continue
                out.append((p, r, q))
    return out


@dataclass
class CorpusInstance:
    id: str
    graph: OptimalOneEmbedding
    attempts: int

    @property
    def quad(self) -> Quadrangulation:
        return self.graph.quad


def _expand(
    qd: Quadrangulation,
    rng: random.Random,
    moves: int,
    locality: float,
    insert_prob: float,
) -> Quadrangulation:
    # A move near the previous one is more likely to build nested structure
    # than a uniformly placed one.
    touched: list[int] = []
    for _ in range(moves):
        if insert_prob and rng.random() < insert_prob:
            face = rng.choice(qd.faces).vertices
            qd = insert_quad_face(qd, list(face))
            touched = list(range(qd.n - 4, qd.n)) + list(face)
            continue
        v = None
        if touched and rng.random() < locality:
            cand = [x for x in touched if len(qd.map.rotation[x]) >= 4]
            if cand:
                v = rng.choice(cand)
        mv = random_split_move(qd, rng, v)
        qd = vertex_split(qd, *mv)
        touched = [mv[0], qd.n - 1, mv[1], mv[2]]
    return qd


def generate_instance(
    seed: int,
    index: int,
    moves: int = 6,
    max_n: int = 30,
    families: Optional[Sequence[Family]] = None,
    locality: float = 0.7,
    insert_prob: float = 0.0,
    max_attempts: int = 200,
) -> CorpusInstance:
    """The ``index``-th corpus instance for ``seed``.

    Each attempt picks a family, then 0..``moves`` random moves.  Attempts
    whose O1TG is not simple or exceeds ``max_n`` vertices are rejected and
    redrawn from the same stream, so the result depends only on the arguments.
    """
    fams = list(families) if families is not None else default_families()
    rng = random.Random(seed * 1_000_003 + index)
    for attempt in range(1, max_attempts + 1):
        base = rng.choice(fams)
        k = rng.randint(0, moves)
        try:
            qd = _expand(build_qprq(*base), rng, k, locality, insert_prob)
            if qd.n > max_n:
                continue
            g = build_o1t(qd)
        except O1TError:
            continue
        return CorpusInstance(f"s{seed}-{index:04d}", g, attempt)
    raise RuntimeError(f"no valid instance after {max_attempts} attempts (seed {seed}, index {index})")


def generate_corpus(seed: int, count: int, **kwargs) -> list[CorpusInstance]:
    return list(iter_corpus(seed, count, **kwargs))


def iter_corpus(seed: int, count: int, **kwargs) -> Iterator[CorpusInstance]:
    for i in range(count):
        yield generate_instance(seed, i, **kwargs)
