"""Hand-built instances used across the test modules.

Each instance is recorded as a provenance document so it can be replayed
through the public expansion moves; nothing here bypasses validation.
"""

from __future__ import annotations

import itertools
import random
from typing import Any

from o1tg.o1t import OptimalOneEmbedding, build_o1t
from o1tg.quad_torus import build_qprq, replay_provenance


def _expansion(base: tuple[int, int, int], moves: list[Any]) -> dict[str, Any]:
    p, r, q = base
    return {"kind": "expansion", "base": {"kind": "qprq", "p": p, "r": r, "q": q}, "moves": moves}


# Four splits of Q(4,0,3) that leave two triangles meeting only at vertex 15.
KAPPA5_PROV = _expansion((4, 0, 3), [[0, 1, 2], [1, 2, 0], [0, 1, 2], [2, 12, 0]])

# One 4-cycle nested inside a face of Q(4,0,3); the face boundary becomes a
# nonfacial null-homologous 4-cycle.
NESTED_PROV = _expansion((4, 0, 3), [{"insert": [0, 3, 5, 2]}])

# A nest in Q(4,0,4) with one corner split into it: the outer 4-cycle now
# encloses five vertices.  A last split elsewhere restores even order.
BARRIER_PROV = _expansion((4, 0, 4), [{"insert": [0, 4, 7, 3]}, [0, 4, 3], [5, 4, 6]])

# Every face of Q(3,1,3) nested and split as above; the nine original
# vertices form a blocking quadrangulation subgraph.
BLOCKING_PROV = _expansion((3, 1, 3), [
    {"insert": [0, 3, 5, 2]}, [0, 3, 2], {"insert": [0, 1, 4, 3]}, [0, 1, 3],
    {"insert": [0, 8, 6, 1]}, [0, 8, 1], {"insert": [0, 2, 7, 8]}, [0, 2, 8],
    {"insert": [1, 2, 5, 4]}, [1, 2, 4], {"insert": [1, 6, 7, 2]}, [1, 6, 2],
    {"insert": [3, 6, 8, 5]}, [3, 6, 5], {"insert": [3, 4, 7, 6]}, [3, 4, 6],
    {"insert": [4, 5, 8, 7]}, [4, 5, 7],
])


def from_prov(prov: dict[str, Any]) -> OptimalOneEmbedding:
    return build_o1t(replay_provenance(prov))


def qprq_o1t(p: int, r: int, q: int) -> OptimalOneEmbedding:
    return build_o1t(build_qprq(p, r, q))


def random_graph(rng: random.Random, n: int, density: float) -> list[frozenset[int]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < density:
            adj[u].add(v)
            adj[v].add(u)
    return [frozenset(a) for a in adj]


def brute_perfect_matching(adj: list[frozenset[int]], alive: frozenset[int] | None = None) -> bool:
    """Exhaustive search: match the smallest alive vertex every possible way."""
    alive = frozenset(range(len(adj))) if alive is None else alive
    if not alive:
        return True
    if len(alive) % 2:
        return False
    v = min(alive)
    return any(brute_perfect_matching(adj, alive - {v, u}) for u in adj[v] if u in alive)
