"""Step 3: one-shot local multicoloring of a consolidated graph.

Each user draws ``k`` uniform integers in ``1..k*nbar**4``; a sub-network
inherits the vector of its smallest-ID member and takes slot ``i`` when its
entry beats the entries of every neighboring sub-network at ``i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cliques import ConsolidatedGraph
from .graph import GraphInputError
from .rng import make_rng

K_MAX_DEFAULT = 20000
_INT64_MAX = np.iinfo(np.int64).max


def kuhn_k(nbar: int, eps: float) -> int:
    """Slot count ``ceil(6 (nbar + 1) ln(nbar) / eps**2)``."""
    if nbar < 2:
        raise GraphInputError("nbar must be >= 2")
    if not 0 < eps < 1:
        raise GraphInputError("eps must lie in (0, 1)")
    return math.ceil(6 * (nbar + 1) * math.log(nbar) / eps**2)


def slot_count(nbar: int, eps: float, k_max: int | None = K_MAX_DEFAULT) -> int:
    """``kuhn_k`` clipped to ``k_max`` (coherence-time budget); None disables the cap."""
    k = kuhn_k(nbar, eps)
    return k if k_max is None else min(k, k_max)


def draw_vectors(n_users: int, k: int, nbar: int, seed: int) -> np.ndarray:
    """Row ``u`` is user ``u``'s vector; each row comes from its own ``(seed, u)`` stream."""
    if k < 1:
        raise GraphInputError("k must be >= 1")
    if n_users > nbar:
        raise GraphInputError(f"{n_users} users exceed the bound nbar={nbar}")
    high = k * nbar**4
    if high >= _INT64_MAX:
        raise GraphInputError(f"k*nbar^4 = {high} does not fit in 64-bit integers")
    out = np.empty((n_users, k), dtype=np.int64)
    for u in range(n_users):
        out[u] = make_rng(seed, "color-vector", u).integers(1, high, size=k, endpoint=True)
    return out


def assign_clique_vectors(cg: ConsolidatedGraph, vectors: np.ndarray) -> np.ndarray:
    """Row ``i`` is the vector of vertex ``i``'s smallest member."""
    leaders = [w.leader for w in cg.vertices]
    if leaders and max(leaders) >= len(vectors):
        raise GraphInputError(f"no vector for user {max(leaders) + 1}")
    return vectors[leaders] if leaders else np.empty((0, vectors.shape[1]), dtype=vectors.dtype)


def tie_rank(cg: ConsolidatedGraph) -> np.ndarray:
    """Position of each vertex in the tie-break order (lower wins).

    Larger sub-networks first, then lexicographic member lists. Vertices only
    tie when they share a leader, and then they overlap; the larger one
    serves more users with the same slot.
    """
    order = sorted(range(len(cg)), key=lambda i: (-len(cg.vertices[i]), cg.vertices[i].members))
    rank = np.empty(len(cg), dtype=np.int64)
    rank[order] = np.arange(len(cg))
    return rank


@dataclass(frozen=True)
class ColorAssignment:
    """``held[i, c]`` is True when vertex ``i`` acquired slot ``c + 1``."""

    k: int
    held: np.ndarray

    def acquired(self, i: int) -> set[int]:
        return {int(c) + 1 for c in np.flatnonzero(self.held[i])}

    @cached_property
    def counts(self) -> np.ndarray:
        return self.held.sum(axis=1)

    def is_proper(self, cg: ConsolidatedGraph) -> bool:
        for i, nbrs in enumerate(cg.adj):
            for j in nbrs:
                if i < j and np.any(self.held[i] & self.held[j]):
                    return False
        return True

    def to_csv_rows(self, cg: ConsolidatedGraph) -> list[list]:
        return [
            [w.label(), self.k, int(c), int(c) / self.k]
            for w, c in zip(cg.vertices, self.counts)
        ]


def _wins(own: np.ndarray, own_rank: int, other: np.ndarray, other_rank: int) -> np.ndarray:
    return (own < other) | ((own == other) & (own_rank < other_rank))


def acquire(own: np.ndarray, own_rank: int, neighbors: list[tuple[np.ndarray, int]]) -> np.ndarray:
    """Slots a vertex takes given only its own vector and its neighbors' vectors."""
    held = np.ones(own.shape, dtype=bool)
    for vec, rank in neighbors:
        held &= _wins(own, own_rank, vec, rank)
    return held


def multicolor(cg: ConsolidatedGraph, vertex_vectors: np.ndarray) -> ColorAssignment:
    if len(cg) == 0:
        return ColorAssignment(vertex_vectors.shape[1] if vertex_vectors.ndim == 2 else 0, np.zeros((0, 0), bool))
    k = vertex_vectors.shape[1]
    rank = tie_rank(cg)
    held = np.empty((len(cg), k), dtype=bool)
    for i, nbrs in enumerate(cg.adj):
        held[i] = acquire(
            vertex_vectors[i], int(rank[i]), [(vertex_vectors[j], int(rank[j])) for j in nbrs]
        )
    return ColorAssignment(k, held)


def schedule(cg: ConsolidatedGraph, k: int, nbar: int, seed: int) -> ColorAssignment:
    """Draw user vectors, lift them to sub-networks and multicolor."""
    users = cg.origin.n
    vectors = draw_vectors(users, k, nbar, seed)
    return multicolor(cg, assign_clique_vectors(cg, vectors))
