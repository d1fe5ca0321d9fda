"""Seeded graph families: line-clique, line-star, G(n, p), Barabasi-Albert, geometric."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .graph import ConflictGraph, GraphInputError, InterferenceNetwork
from .rng import make_rng

FAMILIES = ("line_clique", "line_star", "erdos_renyi", "barabasi_albert", "geometric")


def line_clique(N: int) -> ConflictGraph:
    """A path ``1..N-2`` with a triangle ``{N-2, N-1, N}`` hanging off its end."""
    if N < 4:
        raise GraphInputError("line_clique needs N >= 4")
    edges = [(i, i + 1) for i in range(N - 3)]
    edges += [(N - 3, N - 2), (N - 2, N - 1), (N - 3, N - 1)]
    return ConflictGraph.from_edges(N, edges)


def line_star(N: int) -> ConflictGraph:
    """A path ``1..N-2`` whose last vertex carries two leaves ``N-1`` and ``N``."""
    if N < 4:
        raise GraphInputError("line_star needs N >= 4")
    edges = [(i, i + 1) for i in range(N - 3)]
    edges += [(N - 3, N - 2), (N - 3, N - 1)]
    return ConflictGraph.from_edges(N, edges)


def erdos_renyi(n: int, p: float, seed: int) -> ConflictGraph:
    if not 0.0 <= p <= 1.0:
        raise GraphInputError("p must lie in [0, 1]")
    if n < 1:
        raise GraphInputError("n must be >= 1")
    rng = make_rng(seed, "erdos_renyi")
    iu, ju = np.triu_indices(n, 1)  # row-major: lexicographic (i, j), i < j
    draws = rng.random(iu.size)
    hit = draws < p
    return ConflictGraph.from_edges(n, zip(iu[hit].tolist(), ju[hit].tolist()))


def barabasi_albert(n: int, m: int, seed: int) -> ConflictGraph:
    """Preferential attachment grown from a clique on ``m + 1`` vertices.

    Each arriving vertex makes ``m`` sequential degree-weighted draws without
    replacement among the vertices already present.
    """
    if not 1 <= m < n:
        raise GraphInputError("barabasi_albert needs 1 <= m < n")
    rng = make_rng(seed, "barabasi_albert")
    deg = np.zeros(n, dtype=np.int64)
    edges = [(i, j) for i in range(m + 1) for j in range(i + 1, m + 1)]
    deg[: m + 1] = m
    for v in range(m + 1, n):
        w = deg[:v].astype(float)
        targets = []
        for _ in range(m):
            cdf = np.cumsum(w)
            t = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
            t = min(t, v - 1)
            targets.append(t)
            w[t] = 0.0
        for t in targets:
            edges.append((t, v))
            deg[t] += 1
        deg[v] = m
    return ConflictGraph.from_edges(n, edges)


def geometric(n: int, d: float, seed: int) -> tuple[InterferenceNetwork, ConflictGraph]:
    """Uniform transmitters and receivers in the unit square.

    Transmitter ``i`` reaches receiver ``j`` when their distance is at most ``d``;
    users ``i != j`` conflict if either direction is connected.
    """
    if d <= 0:
        raise GraphInputError("d must be positive")
    if n < 1:
        raise GraphInputError("n must be >= 1")
    rng = make_rng(seed, "geometric")
    tx = rng.random((n, 2))
    rx = rng.random((n, 2))
    dist = np.linalg.norm(tx[:, None, :] - rx[None, :, :], axis=2)
    reach = dist <= d
    np.fill_diagonal(reach, True)
    links = frozenset((int(i), int(j)) for i, j in zip(*np.nonzero(reach)))
    net = InterferenceNetwork(
        n,
        links,
        tuple(map(tuple, tx.tolist())),
        tuple(map(tuple, rx.tolist())),
    )
    return net, net.conflict_graph()


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    p: float | None = None
    m: int = 1
    d: float | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise GraphInputError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.n < 1:
            raise GraphInputError("n must be >= 1")
        if self.family in ("line_clique", "line_star") and self.n < 4:
            raise GraphInputError(f"{self.family} needs n >= 4")
        if self.family == "erdos_renyi" and (self.p is None or not 0 <= self.p <= 1):
            raise GraphInputError("erdos_renyi needs 0 <= p <= 1")
        if self.family == "barabasi_albert" and not 1 <= self.m < self.n:
            raise GraphInputError("barabasi_albert needs 1 <= m < n")
        if self.family == "geometric" and (self.d is None or self.d <= 0):
            raise GraphInputError("geometric needs d > 0")

    def with_seed(self, seed: int) -> GenSpec:
        return GenSpec(self.family, self.n, self.p, self.m, self.d, seed)

    def params(self) -> str:
        """Compact family-specific parameter string for result tables."""
        if self.family == "erdos_renyi":
            return f"p={self.p:g}"
        if self.family == "barabasi_albert":
            return f"m={self.m}"
        if self.family == "geometric":
            return f"d={self.d:g}"
        return ""

    def build(self) -> ConflictGraph:
        if self.family == "line_clique":
            return line_clique(self.n)
        if self.family == "line_star":
            return line_star(self.n)
        if self.family == "erdos_renyi":
            return erdos_renyi(self.n, self.p, self.seed)
        if self.family == "barabasi_albert":
            return barabasi_albert(self.n, self.m, self.seed)
        return geometric(self.n, self.d, self.seed)[1]

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    @classmethod
    def from_dict(cls, data: dict) -> GenSpec:
        known = {"family", "n", "p", "m", "d", "seed"}
        unknown = set(data) - known
        if unknown:
            raise GraphInputError(f"unknown GenSpec fields: {sorted(unknown)}")
        return cls(**data)
