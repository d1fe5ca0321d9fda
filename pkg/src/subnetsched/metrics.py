"""Normalized sum-rate (analytic and measured), net sum-rate bounds, and the
distributed-coloring (DC) and maximal-schedule (MS) baselines.

Analytic rates are exact ``Fraction`` values taken in the eps -> 0 limit;
``eps_scaled`` applies the (1 - eps) factor the coloring guarantee carries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graph import ConflictGraph, max_degree
from .rng import make_rng
from .scheduler import ColorAssignment
from .selection import InvariantViolation, SelectionResult

FORMULAS = ("dc", "conservative", "aggressive_sum", "aggressive_ratio", "empirical", "migs")


@dataclass(frozen=True)
class AlphaReport:
    ideal: Fraction
    eps_scaled: float
    formula: str

    def __post_init__(self) -> None:
        if not 0 <= self.ideal <= 1:
            raise InvariantViolation(f"alpha {self.ideal} outside [0, 1]")
        if self.formula not in FORMULAS:
            raise ValueError(f"unknown formula tag {self.formula!r}")


def _analytic(ideal: Fraction, eps: float, formula: str) -> AlphaReport:
    return AlphaReport(ideal, (1 - eps) * float(ideal), formula)


def alpha_dc(g: ConflictGraph, eps: float = 0.0) -> AlphaReport:
    return _analytic(Fraction(1, max_degree(g) + 1), eps, "dc")


def alpha_conservative(sel: SelectionResult, eps: float = 0.0) -> AlphaReport:
    return _analytic(Fraction(1, sel.consolidated.max_degree + 1), eps, "conservative")


def _require_represented(sel: SelectionResult) -> None:
    for u in sel.users:
        if sel.a(u) == 0:
            raise InvariantViolation(f"user {u + 1} has no sub-network")


def alpha_aggressive_sum(sel: SelectionResult, eps: float = 0.0) -> AlphaReport:
    """Worst user's total share: min over u of sum over w containing u of 1/(deg w + 1)."""
    _require_represented(sel)
    cg = sel.consolidated
    inv = [Fraction(1, cg.degree(i) + 1) for i in range(len(cg))]
    ideal = min(sum((inv[i] for i in sel.representation[u]), Fraction(0)) for u in sel.users)
    return _analytic(min(ideal, Fraction(1)), eps, "aggressive_sum")


def alpha_aggressive_ratio(sel: SelectionResult, eps: float = 0.0) -> AlphaReport:
    """``min_u a(u) / max degree``, capped at 1.

    With rho = 0 nothing is consolidated and the rate is the plain coloring
    rate 1/(max degree + 1).
    """
    _require_represented(sel)
    delta = sel.consolidated.max_degree
    if sel.rho == 0:
        return _analytic(Fraction(1, delta + 1), eps, "aggressive_ratio")
    if delta == 0:
        return _analytic(Fraction(1), eps, "aggressive_ratio")
    ideal = Fraction(min(sel.a(u) for u in sel.users), delta)
    return _analytic(min(ideal, Fraction(1)), eps, "aggressive_ratio")


def user_slot_counts(assign: ColorAssignment, sel: SelectionResult) -> dict[int, int]:
    """Slots each user is active in: the sum over the sub-networks containing it."""
    counts = assign.counts
    return {u: int(sum(counts[i] for i in sel.representation[u])) for u in sel.users}


def alpha_empirical(assign: ColorAssignment, sel: SelectionResult) -> AlphaReport:
    slots = user_slot_counts(assign, sel)
    ideal = Fraction(min(slots.values()), assign.k) if slots else Fraction(1)
    return AlphaReport(ideal, float(ideal), "empirical")


def ms_schedule(g: ConflictGraph, T: int, seed: int, check: bool = False) -> np.ndarray:
    """Greedy maximal scheduling over ``T`` slots with a fresh random order each slot.

    Returns per-user active-slot counts. With ``check`` every slot's set is
    verified to be a maximal independent set.
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    rng = make_rng(seed, "maximal-schedule")
    adj = [np.fromiter(sorted(s), dtype=np.int64, count=len(s)) for s in g.adj]
    counts = np.zeros(g.n, dtype=np.int64)
    for _ in range(T):
        active = np.zeros(g.n, dtype=bool)
        blocked = np.zeros(g.n, dtype=bool)
        for u in rng.permutation(g.n):
            if not blocked[u]:
                active[u] = True
                blocked[u] = True
                blocked[adj[u]] = True
        if check:
            _check_maximal(g, active)
        counts += active
    return counts


def _check_maximal(g: ConflictGraph, active: np.ndarray) -> None:
    for u in range(g.n):
        hit = any(active[v] for v in g.adj[u])
        if active[u] and hit:
            raise InvariantViolation(f"slot schedules neighbors of {u + 1} together")
        if not active[u] and not hit:
            raise InvariantViolation(f"slot is not maximal: {u + 1} could be added")


def alpha_ms(counts: Sequence[int], T: int) -> AlphaReport:
    ideal = Fraction(int(min(counts)), T) if len(counts) else Fraction(1)
    return AlphaReport(ideal, float(ideal), "migs")


def ms_net_rate(counts: Sequence[int], T: int, capacities: Sequence[float] | None = None) -> float:
    """Average per-slot sum-rate of the maximal schedule (no intra-slot sharing)."""
    c = np.ones(len(counts)) if capacities is None else np.asarray(capacities, dtype=float)
    return float(np.dot(np.asarray(counts, dtype=float), c) / T)


@dataclass(frozen=True)
class NetRateBounds:
    lower: float
    upper: float
    capacities: dict[int, float] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        if self.lower < 0 or self.lower > self.upper + 1e-12:
            raise InvariantViolation(f"net bounds out of order: {self.lower} > {self.upper}")


def net_rate_bounds(
    assign: ColorAssignment, sel: SelectionResult, capacities: Sequence[float] | None = None
) -> NetRateBounds:
    """Per-slot average net sum-rate when sub-networks time-share (lower) or
    fully manage their interference (upper)."""
    users = sel.consolidated.origin.n
    cap = [1.0] * users if capacities is None else [float(c) for c in capacities]
    if len(cap) < users:
        raise ValueError(f"{len(cap)} capacities for {users} users")
    lower = upper = 0.0
    for w, slots in zip(sel.consolidated.vertices, assign.counts):
        total = sum(cap[u] for u in w.members)
        upper += slots * total
        lower += slots * total / len(w)
    k = assign.k
    return NetRateBounds(lower / k, upper / k, dict(enumerate(cap)))
