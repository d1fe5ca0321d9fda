"""Experiment configuration, the replicate pipeline, CSV/JSON output and
named figure presets."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Iterable, Sequence

from .cliques import singleton_graph, temp_graph
from .generators import GenSpec
from .graph import ConflictGraph, GraphInputError, max_degree, read_edge_list
from .metrics import (
    alpha_aggressive_ratio,
    alpha_aggressive_sum,
    alpha_conservative,
    alpha_dc,
    alpha_empirical,
    alpha_ms,
    ms_net_rate,
    ms_schedule,
    net_rate_bounds,
)
from .rng import derive_seed
from .scheduler import K_MAX_DEFAULT, assign_clique_vectors, draw_vectors, multicolor, slot_count
from .selection import aggressive_centralized, conservative_select

ALGORITHMS = ("dc", "ms", "conservative", "aggressive")


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    gen: GenSpec | str
    rho: list[int] = field(default_factory=lambda: [1])
    epsilon: float = 0.3
    algorithms: list[str] = field(default_factory=lambda: list(ALGORITHMS))
    replications: int = 1
    master_seed: int = 0
    slots_ms: int = 10_000
    capacities: list[float] | None = None
    output: str | None = None
    empirical: bool = True
    nbar: int | None = None
    k_max: int | None = K_MAX_DEFAULT
    timing: bool = False
    name: str = ""

    def validate(self) -> None:
        if isinstance(self.gen, str):
            if not Path(self.gen).is_file():
                raise ConfigError(f"graph file {self.gen!r} not found")
        elif not isinstance(self.gen, GenSpec):
            raise ConfigError("gen must be a GenSpec or an edge-list path")
        if self.replications < 1:
            raise ConfigError("replications must be >= 1")
        if not 0 < self.epsilon < 1:
            raise ConfigError("epsilon must lie in (0, 1)")
        if not self.rho or any(r < 0 for r in self.rho):
            raise ConfigError("rho must be a non-empty list of non-negative integers")
        bad = set(self.algorithms) - set(ALGORITHMS)
        if bad or not self.algorithms:
            raise ConfigError(f"unknown algorithms {sorted(bad)}; choose from {ALGORITHMS}")
        if self.slots_ms < 1:
            raise ConfigError("slots_ms must be >= 1")
        if self.nbar is not None and self.nbar < 2:
            raise ConfigError("nbar must be >= 2")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["gen"] = self.gen if isinstance(self.gen, str) else self.gen.to_dict()
        return d

    @classmethod
    def from_dict(cls, data: dict) -> ExperimentConfig:
        data = dict(data)
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "gen" not in data:
            raise ConfigError("config needs a 'gen' entry")
        gen = data["gen"]
        try:
            data["gen"] = gen if isinstance(gen, str) else GenSpec.from_dict(gen)
        except (GraphInputError, TypeError) as exc:
            raise ConfigError(f"bad gen: {exc}") from None
        if isinstance(data.get("rho"), int):
            data["rho"] = [data["rho"]]
        cfg = cls(**data)
        cfg.validate()
        return cfg

    @classmethod
    def from_json(cls, path: str | Path) -> ExperimentConfig:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        return cls.from_dict(data)


@dataclass
class MetricsRow:
    family: str
    n: int
    params: str
    seed: int
    rho: int
    epsilon: float
    algorithm: str
    alpha_ideal_num: int | None = None
    alpha_ideal_den: int | None = None
    alpha_ideal: float | None = None
    alpha_eps: float | None = None
    alpha_empirical: float | None = None
    net_lower: float | None = None
    net_upper: float | None = None
    max_degree_G: int | None = None
    max_degree_Grho: int | None = None
    runtime_ms: float | None = None
    replicate: int = 0
    alpha_sum_ideal: float | None = None
    error: str = ""


COLUMNS = [f.name for f in fields(MetricsRow)]


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def rows_to_csv(rows: Iterable[MetricsRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([_fmt(getattr(r, c)) for c in COLUMNS])
    return buf.getvalue()


def rows_to_json(rows: Iterable[MetricsRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=1, sort_keys=False) + "\n"


def _graph_for(cfg: ExperimentConfig, seed: int) -> tuple[ConflictGraph, str, str]:
    if isinstance(cfg.gen, str):
        return read_edge_list(cfg.gen), "file", Path(cfg.gen).name
    spec = cfg.gen.with_seed(seed)
    return spec.build(), spec.family, spec.params()


def run_replicate(cfg: ExperimentConfig, rep: int) -> list[MetricsRow]:
    """All rows for one replicate, in (rho, algorithm) order."""
    seed = derive_seed(cfg.master_seed, rep, "graph")
    family = cfg.gen if isinstance(cfg.gen, str) else cfg.gen.family
    n = 0 if isinstance(cfg.gen, str) else cfg.gen.n
    try:
        g, family, params = _graph_for(cfg, seed)
    except Exception as exc:  # recorded, never dropped
        return [MetricsRow(family, n, "", seed, -1, cfg.epsilon, "", replicate=rep, error=f"generation: {exc}")]

    eps = cfg.epsilon
    delta_g = max_degree(g)
    nbar = max(cfg.nbar or g.n, 2)
    k = slot_count(nbar, eps, cfg.k_max)
    vector_cache: list = []
    ms_counts = None

    def vectors():
        if not vector_cache:
            vector_cache.append(draw_vectors(g.n, k, nbar, derive_seed(cfg.master_seed, rep, "vectors")))
        return vector_cache[0]

    def base(rho: int, algorithm: str) -> MetricsRow:
        return MetricsRow(family, g.n, params, seed, rho, eps, algorithm, max_degree_G=delta_g, replicate=rep)

    def fill(row: MetricsRow, ideal, scaled: float) -> None:
        row.alpha_ideal_num, row.alpha_ideal_den = ideal.numerator, ideal.denominator
        row.alpha_ideal = float(ideal)
        row.alpha_eps = scaled

    def colour(row: MetricsRow, sel) -> None:
        if not cfg.empirical or not g.n:
            return
        assign = multicolor(sel.consolidated, assign_clique_vectors(sel.consolidated, vectors()))
        row.alpha_empirical = float(alpha_empirical(assign, sel).ideal)
        bounds = net_rate_bounds(assign, sel, cfg.capacities)
        row.net_lower, row.net_upper = bounds.lower, bounds.upper

    rows = []
    for rho in cfg.rho:
        temp = None
        for algorithm in cfg.algorithms:
            row = base(rho, algorithm)
            t0 = time.perf_counter()
            try:
                if algorithm == "dc":
                    rep_a = alpha_dc(g, eps)
                    fill(row, rep_a.ideal, rep_a.eps_scaled)
                    row.max_degree_Grho = delta_g
                    colour(row, _singletons(g))
                elif algorithm == "ms":
                    if ms_counts is None:
                        ms_counts = ms_schedule(g, cfg.slots_ms, derive_seed(cfg.master_seed, rep, "ms"))
                    rep_a = alpha_ms(ms_counts, cfg.slots_ms)
                    fill(row, rep_a.ideal, rep_a.eps_scaled)
                    row.alpha_empirical = rep_a.eps_scaled
                    row.net_lower = row.net_upper = ms_net_rate(ms_counts, cfg.slots_ms, cfg.capacities)
                else:
                    if temp is None:
                        temp = temp_graph(g, rho)
                    if algorithm == "conservative":
                        sel = conservative_select(temp, g, rho)
                        rep_a = alpha_conservative(sel, eps)
                    else:
                        sel = aggressive_centralized(temp, g, rho)
                        rep_a = alpha_aggressive_ratio(sel, eps)
                        row.alpha_sum_ideal = float(alpha_aggressive_sum(sel, eps).ideal)
                    fill(row, rep_a.ideal, rep_a.eps_scaled)
                    row.max_degree_Grho = sel.consolidated.max_degree
                    colour(row, sel)
            except Exception as exc:  # recorded, never dropped
                row.error = f"{type(exc).__name__}: {exc}"
            if cfg.timing:
                row.runtime_ms = (time.perf_counter() - t0) * 1000.0
            rows.append(row)
    return rows


def _singletons(g: ConflictGraph):
    from .selection import SelectionResult

    cg = singleton_graph(g)
    return SelectionResult(cg, {u: (u,) for u in range(g.n)}, "dc", 0)


def run_experiment(cfg: ExperimentConfig, jobs: int = 1) -> list[MetricsRow]:
    """Rows for every replicate, ordered by (replicate, rho, algorithm) whatever ``jobs`` is."""
    cfg.validate()
    reps = range(cfg.replications)
    if jobs <= 1 or cfg.replications == 1:
        chunks = [run_replicate(cfg, r) for r in reps]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(run_replicate, [cfg] * cfg.replications, reps))
    return [row for chunk in chunks for row in chunk]


def summarize(rows: Sequence[MetricsRow]) -> list[dict]:
    """Mean ideal / empirical / net values per (family, n, params, rho, algorithm)."""
    groups: dict[tuple, list[MetricsRow]] = {}
    for r in rows:
        if r.error:
            continue
        groups.setdefault((r.family, r.n, r.params, r.rho, r.algorithm), []).append(r)

    def mean(vals):
        vals = [v for v in vals if v is not None]
        return sum(vals) / len(vals) if vals else None

    out = []
    for (family, n, params, rho, algorithm), rs in groups.items():
        out.append(
            {
                "family": family,
                "n": n,
                "params": params,
                "rho": rho,
                "algorithm": algorithm,
                "replicates": len(rs),
                "alpha_ideal": mean(r.alpha_ideal for r in rs),
                "alpha_sum_ideal": mean(r.alpha_sum_ideal for r in rs),
                "alpha_empirical": mean(r.alpha_empirical for r in rs),
                "net_lower": mean(r.net_lower for r in rs),
                "net_upper": mean(r.net_upper for r in rs),
            }
        )
    return out


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------


def _net_preset(name: str, specs: list[GenSpec]) -> tuple[ExperimentConfig, ...]:
    return tuple(
        ExperimentConfig(gen=s, rho=[1], replications=100, master_seed=2014, empirical=True, name=name)
        for s in specs
    )


def figure_recipes() -> dict[str, tuple[ExperimentConfig, ...]]:
    """One preset per figure; each preset holds one config per graph setting.

    The scale-free presets assume attachment count m = 1.
    """
    alpha_settings = [
        GenSpec("erdos_renyi", 20, p=0.1),
        GenSpec("erdos_renyi", 20, p=0.5),
        GenSpec("erdos_renyi", 20, p=0.9),
        GenSpec("barabasi_albert", 100, m=1),
        GenSpec("geometric", 20, d=0.25),
        GenSpec("geometric", 20, d=0.5),
    ]
    return {
        "exgraphs": tuple(
            ExperimentConfig(
                gen=GenSpec(fam, 20),
                rho=[0, 1, 2, 3],
                algorithms=["dc", "conservative", "aggressive"],
                empirical=False,
                name="exgraphs",
            )
            for fam in ("line_clique", "line_star")
        ),
        "randomalphacomp": tuple(
            ExperimentConfig(gen=s, rho=[1], replications=100, master_seed=2014, empirical=False, name="randomalphacomp")
            for s in alpha_settings
        ),
        "rg_p01_net": _net_preset("rg_p01_net", [GenSpec("erdos_renyi", n, p=0.1) for n in (5, 10, 20)]),
        "rg_p09_net": _net_preset("rg_p09_net", [GenSpec("erdos_renyi", n, p=0.9) for n in (5, 10, 20)]),
        "scalefree_net": _net_preset("scalefree_net", [GenSpec("barabasi_albert", n, m=1) for n in (25, 50, 100)]),
        "geo_d025_net": _net_preset("geo_d025_net", [GenSpec("geometric", n, d=0.25) for n in (10, 20, 30)]),
    }


def get_preset(name: str) -> tuple[ExperimentConfig, ...]:
    presets = figure_recipes()
    if name not in presets:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(sorted(presets))}")
    return presets[name]
