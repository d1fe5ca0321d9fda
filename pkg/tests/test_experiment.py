import csv
import io
import json
from dataclasses import replace

import pytest

from subnetsched.experiment import (
    ALGORITHMS,
    COLUMNS,
    ConfigError,
    ExperimentConfig,
    figure_recipes,
    get_preset,
    rows_to_csv,
    rows_to_json,
    run_experiment,
    summarize,
)
from subnetsched.generators import GenSpec
from subnetsched.graph import write_edge_list
from subnetsched.generators import line_clique

SPEC_COLUMNS = (
    "family n params seed rho epsilon algorithm alpha_ideal_num alpha_ideal_den alpha_ideal "
    "alpha_eps alpha_empirical net_lower net_upper max_degree_G max_degree_Grho runtime_ms"
).split()


def small_cfg(**kw):
    base = dict(gen=GenSpec("erdos_renyi", 10, p=0.3), rho=[0, 1], replications=3, master_seed=11, slots_ms=200)
    base.update(kw)
    return ExperimentConfig(**base)


def test_columns_cover_contract():
    assert COLUMNS[: len(SPEC_COLUMNS)] == SPEC_COLUMNS


def test_line_clique_aggressive_column():
    cfg = ExperimentConfig(gen=GenSpec("line_clique", 20), rho=[0, 1, 2, 3], algorithms=["aggressive"], empirical=False)
    rows = run_experiment(cfg)
    fr = [(r.alpha_ideal_num, r.alpha_ideal_den) for r in rows]
    assert fr == [(1, 4), (2, 5), (3, 7), (4, 9)]
    assert all(r.alpha_sum_ideal is not None for r in rows)


def test_row_count_and_order():
    rows = run_experiment(small_cfg())
    assert len(rows) == 3 * 2 * len(ALGORITHMS)
    keys = [(r.replicate, r.rho, ALGORITHMS.index(r.algorithm)) for r in rows]
    assert keys == sorted(keys)
    assert not any(r.error for r in rows)
    for r in rows:
        assert 0 <= r.alpha_ideal <= 1
        assert r.net_lower <= r.net_upper + 1e-12


def test_determinism_and_parallel_equivalence():
    cfg = small_cfg()
    a = rows_to_csv(run_experiment(cfg))
    b = rows_to_csv(run_experiment(cfg))
    c = rows_to_csv(run_experiment(cfg, jobs=3))
    assert a == b == c
    assert rows_to_csv(run_experiment(replace(cfg, master_seed=12))) != a


def test_replicate_seeds_differ():
    rows = run_experiment(small_cfg(rho=[1], algorithms=["dc"]))
    assert len({r.seed for r in rows}) == 3


def test_csv_and_json_shapes():
    rows = run_experiment(small_cfg(replications=1, rho=[1]))
    parsed = list(csv.DictReader(io.StringIO(rows_to_csv(rows))))
    assert len(parsed) == len(rows)
    assert parsed[0]["runtime_ms"] == ""
    js = json.loads(rows_to_json(rows))
    assert js[0]["family"] == "erdos_renyi" and set(js[0]) == set(COLUMNS)


def test_timing_optional():
    rows = run_experiment(small_cfg(replications=1, rho=[1], timing=True, algorithms=["dc"]))
    assert rows[0].runtime_ms is not None and rows[0].runtime_ms >= 0


def test_error_row_keeps_replicate():
    # 15 users but the vector bound says at most 10: the coloring step fails
    cfg = small_cfg(gen=GenSpec("erdos_renyi", 15, p=0.3), nbar=10, replications=2, rho=[1], algorithms=["dc", "aggressive"])
    rows = run_experiment(cfg)
    assert len(rows) == 4
    assert all(r.error for r in rows)
    assert {r.replicate for r in rows} == {0, 1}


def test_graph_file(tmp_path):
    path = tmp_path / "g.txt"
    write_edge_list(line_clique(8), path)
    rows = run_experiment(ExperimentConfig(gen=str(path), rho=[1], algorithms=["conservative"], empirical=False))
    assert rows[0].family == "file" and rows[0].n == 8
    assert (rows[0].alpha_ideal_num, rows[0].alpha_ideal_den) == (1, 3)


class TestConfig:
    @pytest.mark.parametrize(
        "kw",
        [
            dict(replications=0),
            dict(epsilon=0.0),
            dict(epsilon=1.0),
            dict(rho=[-1]),
            dict(rho=[]),
            dict(algorithms=["dc", "greedy"]),
            dict(gen="/nonexistent/graph.txt"),
            dict(nbar=1),
        ],
    )
    def test_invalid(self, kw):
        with pytest.raises(ConfigError):
            small_cfg(**kw).validate()

    def test_json_roundtrip(self, tmp_path):
        cfg = small_cfg(capacities=[1.0] * 10)
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(cfg.to_dict()))
        assert ExperimentConfig.from_json(path) == cfg

    def test_bad_json(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json(path)
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict({"gen": {"family": "line_clique", "n": 6}, "colour": 1})
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict({"rho": [1]})
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict({"gen": {"family": "line_clique", "n": 2}})

    def test_scalar_rho(self):
        cfg = ExperimentConfig.from_dict({"gen": {"family": "line_clique", "n": 6}, "rho": 2})
        assert cfg.rho == [2]


class TestPresets:
    def test_names(self):
        assert set(figure_recipes()) == {
            "exgraphs", "randomalphacomp", "rg_p01_net", "rg_p09_net", "scalefree_net", "geo_d025_net",
        }

    def test_randomalphacomp(self):
        gens = [c.gen for c in get_preset("randomalphacomp")]
        assert [(g.family, g.n, g.p, g.d) for g in gens] == [
            ("erdos_renyi", 20, 0.1, None),
            ("erdos_renyi", 20, 0.5, None),
            ("erdos_renyi", 20, 0.9, None),
            ("barabasi_albert", 100, None, None),
            ("geometric", 20, None, 0.25),
            ("geometric", 20, None, 0.5),
        ]
        assert all(c.replications == 100 and c.rho == [1] for c in get_preset("randomalphacomp"))

    def test_net_presets(self):
        assert [(c.gen.n, c.gen.p) for c in get_preset("rg_p09_net")] == [(5, 0.9), (10, 0.9), (20, 0.9)]
        assert [c.gen.n for c in get_preset("scalefree_net")] == [25, 50, 100]
        assert all(c.gen.m == 1 for c in get_preset("scalefree_net"))
        assert all(c.empirical for c in get_preset("geo_d025_net"))

    def test_unknown(self):
        with pytest.raises(ConfigError, match="exgraphs"):
            get_preset("fig9")

    def test_all_presets_validate(self):
        for cfgs in figure_recipes().values():
            for c in cfgs:
                c.validate()


def test_summarize_means():
    rows = run_experiment(small_cfg(rho=[1], algorithms=["dc"]))
    (s,) = summarize(rows)
    assert s["replicates"] == 3
    assert s["alpha_ideal"] == pytest.approx(sum(r.alpha_ideal for r in rows) / 3)
