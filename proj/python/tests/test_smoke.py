import math
import random
from pathlib import Path

import pytest

import rangenet as rn

DATA = Path(__file__).resolve().parents[2] / "data"


def test_metrics_examples():
    g = rn.NetworkSnapshot(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    assert rn.average_degree(g) == 2.0
    assert rn.average_clustering(g) == pytest.approx(7 / 12)
    assert rn.average_shortest_path_length(rn.NetworkSnapshot(3, [(0, 1), (1, 2)])) == pytest.approx(4 / 3)
    assert rn.components(rn.NetworkSnapshot(5, [(0, 1), (2, 3)])) == (3, 2)
    assert rn.small_world_index(rn.NetworkSnapshot(4, [])) is None

    row = rn.metrics_snapshot(rn.NetworkSnapshot(5, [(i, j) for i in range(5) for j in range(i + 1, 5)]))
    assert (row.avg_degree, row.clustering, row.aspl) == (4.0, 1.0, 1.0)
    assert (row.n_components, row.largest_component, row.small_world) == (1, 5, 1.0)


def test_snapshot_rejects_bad_edges():
    with pytest.raises(ValueError):
        rn.NetworkSnapshot(3, [(1, 1)])


def test_metrics_agree_with_networkx():
    nx = pytest.importorskip("networkx")
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 14)
        g = nx.gnp_random_graph(n, rng.random(), seed=rng.randint(0, 10**6))
        snap = rn.NetworkSnapshot(n, list(g.edges()))
        assert rn.average_clustering(snap) == pytest.approx(nx.average_clustering(g) if n else 0.0, abs=1e-12)
        comps = [len(c) for c in nx.connected_components(g)]
        assert rn.components(snap) == (len(comps), max(comps))
        lengths = [d for s, row in nx.all_pairs_shortest_path_length(g) for t, d in row.items() if s < t]
        expect = sum(lengths) / len(lengths) if lengths else 0.0
        assert rn.average_shortest_path_length(snap) == pytest.approx(expect, abs=1e-12)


def test_simulate_and_run_round():
    cfg = rn.SimConfig(model=rn.ModelKind.Range, n=20, g=10, r=2.0, steps=15, seed=3)
    snaps = rn.simulate(cfg, 0)
    assert len(snaps) == 15
    res = rn.run_round(cfg, 0, rn.SIConfig(p_infect=0.3))
    assert [r.timestep for r in res.metrics] == list(range(1, 16))
    freq = res.diffusion.frequency
    assert freq == sorted(freq)
    again = rn.run_round(cfg, 0, rn.SIConfig(p_infect=0.3))
    assert again.diffusion.frequency == freq


def test_invalid_config_raises():
    cfg = rn.SimConfig(n=101, g=10)
    with pytest.raises(ValueError):
        cfg.validate()
    with pytest.raises(ValueError):
        rn.run_round(rn.SimConfig(model=rn.ModelKind.Null, p_connect=1.5))


def test_aggregate_rounds():
    assert rn.aggregate_rounds([0.0, 4.0]) == {"mean": 2.0, "std": 2.0, "band": 3.0, "count": 2}
    assert rn.aggregate_rounds([])["mean"] is None


def test_paired_sweep(tmp_path):
    base = rn.SimConfig(n=15, g=10, steps=10, rounds=4, seed=2)
    out = tmp_path / "sweep.csv"
    rows = rn.run_sweep(base, "r", [1.0, 2.0], paired=True, small_world_refs=0, out=str(out))
    assert [r["model"] for r in rows] == ["range", "null", "range", "null"]
    assert rows[3]["config"].p_connect == pytest.approx(0.2)
    assert rows[0]["avg_degree"]["count"] == 4
    assert rows[0]["small_world"]["mean"] is None
    assert len(out.read_text().splitlines()) == 5


def test_potion_recipes_file():
    cfg = rn.PotionConfig(p_diff=0.5, recipes=str(DATA / "recipes_default.txt"))
    res = rn.run_round(rn.SimConfig(n=40, g=10, r=1.0, steps=100, seed=1), 0, cfg, metrics=False)
    assert len(res.diffusion.frequency) == 100
    with pytest.raises(OSError):
        rn.PotionConfig(recipes="/nonexistent/recipes.txt")


def test_cultural_signed_frequency_bounds():
    cfg = rn.SimConfig(model=rn.ModelKind.Null, n=10, p_connect=1.0, steps=50)
    res = rn.run_round(cfg, 0, rn.CulturalConfig(p_a=0.1, p_b=0.2), metrics=False)
    assert all(-1.0 <= f <= 1.0 for f in res.diffusion.frequency)
    assert all(math.isclose(f * 10, round(f * 10)) for f in res.diffusion.frequency)
