import os
import pathlib

import pytest

import remr

ROOT = pathlib.Path(os.environ.get("REMR_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))
GOLDEN = ROOT / "scenarios" / "remr-paper.scenario"


@pytest.fixture(scope="module")
def golden():
    return remr.load_scenario(str(GOLDEN))


def test_scenario_round_trip(golden):
    assert golden.plan_names == ["a", "b", "c"]
    assert golden.branch_count == 10
    assert remr.parse_scenario(golden.render()) == golden


def test_pmf_survival():
    p = remr.Pmf({0: 0.05, 1: 0.02, 3: 0.93})
    assert p.survival(0) == 1.0
    assert p.survival(2) == pytest.approx(0.93)
    assert p.support() == [0, 1, 3]


def test_evaluate_matches_oracles(golden):
    report = remr.evaluate(golden, 15, 25)
    values = [p.reliability for p in report.per_plan]
    assert report.global_reliability == pytest.approx(remr.union_reliability(values), abs=1e-12)
    for p in report.per_plan:
        assert remr.exact_reliability(golden, p.name, 15, 25) == pytest.approx(p.reliability, abs=1e-9)
        assert len(p.msvs) == p.msv_count


def test_vectors(golden):
    msvs = remr.minimal_vectors(golden, "b", 15, 25)
    feasible = remr.feasible_vectors(golden, "b", 15, 25)
    assert all(v in feasible for v in msvs)
    x, y = msvs[0]
    assert remr.total_time(golden, "b", 15, x, y).total <= 25


def test_rsdp_toy():
    p = remr.Pmf({0: 0.2, 1: 0.3, 2: 0.5})
    assert remr.rsdp_reliability([[1, 1], [2, 0]], [p, p]) == pytest.approx(0.74)
    assert remr.inclusion_exclusion_reliability([[1, 1], [2, 0]], [p, p]) == pytest.approx(0.74)


def test_simulate_is_deterministic(golden):
    a = remr.simulate(golden, 15, 25, trials=20000, seed=3)
    b = remr.simulate(golden, 15, 25, trials=20000, seed=3)
    assert a.estimate == b.estimate and a.successes == b.successes
    assert 0.0 <= a.estimate <= 1.0


def test_ingest():
    text = "timestamp,machine_id,cpu_usage\n0,m,0.0\n1,m,0.5\n2,m,0.5\n3,m,1.0\n"
    assert remr.ingest_trace(text, "m", levels=2, capacity=2) == remr.Pmf({0: 0.25, 1: 0.5, 2: 0.25})
    assert remr.machines_in(text) == ["m"]


def test_errors(golden):
    with pytest.raises(remr.ScenarioError):
        remr.parse_scenario("{}")
    with pytest.raises(remr.TraceError):
        remr.ingest_trace("timestamp,machine_id,cpu_usage\n0,m,0.5\n", "other")
    with pytest.raises(remr.GuardExceeded):
        remr.evaluate(golden, 15, 25, guard=10)
