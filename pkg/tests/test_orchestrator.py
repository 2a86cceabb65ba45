import json

import pytest

from pipeline.orchestrator import BatchOrchestrator, ScenarioOutcome


@pytest.fixture
def scenario_files(scenario_dir, tmp_path):
    """Two short valid scenarios and one that fails validation."""
    base = json.loads((scenario_dir / "fig4_first_order.json").read_text(encoding="utf-8"))
    base["integration"]["t_end"] = 0.1
    base["integration"]["record_stride"] = 10
    base["outputs"]["plots"] = []

    paths = []
    for name, c in (("short_a", 0.5), ("short_b", 0.25)):
        doc = json.loads(json.dumps(base))
        doc["gains"]["c"] = c
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        paths.append(path)

    broken = json.loads(json.dumps(base))
    broken["integration"]["dt"] = -1.0
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(broken), encoding="utf-8")
    paths.append(path)
    return paths


def test_outcome_ok():
    assert ScenarioOutcome(scenario_id="a", path=None).ok
    assert not ScenarioOutcome(scenario_id="a", path=None, error="boom").ok


async def test_sequential_batch(scenario_files, tmp_path):
    orchestrator = BatchOrchestrator(max_workers=0)
    outcomes = await orchestrator.run_batch(scenario_files, tmp_path / "out")

    assert [o.scenario_id for o in outcomes] == ["short_a", "short_b", "broken"]
    assert outcomes[0].ok and outcomes[1].ok
    assert outcomes[0].bundle.directory == tmp_path / "out" / "short_a"
    assert (tmp_path / "out" / "short_b" / "trajectory.csv").exists()
    assert not outcomes[2].ok
    assert outcomes[2].error.startswith("SchemaError")


@pytest.mark.integration
async def test_parallel_batch_matches_sequential(scenario_files, tmp_path):
    valid = scenario_files[:2]
    sequential = await BatchOrchestrator(max_workers=0).run_batch(valid, tmp_path / "seq")
    parallel = await BatchOrchestrator(max_workers=2).run_batch(valid, tmp_path / "par")

    for a, b in zip(sequential, parallel):
        assert a.ok and b.ok
        csv_a = (a.bundle.directory / "trajectory.csv").read_bytes()
        csv_b = (b.bundle.directory / "trajectory.csv").read_bytes()
        assert csv_a == csv_b
