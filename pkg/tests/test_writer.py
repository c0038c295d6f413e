"""Tests for result file output."""

from __future__ import annotations

import json
import math

import pandas as pd

from phasekeep.experiments import (
    OutputFormat,
    ResultWriter,
    ScenarioConfig,
    ScenarioId,
    SweepSpec,
    run_parity_scan,
)

DIGEST = "ab" * 32


def _result(seed: int = 3):
    config = ScenarioConfig(
        scenario=ScenarioId.PARITY_SCAN,
        sweep=SweepSpec(name="analysis_phase_rad", start=0.0, stop=math.pi, points=8),
        shots=100,
        seed=seed,
    )
    return run_parity_scan(config)


def test_write_run_names_and_headers(tmp_path):
    written = ResultWriter(tmp_path / "out", DIGEST).write_run(_result())
    assert [p.name for p in written] == ["parity_scan_3.csv", "parity_scan_3.json"]

    lines = written[0].read_text(encoding="utf-8").splitlines()
    assert lines[0] == f"# config_sha256={DIGEST}"
    assert lines[1] == "# seed=3"
    assert lines[2] == "series,analysis_phase_rad,mean,stderr"
    assert len(lines) == 3 + 8

    payload = json.loads(written[1].read_text(encoding="utf-8"))
    assert payload["config_sha256"] == DIGEST
    assert payload["seed"] == 3
    assert payload["scenario"] == "parity_scan"
    assert payload["columns"] == ["series", "analysis_phase_rad", "mean", "stderr"]
    assert len(payload["rows"]) == 8
    assert set(payload["fits"]["parity"]) >= {"kind", "amplitude", "phase", "offset"}
    assert "amplitude" in payload["summary"]


def test_rewrite_is_byte_identical(tmp_path):
    first = ResultWriter(tmp_path / "a", DIGEST).write_run(_result())
    second = ResultWriter(tmp_path / "b", DIGEST).write_run(_result())
    for a, b in zip(first, second):
        assert a.read_bytes() == b.read_bytes()


def test_single_format(tmp_path):
    table = pd.DataFrame({"p": [157], "nu_b1_mhz": [161.665]})
    csv_only = ResultWriter(tmp_path, DIGEST, OutputFormat.CSV).write_table("plans", table)
    json_only = ResultWriter(tmp_path, DIGEST, "json").write_table("plans", table)
    assert [p.suffix for p in csv_only] == [".csv"]
    assert [p.suffix for p in json_only] == [".json"]
    assert "seed" not in json.loads(json_only[0].read_text(encoding="utf-8"))
    assert csv_only[0].read_text(encoding="utf-8").splitlines()[1:] == [
        "p,nu_b1_mhz",
        "157,161.665",
    ]


def test_write_document_header(tmp_path):
    path = ResultWriter(tmp_path / "docs", DIGEST).write_document("chain_x", "chain", {"a": 1})
    assert path.name == "chain_x.json"
    payload = json.loads(path.read_text(encoding="utf-8"))
    assert payload == {"config_sha256": DIGEST, "seed": None, "chain": {"a": 1}}
    seeded = ResultWriter(tmp_path, DIGEST).write_document("chain_y", "chain", [], seed=4)
    assert json.loads(seeded.read_text(encoding="utf-8"))["seed"] == 4
