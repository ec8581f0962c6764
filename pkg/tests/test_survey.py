from __future__ import annotations

import json

import pytest

from lamplighter.ring import ModN, parse_ring_spec
from lamplighter.survey import iter_parameter_sets, survey_parameters, survey_ring


def test_parameter_sets_are_ordered_with_b_fastest():
    params = list(iter_parameter_sets(ModN(3)))
    assert len(params) == 18
    assert [(str(p.r), str(p.a), str(p.b)) for p in params[:4]] == [
        ("1", "0", "0"),
        ("1", "0", "1"),
        ("1", "0", "2"),
        ("1", "1", "0"),
    ]
    assert str(params[-1].r) == "2"


def test_record_for_nonreversible_series(nonreversible_params):
    record = survey_parameters(nonreversible_params)
    assert record["ring"] == "zmod:6"
    assert record["params"] == {"r": "1", "a": "3", "b": "2"}
    assert record["ab_unit"]
    assert record["states"] == record["minimized_states"] == 6
    assert not record["reversible"]
    assert not record["inverse_reversible"]
    assert not record["predicted_reversible"]
    assert record["consistent"]


def test_record_for_degenerate_series(degenerate_params):
    record = survey_parameters(degenerate_params)
    assert not record["ab_unit"]
    assert record["minimized_states"] == 2
    assert not record["reversible"]
    assert not record["reversible_bruteforce"]
    assert record["consistent"]


@pytest.mark.parametrize(
    "spec_text",
    [f"zmod:{n}" for n in range(2, 13)] + ["gr:2:1:2", "gr:2:2:2", "gr:3:1:2"],
)
def test_reversibility_criteria_hold_across_rings(spec_text):
    summary = survey_ring(parse_ring_spec(spec_text), progress=False)
    assert summary["parameter_sets"] > 0
    assert summary["inconsistent"] == 0


def test_zmod3_summary_counts():
    summary = survey_ring(ModN(3), progress=False)
    assert summary == {
        "ring": "zmod:3",
        "parameter_sets": 18,
        "ab_unit": 12,
        "reversible": 12,
        "inverse_reversible": 12,
        "bireversible": 8,
        "inconsistent": 0,
    }


def test_survey_writes_jsonl_and_summary(tmp_path):
    path = tmp_path / "sweeps" / "z3.jsonl"
    path.parent.mkdir()
    path.write_text("stale\n")
    summary = survey_ring(ModN(3), jsonl_path=path, progress=False)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 18
    first = json.loads(lines[0])
    assert first["params"] == {"r": "1", "a": "0", "b": "0"}
    assert first["consistent"]
    written = json.loads((tmp_path / "sweeps" / "z3.summary.json").read_text())
    assert written == summary
