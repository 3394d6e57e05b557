"""The fourteen acceptance criteria at their default scales, one PASS/FAIL line each."""

from __future__ import annotations

import json

import pytest

from reorilat.acceptance import CRITERIA, report_json, run_criterion


@pytest.mark.parametrize("number", [num for num, _, _ in CRITERIA], ids=lambda n: f"criterion-{n:02d}")
def test_criterion(number, capsys):
    res = run_criterion(number)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, json.dumps(res.details, default=str)[:2000]


def test_report_is_json():
    res = run_criterion(7)
    data = json.loads(report_json([res], max_vertices=None))
    assert data["criteria"][0]["passed"] is True
