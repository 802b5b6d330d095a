"""Acceptance matrix: one test (and one summary line) per criterion 1-11."""

import pytest

from arithatiyah.runner import Options
from arithatiyah.suite import MANIFEST, RUNTIME_LIMITS, verify_suite

RESULTS = {}


@pytest.fixture(scope="module")
def suite():
    timings = {}
    doc = verify_suite(Options(seed=0), timings)
    for c in doc["criteria"]:
        RESULTS[c["id"]] = (c["passed"], timings.get(c["id"], 0.0))
    return {c["id"]: c for c in doc["criteria"]}, timings


@pytest.mark.parametrize("cid", sorted(MANIFEST), ids=lambda i: f"criterion-{i}")
def test_criterion(suite, cid):
    criteria, _ = suite
    c = criteria[cid]
    print(f"criterion {cid:>2}: {'PASS' if c['passed'] else 'FAIL'}  {MANIFEST[cid]}")
    assert c["passed"], c["details"]


@pytest.mark.parametrize("cid", sorted(RUNTIME_LIMITS), ids=lambda i: f"runtime-{i}")
def test_runtime_limit(suite, cid):
    _, timings = suite
    assert timings[cid] <= RUNTIME_LIMITS[cid], f"criterion {cid} took {timings[cid]:.2f}s"
