"""Acceptance criteria 1-12, exact.  One PASS/FAIL line per criterion is
printed as it runs and repeated in the terminal summary."""
from __future__ import annotations

import pytest

from kapparing.verify import CHECKS

from conftest import ACCEPTANCE_LINES


def _run(chk, slow):
    ok, detail = chk.run(slow)
    tag = f"{chk.number}{' (slow part)' if slow else ''}"
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {tag}: {chk.title}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok, detail


@pytest.mark.parametrize("chk", CHECKS, ids=[f"criterion_{c.number:02d}" for c in CHECKS])
def test_criterion(chk):
    ok, detail = _run(chk, False)
    assert ok, detail


@pytest.mark.slow
@pytest.mark.parametrize("chk", [c for c in CHECKS if c.slow_part], ids=lambda c: f"criterion_{c.number:02d}_slow")
def test_criterion_slow(chk):
    ok, detail = _run(chk, True)
    assert ok, detail
