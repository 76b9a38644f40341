"""Acceptance criteria 1 to 10, one test each.

Every test records a pass/fail line that is printed in the terminal
summary.  Criteria 6 and 7 fail on this codebase; the reasons are in the
discrepancy list attached to each result.
"""

import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE
from crhom import criteria

TIME_LIMITS = {1: 5 * 13, 2: 120, 3: 600, 4: 60, 5: 600, 6: 120, 7: 30, 8: 120, 9: 600}


def _record(res):
    ACCEPTANCE[res.id] = res.line()
    print(res.line())
    for d in res.discrepancies:
        print("   ", d)


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n):
    fn = criteria.CRITERIA[n - 1]
    res = fn(0)
    in_time = res.elapsed < TIME_LIMITS[n]
    if n == 1:
        in_time = in_time and res.details["slowest_s"] < 5
    if not in_time:
        res.passed = False
    _record(res)
    assert res.passed, "\n".join(res.discrepancies) or res.line()


def test_criterion_10():
    t0 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "crhom", "verify-paper"], capture_output=True, text=True, timeout=600
    )
    elapsed = time.perf_counter() - t0
    passed = proc.returncode == 0 and elapsed < 600
    line = f"criterion 10 {'PASS' if passed else 'FAIL'}  verify-paper end to end  [{elapsed:.2f}s] exit {proc.returncode}"
    ACCEPTANCE[10] = line
    print(line)
    print(proc.stdout)
    assert passed, proc.stderr
