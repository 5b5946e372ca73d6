from __future__ import annotations

from persymm.build import ShapeParams
from persymm.formulas import gamma
from persymm.verify import CheckResult, VerifyConfig, delta_k_independence, run_sweep, summarize

EXPECTED = {
    "moments", "recurrence", "reduction", "oracle", "difference", "sigma", "delta", "recurrence-sigma",
    "zero-pattern", "six-equal", "six-balance", "four-equal", "sum-row-doubling",
    "expsum", "expsum-split", "solutions", "delta-k-independence",
}


def test_sweep_covers_every_check():
    results = run_sweep(VerifyConfig(s_range=(2, 2), m_range=(1, 1), k_range=(1, 4)))
    assert {r.name for r in results} == EXPECTED
    assert summarize(results)["fail"] == 0


def test_failure_line_shows_both_values():
    def off_by_one(p, i):
        return gamma(p, i) + (i == 1)

    results = run_sweep(VerifyConfig(s_range=(2, 2), m_range=(0, 0), k_range=(2, 2), gamma_fn=off_by_one))
    line = next(r.line() for r in results if r.name == "oracle" and not r.ok)
    assert line == "FAIL oracle (2,0,2,1): formula 10 != oracle 9"


def test_delta_k_independence_small():
    results = delta_k_independence(2, 0)
    assert results and all(r.ok and r.status == "pass" for r in results)


def test_skip_is_not_a_failure():
    r = CheckResult("oracle", "skip", (4, 3, 9), "too big")
    assert r.ok and r.line().startswith("SKIP oracle (4,3,9)")
