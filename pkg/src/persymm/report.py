"""Rendering of Γ tables, solution counts and verification results.

Counts are written as decimal strings in JSON so consumers never overflow.
JSON is rendered with a fixed layout, so parsing and re-rendering a report
reproduces it byte for byte.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Sequence

from .build import ShapeParams
from .formulas import RankDistribution
from .verify import CheckResult, summarize

GAMMA_HEADER = ("s", "m", "k", "i", "gamma", "method")
COUNT_HEADER = ("q", "s", "m", "k", "count", "method")
CHECK_HEADER = ("check", "status", "params", "detail")


def render_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _params(p: ShapeParams) -> dict[str, int]:
    return {"s": p.s, "m": p.m, "k": p.k}


def gamma_report(dist: RankDistribution, method: str, indices: Sequence[int] | None = None, notes: dict | None = None) -> dict:
    p = dist.params
    idx = range(len(dist.counts)) if indices is None else indices
    bad = dist.moment_failures()
    report = {
        "params": _params(p),
        "method": method,
        "counts": {str(i): str(dist[i]) for i in idx},
        "checks": {"moments": "pass" if not bad else "fail"},
    }
    if bad:
        report["checks"]["moment_failures"] = bad
    if notes:
        report["notes"] = notes
    return report


def gamma_csv(report: dict) -> str:
    p = report["params"]
    rows = [(p["s"], p["m"], p["k"], i, v, report["method"]) for i, v in report["counts"].items()]
    return _csv(GAMMA_HEADER, rows)


def count_report(q: int, p: ShapeParams, value: int, method: str) -> dict:
    return {"params": {"q": q, **_params(p)}, "method": method, "count": str(value)}


def count_csv(report: dict) -> str:
    p = report["params"]
    return _csv(COUNT_HEADER, [(p["q"], p["s"], p["m"], p["k"], report["count"], report["method"])])


def verify_report(results: Sequence[CheckResult], config: dict) -> dict:
    return {
        "config": config,
        "checks": [
            {"check": r.name, "status": r.status, "params": list(r.params), "detail": r.detail} for r in results
        ],
        "summary": summarize(list(results)),
    }


def verify_text(results: Sequence[CheckResult]) -> str:
    lines = [r.line() for r in results]
    s = summarize(list(results))
    verdict = "OK" if s["fail"] == 0 else "FAILED"
    lines.append(f"{verdict}: {s['pass']} passed, {s['fail']} failed, {s['skip']} skipped")
    return "\n".join(lines) + "\n"


def verify_csv(results: Sequence[CheckResult]) -> str:
    rows = [(r.name, r.status, " ".join(str(x) for x in r.params), r.detail) for r in results]
    return _csv(CHECK_HEADER, rows)
