"""Command line: ``persymm gamma``, ``persymm count``, ``persymm verify``.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 refused for budget.
"""

from __future__ import annotations

import argparse
import sys

from . import formulas, oracle, recurrence, report, solutions, verify
from .build import ShapeParams
from .formulas import RankDistribution

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
MAX_BUDGET_BITS = 30
GAMMA_METHODS = ("closed-form", "recurrence", "reduction", "oracle")
COUNT_METHODS = ("formula", "bruteforce")


class UsageError(ValueError):
    pass


def parse_range(text: str) -> tuple[int, int]:
    """``"A..B"`` or ``"A"`` into an inclusive ``(A, B)``."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B or A, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _budget(args) -> int:
    bits = args.budget_bits if args.budget_bits is not None else oracle.default_budget_bits()
    if not 0 <= bits <= MAX_BUDGET_BITS:
        raise UsageError(f"--budget-bits must be in [0, {MAX_BUDGET_BITS}], got {bits}")
    return bits


def _shape(args) -> ShapeParams:
    try:
        return ShapeParams(args.s, args.m, args.k)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _common(sp: argparse.ArgumentParser, formats=("csv", "json"), default="csv") -> None:
    sp.add_argument("--format", choices=formats, default=default)
    sp.add_argument("--budget-bits", type=int, default=None, help="log2 cap on enumerated items (default 26 or $PERSYMM_BUDGET_BITS)")
    sp.add_argument("--workers", type=int, default=1, help="oracle processes; 0 means one per CPU")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="persymm", description="Rank counts of double persymmetric matrices over F2.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gamma", help="print the rank distribution of one shape")
    for name in ("s", "m", "k"):
        g.add_argument(f"--{name}", type=int, required=True)
    g.add_argument("--i", type=int, default=None, help="print only this rank")
    g.add_argument("--method", choices=GAMMA_METHODS, default="closed-form")
    _common(g)

    c = sub.add_parser("count", help="number of solutions of the paired bilinear system")
    c.add_argument("--q", type=int, required=True)
    for name in ("s", "m", "k"):
        c.add_argument(f"--{name}", type=int, required=True)
    c.add_argument("--method", choices=COUNT_METHODS, default="formula")
    _common(c)

    v = sub.add_parser("verify", help="run the cross-check sweep")
    v.add_argument("--s-range", type=parse_range, default=(2, 3))
    v.add_argument("--m-range", type=parse_range, default=(0, 2))
    v.add_argument("--k-range", type=parse_range, default=(1, 6))
    _common(v, formats=("text", "csv", "json"), default="text")
    return ap


def _gamma_by(method: str, p: ShapeParams, budget: int, workers: int) -> tuple[RankDistribution, dict]:
    if method == "oracle":
        return oracle.enumerate_rank_distribution(p, budget, workers), {}
    if method == "closed-form":
        return formulas.gamma_distribution(p, check=False), {}
    if method == "recurrence":
        if p.s < 2:
            return formulas.gamma_distribution(p, check=False), {"s1": "s = 1 values come from the base tables"}
        counts = tuple(recurrence.gamma_via_recurrence(p, i) for i in range(p.max_rank + 1))
        return RankDistribution(p, counts), {}
    reduced = []
    counts = []
    for i in range(p.max_rank + 1):
        if p.s >= 2 and p.s + 1 <= i <= 2 * p.s + p.m and p.k >= i:
            counts.append(recurrence.gamma_via_reduction(p, i))
            reduced.append(i)
        else:
            counts.append(formulas.gamma(p, i))
    return RankDistribution(p, tuple(counts)), {"reduced_ranks": reduced}


def cmd_gamma(args) -> int:
    p = _shape(args)
    budget = _budget(args)
    dist, notes = _gamma_by(args.method, p, budget, args.workers)
    if args.i is not None and not 0 <= args.i:
        raise UsageError("--i must be >= 0")
    indices = None if args.i is None else [args.i]
    rep = report.gamma_report(dist, args.method, indices, notes or None)
    if args.format == "json":
        sys.stdout.write(report.render_json(rep))
    else:
        sys.stdout.write(report.gamma_csv(rep))
        print(f"moments: {rep['checks']['moments']}", file=sys.stderr)
    return EXIT_OK if rep["checks"]["moments"] == "pass" else EXIT_FAIL


def cmd_count(args) -> int:
    p = _shape(args)
    budget = _budget(args)
    try:
        query = solutions.SolutionCountQuery(args.q, p)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.method == "formula":
        value = solutions.count_solutions_formula(query)
    else:
        # the walk is single-threaded Python, so it keeps its own smaller default
        limit = solutions.DEFAULT_SOLUTION_BUDGET_BITS if args.budget_bits is None else budget
        value = solutions.count_solutions_bruteforce(query, limit)
    rep = report.count_report(args.q, p, value, args.method)
    sys.stdout.write(report.render_json(rep) if args.format == "json" else report.count_csv(rep))
    return EXIT_OK


def cmd_verify(args) -> int:
    budget = _budget(args)
    cfg = verify.VerifyConfig(
        s_range=args.s_range,
        m_range=args.m_range,
        k_range=args.k_range,
        budget_bits=budget,
        workers=args.workers,
    )
    for lo, _ in (cfg.s_range, cfg.k_range):
        if lo < 1:
            raise UsageError("s and k ranges must start at 1 or more")
    if cfg.m_range[0] < 0:
        raise UsageError("m range must start at 0 or more")
    results = verify.run_sweep(cfg)
    if args.format == "json":
        conf = {
            "s_range": list(cfg.s_range),
            "m_range": list(cfg.m_range),
            "k_range": list(cfg.k_range),
            "budget_bits": budget,
        }
        sys.stdout.write(report.render_json(report.verify_report(results, conf)))
    elif args.format == "csv":
        sys.stdout.write(report.verify_csv(results))
    else:
        sys.stdout.write(report.verify_text(results))
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


COMMANDS = {"gamma": cmd_gamma, "count": cmd_count, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"persymm: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except oracle.BudgetExceeded as e:
        print(f"persymm: refused: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as e:
        # PERSYMM_BUDGET_BITS or another environment setting is malformed
        print(f"persymm: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
