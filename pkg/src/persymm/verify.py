"""Cross-checks between every route to Γ and the enumerated ground truth.

Each check returns :class:`CheckResult` records instead of raising, so a
sweep can report everything at once.  Checks that need enumeration beyond the
budget come back as ``skip`` rather than silently passing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from .build import ShapeParams
from .expsums import KINDS, all_pairs, exp_sum_direct_table, exp_sum_rank_formula
from .formulas import FormulaError, RankDistribution, gamma
from .oracle import (
    BudgetExceeded,
    alpha_row_pair,
    check_budget,
    enumerate_rank_distribution,
    partition_six_tuple,
    sigma_augmented_row,
    sigma_triples,
)
from .recurrence import (
    delta_from_sigma,
    delta_remainder,
    gamma_difference,
    gamma_via_recurrence,
    gamma_via_reduction,
    sigma_diagonal,
)
from .solutions import SolutionCountQuery, count_solutions_bruteforce, count_solutions_formula

GammaFn = Callable[[ShapeParams, int], int]

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    params: tuple
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def line(self) -> str:
        tag = self.status.upper()
        where = ",".join(str(x) for x in self.params)
        return f"{tag} {self.name} ({where}){': ' + self.detail if self.detail else ''}"


@dataclass
class VerifyConfig:
    s_range: tuple[int, int] = (2, 3)
    m_range: tuple[int, int] = (0, 2)
    k_range: tuple[int, int] = (1, 6)
    budget_bits: int | None = None
    workers: int | None = 1
    expsum_bits: int = 12
    solution_bits: int = 16
    gamma_fn: GammaFn = field(default=gamma)

    def shapes(self) -> Iterable[ShapeParams]:
        for s in range(self.s_range[0], self.s_range[1] + 1):
            for m in range(self.m_range[0], self.m_range[1] + 1):
                for k in range(self.k_range[0], self.k_range[1] + 1):
                    yield ShapeParams(s, m, k)


def _key(p: ShapeParams) -> tuple[int, int, int]:
    return (p.s, p.m, p.k)


def _result(name: str, p: ShapeParams, ok: bool, detail: str = "", extra: tuple = ()) -> CheckResult:
    return CheckResult(name, PASS if ok else FAIL, _key(p) + extra, "" if ok else detail)


def _skip(name: str, p: ShapeParams, why: str, extra: tuple = ()) -> CheckResult:
    return CheckResult(name, SKIP, _key(p) + extra, why)


def _distribution(p: ShapeParams, fn: GammaFn) -> RankDistribution:
    return RankDistribution(p, tuple(fn(p, i) for i in range(p.max_rank + 1)))


# cached oracle calls; counts never depend on the worker count, so it is not part of the key
@lru_cache(maxsize=256)
def _oracle_gamma(p: ShapeParams, budget_bits: int | None) -> RankDistribution:
    return enumerate_rank_distribution(p, budget_bits, workers=_WORKERS[0])


@lru_cache(maxsize=256)
def _oracle_sigma(p: ShapeParams, budget_bits: int | None):
    return sigma_triples(p, budget_bits, workers=_WORKERS[0])


_WORKERS = [1]


def set_workers(n: int | None) -> None:
    _WORKERS[0] = n


def check_moments(p: ShapeParams, fn: GammaFn = gamma) -> list[CheckResult]:
    dist = _distribution(p, fn)
    bad = dist.moment_failures()
    return [_result("moments", p, not bad, "; ".join(bad))]


def check_paths(p: ShapeParams, fn: GammaFn = gamma) -> list[CheckResult]:
    """Closed form against the recurrence and, where it applies, the reduction."""
    out = []
    if p.s < 2:
        return out
    for i in range(p.max_rank + 1):
        a, b = fn(p, i), gamma_via_recurrence(p, i)
        out.append(_result("recurrence", p, a == b, f"closed-form {a} != recurrence {b}", (i,)))
        if p.s + 1 <= i <= 2 * p.s + p.m and p.k >= i:
            c = gamma_via_reduction(p, i)
            out.append(_result("reduction", p, a == c, f"closed-form {a} != reduction {c}", (i,)))
    return out


def check_oracle(p: ShapeParams, fn: GammaFn = gamma, budget_bits: int | None = None) -> list[CheckResult]:
    try:
        truth = _oracle_gamma(p, budget_bits)
    except BudgetExceeded as e:
        return [_skip("oracle", p, str(e))]
    mine = _distribution(p, fn)
    return [
        _result("oracle", p, a == b, f"formula {a} != oracle {b}", (i,))
        for i, (a, b) in enumerate(zip(mine.counts, truth.counts))
    ]


def check_differences(p: ShapeParams, fn: GammaFn = gamma) -> list[CheckResult]:
    out = []
    if p.s < 2:
        return out
    wider = ShapeParams(p.s, p.m, p.k + 1)
    for i in range(min(p.k - 1, 2 * p.s + p.m) + 1):
        got = fn(wider, i) - fn(p, i)
        want = gamma_difference(p, i)
        out.append(_result("difference", p, got == want, f"Γ(k+1)-Γ(k) = {got} != {want}", (i,)))
    return out


def sigma_delta(p: ShapeParams, budget_bits: int | None = None) -> dict[int, int]:
    """Remainders Δ_i computed from enumerated nested-rank counts."""
    table = _oracle_sigma(p, budget_bits)
    return {i: delta_from_sigma(lambda j: table.get((j, j, j)), i) for i in range(p.max_rank + 1)}


def check_delta(p: ShapeParams, budget_bits: int | None = None, fn: GammaFn = gamma) -> list[CheckResult]:
    """Enumerated σ against its closed form, Δ against the table, and the recurrence with enumerated Δ."""
    if p.s < 2:
        return []
    try:
        table = _oracle_sigma(p, budget_bits)
        truth = _oracle_gamma(p, budget_bits)
    except BudgetExceeded as e:
        return [_skip("delta", p, str(e))]
    out = []
    deltas = sigma_delta(p, budget_bits)
    s, m, k = p.s, p.m, p.k
    up = ShapeParams(s - 1, m + 1, k)
    side = ShapeParams.from_blocks(s, s + m - 1, k)
    low = ShapeParams(s - 1, m, k)

    def G(q: ShapeParams, i: int) -> int:
        return fn(q, i) if i >= 0 else 0

    for i in range(p.max_rank + 1):
        sig = table.get((i, i, i))
        want = sigma_diagonal(p, i, fn)
        out.append(_result("sigma", p, sig == want, f"enumerated {sig} != closed form {want}", (i,)))
        d = delta_remainder(p, i, "adjusted", fn)
        out.append(_result("delta", p, deltas[i] == d, f"enumerated {deltas[i]} != table {d}", (i,)))
        rec = 2 * G(up, i - 1) + 4 * G(side, i - 1) - 8 * G(low, i - 2) + deltas[i]
        out.append(_result("recurrence-sigma", p, rec == truth[i], f"{rec} != oracle {truth[i]}", (i,)))
    return out


def delta_k_independence(s: int, m: int, budget_bits: int | None = None, span: int = 3) -> list[CheckResult]:
    """Enumerated Δ_i is the same for k = i+1 .. i+span (k = i .. i+span-1 at the top three ranks)."""
    out = []
    N = 2 * s + m
    for i in range(N + 1):
        start = i + 1 if i <= N - 3 else max(i, 1)
        ks = range(start, start + span)
        p0 = ShapeParams(s, m, start)
        try:
            values = [sigma_delta(ShapeParams(s, m, k), budget_bits)[i] for k in ks]
        except BudgetExceeded as e:
            out.append(_skip("delta-k-independence", p0, str(e), (i,)))
            continue
        ok = len(set(values)) == 1
        out.append(_result("delta-k-independence", p0, ok, f"Δ_{i} over k={list(ks)}: {values}", (i,)))
    return out


def check_identities(p: ShapeParams, budget_bits: int | None = None) -> list[CheckResult]:
    """Zero pattern and partition identities on the enumerated joint-rank tables."""
    if p.s < 2 or p.k < 2:
        return []
    try:
        six = partition_six_tuple(p, budget_bits, _WORKERS[0])
        aug = sigma_augmented_row(p, budget_bits, _WORKERS[0])
        small = alpha_row_pair(p, budget_bits, _WORKERS[0])
    except BudgetExceeded as e:
        return [_skip("identities", p, str(e))]
    s, m, k = p.s, p.m, p.k
    N = 2 * s + m
    out = []
    for i in range(min(N - 3, k - 2) + 1):
        n = six.get((i, i + 1) * 3)
        out.append(_result("zero-pattern", p, n == 0, f"count {n} != 0", (i,)))
    for j in range(min(N - 2, k - 1) + 1):
        a = six.get((j,) * 6)
        b = six.get((j,) * 5 + (j + 1,))
        c = six.get((j, j, j, j + 1, j, j + 1))
        out.append(_result("six-equal", p, a == b, f"{a} != {b}", (j,)))
        out.append(_result("six-balance", p, a + b - c == 0, f"{a} + {b} - {c} != 0", (j,)))
    four = six.marginal((2, 3, 4, 5))
    for j in range(min(N - 1, k - 1) + 1):
        a, b = four.get((j,) * 4, 0), four.get((j, j, j, j + 1), 0)
        out.append(_result("four-equal", p, a == b, f"{a} != {b}", (j,)))
    for i in range(p.max_rank + 1):
        a, b = aug.get((i, i)), small.get((i, i))
        out.append(_result("sum-row-doubling", p, a == 2 * b, f"{a} != 2*{b}", (i,)))
    return out


def check_expsums(p: ShapeParams, limit_bits: int = 12) -> list[CheckResult]:
    if p.s < 2:
        return []
    try:
        check_budget(p.pair_bits, limit_bits, "exponential-sum sweep")
    except BudgetExceeded as e:
        return [_skip("expsum", p, str(e))]
    tables = {tag: exp_sum_direct_table(tag, p) for tag in KINDS}
    bad = []
    for c in all_pairs(p):
        memo: dict = {}
        for tag in KINDS:
            d, f = int(tables[tag][c.beta, c.alpha]), exp_sum_rank_formula(tag, p, c, memo)
            if d != f:
                bad.append(f"{tag} at alpha={c.alpha:#x} beta={c.beta:#x}: direct {d} != rank {f}")
    split = tables["h"] + tables["f1"] - tables["g1"]
    pointwise = [f"alpha={a:#x} beta={b:#x}" for b, a in zip(*split.nonzero())]
    return [
        _result("expsum", p, not bad, "; ".join(bad[:3]) + (f" (+{len(bad) - 3} more)" if len(bad) > 3 else "")),
        _result("expsum-split", p, not pointwise, "h + f1 != g1 at " + ", ".join(pointwise[:3])),
    ]


def check_solutions(p: ShapeParams, qs=(1, 2), limit_bits: int = 16, fn: GammaFn = gamma) -> list[CheckResult]:
    out = []
    for q in qs:
        query = SolutionCountQuery(q, p)
        try:
            brute = count_solutions_bruteforce(query, limit_bits, method="naive")
        except BudgetExceeded as e:
            out.append(_skip("solutions", p, str(e), (q,)))
            continue
        try:
            formula = count_solutions_formula(query, _distribution(p, fn))
        except FormulaError as e:
            out.append(_result("solutions", p, False, f"brute force {brute}, formula failed: {e}", (q,)))
            continue
        out.append(_result("solutions", p, brute == formula, f"brute force {brute} != formula {formula}", (q,)))
    return out


def run_sweep(cfg: VerifyConfig) -> list[CheckResult]:
    set_workers(cfg.workers)
    fn = cfg.gamma_fn
    results: list[CheckResult] = []
    for p in cfg.shapes():
        results += check_moments(p, fn)
        results += check_paths(p, fn)
        results += check_oracle(p, fn, cfg.budget_bits)
        results += check_differences(p, fn)
        results += check_delta(p, cfg.budget_bits, fn)
        results += check_identities(p, cfg.budget_bits)
        results += check_expsums(p, cfg.expsum_bits)
        results += check_solutions(p, limit_bits=cfg.solution_bits, fn=fn)
    for s in range(max(cfg.s_range[0], 2), cfg.s_range[1] + 1):
        for m in range(cfg.m_range[0], cfg.m_range[1] + 1):
            results += delta_k_independence(s, m, cfg.budget_bits)
    return results


def summarize(results: list[CheckResult]) -> dict[str, int]:
    out = {PASS: 0, FAIL: 0, SKIP: 0}
    for r in results:
        out[r.status] += 1
    return out
