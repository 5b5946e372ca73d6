"""Counting solutions of ``sum Y_i Z_i = 0, sum Y_i U_i = 0`` in F2[T].

The unknowns have ``deg Y_i <= k-1``, ``deg Z_i <= s-1``, ``deg U_i <= s+m-1``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product

from .build import ShapeParams
from .expsums import clmul
from .formulas import FormulaError, RankDistribution, gamma_distribution
from .oracle import check_budget

DEFAULT_SOLUTION_BUDGET_BITS = 24


@dataclass(frozen=True)
class SolutionCountQuery:
    q: int
    p: ShapeParams

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"q must be >= 1, got {self.q}")

    @property
    def tuple_bits(self) -> int:
        """log2 of the number of candidate tuples."""
        p = self.p
        return self.q * (p.k + p.s + p.s + p.m)


def count_solutions_formula(query: SolutionCountQuery, dist: RankDistribution | None = None) -> int:
    """R_q from the rank distribution, in integer arithmetic.

    ``2^((2s+m+k)(q-1) - k + 2 - qI) * sum_i Γ_i 2^(q(I-i))`` with ``I = min(2s+m, k)``.
    """
    p, q = query.p, query.q
    if dist is None:
        dist = gamma_distribution(p)
    cap = p.max_rank
    weighted = sum(g << (q * (cap - i)) for i, g in enumerate(dist.counts))
    shift = (2 * p.s + p.m + p.k) * (q - 1) - p.k + 2 - q * cap
    if shift >= 0:
        return weighted << shift
    if weighted % (1 << -shift):
        raise FormulaError(f"solution count for q={q}, {p} is not an integer")
    return weighted >> -shift


def single_products(p: ShapeParams) -> list[tuple[int, int]]:
    """``(Y*Z, Y*U)`` for every admissible triple, in lexicographic (Y, Z, U) order."""
    out = []
    for y in range(1 << p.k):
        yz = [clmul(y, z) for z in range(1 << p.s)]
        yu = [clmul(y, u) for u in range(1 << (p.s + p.m))]
        out.extend((a, b) for a in yz for b in yu)
    return out


def count_solutions_bruteforce(
    query: SolutionCountQuery,
    budget_bits: int | None = DEFAULT_SOLUTION_BUDGET_BITS,
    method: str = "naive",
) -> int:
    """Exact count by enumeration.

    ``naive`` walks the full q-fold product.  ``convolve`` tabulates the
    distribution of ``(YZ, YU)`` for one triple and XOR-convolves it q times;
    it is faster but derived, so the naive walk remains the reference.
    """
    check_budget(query.tuple_bits, budget_bits, "solution enumeration")
    singles = single_products(query.p)
    if method == "naive":
        hits = 0
        for combo in product(singles, repeat=query.q):
            a = b = 0
            for x, y in combo:
                a ^= x
                b ^= y
            hits += a == 0 and b == 0
        return hits
    if method == "convolve":
        one = Counter(singles)
        acc = Counter({(0, 0): 1})
        for _ in range(query.q):
            nxt: Counter = Counter()
            for (a, b), n in acc.items():
                for (x, y), w in one.items():
                    nxt[(a ^ x, b ^ y)] += n * w
            acc = nxt
        return acc[(0, 0)]
    raise ValueError(f"unknown method {method!r}; use 'naive' or 'convolve'")


def q1_closed_form(p: ShapeParams) -> int:
    """With one summand, YZ = YU = 0 forces Y = 0 or (Z, U) = 0."""
    return (1 << (2 * p.s + p.m)) + (1 << p.k) - 1
