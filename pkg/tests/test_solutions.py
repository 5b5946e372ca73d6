from __future__ import annotations

import pytest

from persymm.build import ShapeParams
from persymm.formulas import RankDistribution
from persymm.oracle import BudgetExceeded
from persymm.solutions import (
    SolutionCountQuery,
    count_solutions_bruteforce,
    count_solutions_formula,
    q1_closed_form,
    single_products,
)


def R(q, s, m, k, **kw):
    return count_solutions_formula(SolutionCountQuery(q, ShapeParams(s, m, k)), **kw)


def test_examples():
    assert R(3, 3, 2, 4) == 35_356_672
    assert R(4, 5, 0, 6) == 37_014_016 * 2**20
    assert R(2, 2, 0, 2) == 424
    assert R(1, 2, 0, 3) == 2**4 + 2**3 - 1


def test_q1_closed_form_everywhere():
    for s in range(1, 6):
        for m in range(4):
            for k in range(1, 12):
                p = ShapeParams(s, m, k)
                assert R(1, s, m, k) == q1_closed_form(p) == 2 ** (2 * s + m) + 2**k - 1


@pytest.mark.parametrize("method", ["naive", "convolve"])
def test_bruteforce_matches_formula(method):
    for q in (1, 2):
        for s, m, k in [(2, 0, 1), (2, 0, 2), (2, 1, 1), (2, 1, 2), (3, 0, 2), (1, 1, 2)]:
            query = SolutionCountQuery(q, ShapeParams(s, m, k))
            assert count_solutions_bruteforce(query, method=method) == count_solutions_formula(query)
    query = SolutionCountQuery(3, ShapeParams(2, 0, 1))
    assert count_solutions_bruteforce(query, method=method) == count_solutions_formula(query)


def test_convolve_reaches_larger_q():
    query = SolutionCountQuery(4, ShapeParams(2, 0, 2))
    assert count_solutions_bruteforce(query, budget_bits=40, method="convolve") == count_solutions_formula(query)


def test_zero_tuple_counts():
    p = ShapeParams(2, 1, 2)
    assert single_products(p)[0] == (0, 0)
    assert len(single_products(p)) == 2 ** (p.k + 2 * p.s + p.m)
    assert count_solutions_bruteforce(SolutionCountQuery(1, p)) >= 1


def test_monotone():
    base = (2, 2, 1, 3)
    for axis in range(4):
        bumped = list(base)
        bumped[axis] += 1
        assert R(*bumped) >= R(*base)


def test_refusals():
    with pytest.raises(ValueError):
        SolutionCountQuery(0, ShapeParams(2, 0, 2))
    with pytest.raises(BudgetExceeded):
        count_solutions_bruteforce(SolutionCountQuery(3, ShapeParams(3, 2, 4)))
    with pytest.raises(ValueError):
        count_solutions_bruteforce(SolutionCountQuery(1, ShapeParams(2, 0, 1)), method="clever")


def test_formula_uses_supplied_distribution():
    p = ShapeParams(2, 0, 2)
    fake = RankDistribution(p, (1, 9, 54))
    assert count_solutions_formula(SolutionCountQuery(2, p), fake) == 424
    skewed = RankDistribution(p, (2, 9, 53))
    assert count_solutions_formula(SolutionCountQuery(2, p), skewed) != 424
