from __future__ import annotations

import pytest

from persymm.build import ShapeParams
from persymm.formulas import FormulaError, RankDistribution, gamma, gamma_distribution, gamma_s1, regime
from persymm.oracle import enumerate_rank_distribution


def test_tabulated_distributions():
    assert gamma_distribution(ShapeParams(3, 2, 4)).counts == (1, 9, 78, 648, 15648)
    assert gamma_distribution(ShapeParams(5, 0, 6)).counts == (1, 9, 78, 648, 5280, 42624, 999936)
    assert gamma_distribution(ShapeParams(2, 0, 2)).counts == (1, 9, 54)
    assert gamma_distribution(ShapeParams(2, 0, 1)).total() == 2**4


def test_rank_one_is_nine():
    for s in range(2, 7):
        for m in range(5):
            for k in range(2, 12):
                assert gamma(ShapeParams(s, m, k), 1) == 9


def test_out_of_range_ranks_are_zero():
    p = ShapeParams(2, 1, 3)
    assert gamma(p, -1) == 0
    assert gamma(p, p.max_rank + 1) == 0
    assert gamma(p, 0) == 1


def test_s1_tables():
    for k in range(2, 10):
        assert gamma_s1(0, k, 1) == 3 * (2**k - 1)
    for k in range(3, 10):
        assert gamma_s1(1, k, 3) == 2 ** (2 * k + 1) - 3 * 2 ** (k + 2) + 2**4
    assert gamma_s1(0, 2, 2) == 6
    # the single-column family is nonzero unless every coefficient vanishes
    for M in range(5):
        assert gamma_s1(M, 1, 1) == 2 ** (M + 2) - 1


@pytest.mark.parametrize("M", range(5))
def test_s1_matches_enumeration(M):
    for k in range(1, 9):
        p = ShapeParams(1, M, k)
        if p.pair_bits > 18:
            break
        assert tuple(enumerate_rank_distribution(p).counts) == tuple(gamma_s1(M, k, i) for i in range(p.max_rank + 1))


def test_square_branch_wins_at_k_equal_i():
    # rank 6 of the [5, 5] x 6 family sits in the square case, not the rectangular one
    p = ShapeParams(5, 0, 6)
    assert regime(p, 6).startswith("square")
    assert gamma(p, 6) == 999936


def test_every_distribution_in_small_box_matches_enumeration():
    for s in range(1, 4):
        for m in range(3):
            for k in range(1, 7):
                p = ShapeParams(s, m, k)
                if p.pair_bits <= 16:
                    assert gamma_distribution(p).counts == enumerate_rank_distribution(p).counts, p


def test_moment_check_catches_a_corrupted_table():
    p = ShapeParams(3, 2, 4)
    good = gamma_distribution(p)
    bad = RankDistribution(p, (1, 9, 78, 649, 15648))
    assert good.moments_ok()
    assert not bad.moments_ok()
    assert any("sum of counts" in msg for msg in bad.moment_failures())
    short = RankDistribution(p, (1, 9))
    assert not short.moments_ok()


def test_big_shapes_stay_exact():
    p = ShapeParams(30, 7, 30)
    dist = gamma_distribution(p)
    assert dist.total() == 2**p.pair_bits
    assert all(isinstance(n, int) and n >= 0 for n in dist.counts)


def test_formula_error_is_arithmetic():
    assert issubclass(FormulaError, ArithmeticError)
