from __future__ import annotations

import pytest

from persymm.build import ShapeParams
from persymm.formulas import gamma
from persymm.oracle import enumerate_rank_distribution, sigma_triples
from persymm.recurrence import (
    delta_from_sigma,
    delta_remainder,
    gamma_difference,
    gamma_via_recurrence,
    gamma_via_reduction,
    reduction_boundary,
    reduction_target,
    sigma_diagonal,
)

BOX = [ShapeParams(s, m, k) for s in range(2, 5) for m in range(4) for k in range(1, 11)]


def test_three_paths_agree():
    for p in BOX:
        for i in range(p.max_rank + 1):
            want = gamma(p, i)
            assert gamma_via_recurrence(p, i) == want, (p, i)
            if p.s + 1 <= i <= 2 * p.s + p.m and p.k >= i:
                assert gamma_via_reduction(p, i) == want, (p, i)


def test_recurrence_examples():
    p = ShapeParams(3, 2, 4)
    assert [gamma_via_recurrence(p, i) for i in range(5)] == [1, 9, 78, 648, 15648]
    q = ShapeParams(2, 1, 5)
    assert tuple(gamma_via_recurrence(q, i) for i in range(6)) == enumerate_rank_distribution(q).counts


def test_reduction_examples():
    assert gamma_via_reduction(ShapeParams(3, 2, 4), 4) == 15648
    p = ShapeParams(2, 1, 6)
    assert gamma_via_reduction(p, 5) == gamma(p, 5) == enumerate_rank_distribution(p).counts[5]
    for s, m, k in [(2, 0, 7), (3, 1, 12), (4, 2, 15)]:
        p, n = ShapeParams(s, m, k), 2 * s + m
        assert gamma_via_reduction(p, n) == 8 ** (n - 2) * gamma(ShapeParams(1, 0, k - m - 2 * s + 2), 2)
    with pytest.raises(ValueError):
        reduction_target(ShapeParams(3, 2, 4), 3)
    with pytest.raises(ValueError):
        reduction_target(ShapeParams(3, 2, 4), 5)


def test_reduction_boundary_matches_closed_forms():
    for s in range(1, 6):
        for M in range(5):
            for K in range(s + 1, 14):
                q = ShapeParams(s, M, K)
                assert reduction_boundary(q, s + 1) == gamma(q, s + 1), q


def test_delta_edges():
    for s in range(2, 5):
        for m in range(3):
            n = 2 * s + m
            for k in range(n, n + 3):
                p = ShapeParams(s, m, k)
                assert delta_remainder(p, 0) == 1
                assert delta_remainder(p, n) == 8 * gamma(ShapeParams(s - 1, m, n - 2), n - 2)
    with pytest.raises(ValueError):
        delta_remainder(ShapeParams(2, 0, 3), 1, variant="other")
    with pytest.raises(ValueError):
        delta_remainder(ShapeParams(1, 0, 3), 1)


def test_sigma_closed_form_and_delta_on_small_shape():
    p = ShapeParams(2, 0, 3)
    table = sigma_triples(p)
    assert table.total() == 2**p.pair_bits
    assert table.get((0, 0, 0)) >= 1
    for i in range(p.max_rank + 1):
        assert table.get((i, i, i)) == sigma_diagonal(p, i)
        assert delta_from_sigma(lambda j: table.get((j, j, j)), i) == delta_remainder(p, i)


def test_unadjusted_variant_differs_only_by_three_at_rank_one():
    for s in range(2, 5):
        for m in range(3):
            for k in range(2, 9):
                p = ShapeParams(s, m, k)
                assert delta_remainder(p, 1, "unadjusted") - delta_remainder(p, 1, "adjusted") == 3
                for i in range(2, p.max_rank + 1):
                    assert delta_remainder(p, i, "unadjusted") == delta_remainder(p, i, "adjusted")


def test_difference_examples():
    for s in range(2, 5):
        for m in range(4):
            for k in range(s, 12):
                p = ShapeParams(s, m, k)
                for j in range(min(s, k)):
                    assert gamma_difference(p, j) == 0
                if m == 0 and k > s:
                    assert gamma_difference(p, s) == 3 * 2 ** (k + s - 1)
                if m >= 2 and k > s + m:
                    assert gamma_difference(p, s + m) == 11 * 2 ** (k + s + 2 * m - 3)


def test_difference_needs_more_columns():
    with pytest.raises(ValueError):
        gamma_difference(ShapeParams(2, 0, 3), 3)
