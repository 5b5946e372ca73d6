"""Rank distributions of double persymmetric matrices over GF(2).

Closed forms, recurrences, a brute-force oracle, exponential sums and the
solution counts built on them.
"""

from __future__ import annotations

from .build import CoefficientPair, ShapeParams, double_persymmetric, persymmetric
from .formulas import FormulaError, RankDistribution, gamma, gamma_distribution
from .oracle import BudgetExceeded, enumerate_rank_distribution, partition_six_tuple, sigma_triples
from .recurrence import delta_remainder, gamma_difference, gamma_via_recurrence, gamma_via_reduction
from .solutions import SolutionCountQuery, count_solutions_bruteforce, count_solutions_formula

__all__ = [
    "BudgetExceeded",
    "CoefficientPair",
    "FormulaError",
    "RankDistribution",
    "ShapeParams",
    "SolutionCountQuery",
    "count_solutions_bruteforce",
    "count_solutions_formula",
    "delta_remainder",
    "double_persymmetric",
    "enumerate_rank_distribution",
    "gamma",
    "gamma_difference",
    "gamma_distribution",
    "gamma_via_recurrence",
    "gamma_via_reduction",
    "partition_six_tuple",
    "persymmetric",
    "sigma_triples",
]
