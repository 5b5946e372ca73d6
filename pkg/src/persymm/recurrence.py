"""A second route to Γ: the rank recurrence with its remainder term, plus
the column-difference and reduction identities.

``gamma_via_recurrence`` never calls the s >= 2 closed forms.  It recurses on
(s, m) down to the s = 1 tables and builds every remainder from the same
recursion, so agreement with :func:`persymm.formulas.gamma` is a real check.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

from .build import ShapeParams
from .formulas import gamma, gamma_s1, p2, _integral

SquareGamma = Callable[[int], int]


def _square_lower(p: ShapeParams, source: Callable[[ShapeParams, int], int]) -> SquareGamma:
    """``j -> Γ_j`` of the ``[s-1 over s-1+m]`` family with exactly j columns."""

    def G(j: int) -> int:
        if j < 0:
            return 0
        if j == 0:
            return 1
        return source(ShapeParams(p.s - 1, p.m, j), j)

    return G


def _need_s2(p: ShapeParams, what: str) -> None:
    if p.s < 2:
        raise ValueError(f"{what} needs s >= 2, got {p}")


def sigma_diagonal(p: ShapeParams, i: int, source: Callable[[ShapeParams, int], int] = gamma) -> int:
    """Closed form for the number of pairs where all three nested ranks equal ``i``.

    The three matrices are ``D^{[s-1, s+m-1]}``, ``D^{[s, s+m-1]}`` and
    ``D^{[s, s+m]}``, each with k columns.
    """
    _need_s2(p, "sigma_diagonal")
    if i < 0:
        return 0
    if i == 0:
        return 1
    top = min(p.k, 2 * p.s + p.m - 2)
    if i > top:
        return 0
    G = _square_lower(p, source)
    return 4 * G(i) - (G(i + 1) if i < p.k else 0)


def delta_from_sigma(sigma: Callable[[int], int], i: int) -> int:
    """``σ_i - 3 σ_{i-1} + 2 σ_{i-2}`` with σ at negative index taken as 0."""

    def s_(j):
        return sigma(j) if j >= 0 else 0

    return s_(i) - 3 * s_(i - 1) + 2 * s_(i - 2)


DELTA_VARIANTS = ("adjusted", "unadjusted")


def delta_remainder(
    p: ShapeParams,
    i: int,
    variant: str = "adjusted",
    source: Callable[[ShapeParams, int], int] = gamma,
) -> int:
    """Remainder Δ_i of the recurrence, as a case table over square ``[s-1, s-1+m]`` counts.

    ``variant="adjusted"`` carries the ``-3`` in the ``i = 1, k >= 2`` case; the
    ``"unadjusted"`` variant omits it.  Only the first agrees with the
    σ-definition (checked against enumeration in the test suite), so it is the
    default and the one the recurrence uses.
    """
    _need_s2(p, "delta_remainder")
    if variant not in DELTA_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; choose from {DELTA_VARIANTS}")
    k = p.k
    N = 2 * p.s + p.m - 2
    if i < 0 or i > N + 2:
        return 0
    if k < i:
        raise ValueError(f"remainder Δ_{i} needs k >= i, got {p}")
    G = _square_lower(p, source)
    if i == 0:
        return 1
    if i == 1:
        if k == 1:
            return 4 * G(1) - 3
        return 4 * G(1) - G(2) - (3 if variant == "adjusted" else 0)
    if i == 2:
        base = 7 * G(2) - 12 * G(1) + 2
        return base - G(3) if k >= 3 else base
    if i == N + 2:
        return 8 * G(N)
    if i == N + 1:
        return -14 * G(N) + 8 * G(N - 1)
    body = 7 * G(i) - 14 * G(i - 1) + 8 * G(i - 2)
    if i == N:
        return body
    return body - G(i + 1) if k >= i + 1 else body


@lru_cache(maxsize=None)
def _rec(s: int, m: int, k: int, i: int) -> int:
    if i < 0 or i > min(2 * s + m, k):
        return 0
    if s == 1:
        return gamma_s1(m, k, i)
    p = ShapeParams(s, m, k)
    up = ShapeParams(s - 1, m + 1, k)
    side = ShapeParams.from_blocks(s, s + m - 1, k)
    low = ShapeParams(s - 1, m, k)
    delta = delta_remainder(p, i, "adjusted", source=_rec_shape)
    return (
        2 * _rec(up.s, up.m, up.k, i - 1)
        + 4 * _rec(side.s, side.m, side.k, i - 1)
        - 8 * _rec(low.s, low.m, low.k, i - 2)
        + delta
    )


def _rec_shape(p: ShapeParams, i: int) -> int:
    return _rec(p.s, p.m, p.k, i)


def gamma_via_recurrence(p: ShapeParams, i: int) -> int:
    """Γ_i from the recurrence, bottoming out in the s = 1 tables.

    The ``[s over s+(m-1)]`` term at m = 0 is the ``[s over s-1]`` family,
    counted as ``[s-1 over s]`` since swapping blocks keeps the rank.
    """
    return _rec(p.s, p.m, p.k, i)


# -------------------------------------------------------------- differences


def gamma_difference(p: ShapeParams, i: int) -> int:
    """Closed form for Γ_i with k+1 columns minus Γ_i with k columns.

    ``i`` is the rank index.  Valid for s >= 2 and k > i (every case of the
    difference table needs exactly that).
    """
    _need_s2(p, "gamma_difference")
    s, m, k = p.s, p.m, p.k
    if not 0 <= i <= 2 * s + m:
        raise ValueError(f"rank index {i} out of range for {p}")
    if k <= i:
        raise ValueError(f"difference formula needs k > i, got k={k}, i={i}")
    if i <= s - 1:
        return 0
    j = i - s
    if m == 0:
        if j == 0:
            v = 3 * p2(k + s - 1)
        elif j <= s - 1:
            v = 21 * p2(k + s + 3 * j - 4)
        else:
            v = 3 * p2(2 * k + 2 * s - 2) - 3 * p2(k + 4 * s - 4)
    elif m == 1:
        if j == 0:
            v = p2(k + s - 1)
        elif j == 1:
            v = 11 * p2(k + s - 1)
        elif j <= s:
            v = 21 * p2(k + s + 3 * j - 5)
        else:
            v = 3 * p2(2 * k + 2 * s - 1) - 3 * p2(k + 4 * s - 2)
    elif j <= m:
        if j == 0:
            v = p2(k + s - 1)
        elif j <= m - 1:
            v = 3 * p2(k + s + 2 * j - 3)
        else:
            v = 11 * p2(k + s + 2 * m - 3)
    else:
        j -= m
        if j <= s - 1:
            v = 21 * p2(k + s + 2 * m + 3 * j - 4)
        else:
            v = 3 * p2(2 * k + 2 * s + m - 2) - 3 * p2(k + 4 * s + 2 * m - 4)
    return _integral(v, f"difference {p} i={i}")


# --------------------------------------------------------------- reductions


def reduction_target(p: ShapeParams, i: int) -> tuple[int, ShapeParams, int]:
    """``(factor, shape, rank)`` with Γ_i(p) = factor * Γ_rank(shape).

    For ``s+1 <= i <= s+m`` (j = i-s) the target is rank s+1 of
    ``[s over s+m-j+1]`` with k-j+1 columns, factor ``8^(j-1)``.  For
    ``i >= s+m+1`` (j = i-s-m-1) it is rank s-j+1 of the square
    ``[s-j over s-j]`` family with k-m-2j columns, factor ``8^(2j+m)``.
    """
    _need_s2(p, "reduction")
    s, m, k = p.s, p.m, p.k
    if not s + 1 <= i <= 2 * s + m:
        raise ValueError(f"rank {i} is outside the reducible range [{s + 1}, {2 * s + m}]")
    if k < i:
        raise ValueError(f"reduction needs k >= i, got k={k}, i={i}")
    if i <= s + m:
        j = i - s
        return 8 ** (j - 1), ShapeParams(s, m - j + 1, k - j + 1), s + 1
    j = i - s - m - 1
    return 8 ** (2 * j + m), ShapeParams(s - j, 0, k - m - 2 * j), s - j + 1


def reduction_boundary(q: ShapeParams, rank: int) -> int:
    """Explicit values of the reduced counts, used to police the closed forms.

    ``q``/``rank`` are a target from :func:`reduction_target`.
    """
    s, M, K = q.s, q.m, q.k
    if rank != s + 1:
        raise ValueError("boundary values exist only at rank s+1")
    if K == s + 1:
        return _integral(p2(4 * s + M) - 3 * p2(3 * s - 1) + p2(2 * s - 1), f"boundary {q}")
    if M == 0:
        if s == 1:
            return _integral(p2(2 * K) - 3 * p2(K) + 2, f"boundary {q}")
        return _integral(21 * (p2(K + s - 1) + p2(3 * s - 1) - 5 * p2(2 * s - 1)), f"boundary {q}")
    if M == 1:
        # the 2s-1 coefficient is 53, matching the m = 1 closed form and enumeration
        return _integral(11 * p2(K + s - 1) + 21 * p2(3 * s - 1) - 53 * p2(2 * s - 1), f"boundary {q}")
    return _integral(3 * p2(K + s - 1) + 21 * (p2(3 * s - 1) - p2(2 * s - 1)), f"boundary {q}")


def gamma_via_reduction(p: ShapeParams, i: int) -> int:
    """Γ_i as a power of 8 times a lower-rank count taken from the closed forms."""
    factor, q, rank = reduction_target(p, i)
    return factor * gamma(q, rank)
