"""Quadratic character sums over truncated Laurent series, direct and via ranks.

A polynomial in F2[T] is a packed int (bit j = coefficient of T^j).  The
character of ``t * P`` reads the T^-1 coefficient of the product, which for
``t = sum alpha_i T^-i`` is the parity of ``alpha & P`` once alpha is packed
with bit i-1 = alpha_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .build import CoefficientPair, ShapeParams, block_rows, sum_row
from .gf2 import row_rank
from .oracle import check_budget


def clmul(a: int, b: int) -> int:
    """Carry-less product of two F2[T] polynomials."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def residue_bit(coeffs: int, poly: int, length: int | None = None) -> int:
    """T^-1 coefficient of ``c * poly`` where ``c = sum coeffs_i T^-i``.

    ``coeffs`` is packed (bit i-1 = c_i).  If ``length`` is given, the
    coefficient vector must reach index ``deg(poly) + 1``.
    """
    if poly < 0:
        raise ValueError("polynomials are nonnegative bit masks")
    if length is not None and poly.bit_length() > length:
        raise ValueError(f"need {poly.bit_length()} coefficients, have {length}")
    return (coeffs & poly).bit_count() & 1


def character(coeffs: int, poly: int) -> int:
    return -1 if residue_bit(coeffs, poly) else 1


@dataclass(frozen=True)
class Degree:
    """``deg <= d`` (``exact=False``, zero included) or ``deg = d`` (top bit set)."""

    d: int
    exact: bool = False

    def polys(self) -> range:
        if self.exact:
            return range(1 << self.d, 1 << (self.d + 1)) if self.d >= 0 else range(0)
        return range(0, 1 << (self.d + 1)) if self.d >= -1 else range(0)

    def __str__(self):
        return f"deg {'=' if self.exact else '<='} {self.d}"


def _le(off: int):
    return lambda base: Degree(base + off, False)


def _eq(off: int):
    return lambda base: Degree(base + off, True)


# tag -> selectors for (Y, Z, U) as offsets from (k-1, s-1, s+m-1)
_TABLE = {
    "g": (_le(0), _le(0), _le(0)),
    "g1": (_le(0), _eq(0), _le(0)),
    "g2": (_le(0), _le(0), _eq(0)),
    "f1": (_le(0), _eq(0), _le(-1)),
    "f2": (_le(0), _le(-1), _eq(0)),
    "h": (_le(0), _eq(0), _eq(0)),
    "v": (_le(0), _le(-1), _le(-1)),
    "psi": (_eq(0), _le(0), _le(0)),
    "phi": (_eq(0), _le(0), _eq(0)),
    "phi1": (_eq(0), _le(0), _le(-1)),
    "phi2": (_le(-1), _le(0), _eq(0)),
    "theta1": (_eq(0), _eq(0), _le(-1)),
    "theta2": (_le(-1), _le(-1), _eq(0)),
    "theta3": (_le(-1), _eq(0), _le(-1)),
}

KINDS = tuple(_TABLE)


@dataclass(frozen=True)
class SumKind:
    tag: str

    def __post_init__(self):
        if self.tag not in _TABLE:
            raise ValueError(f"unknown sum kind {self.tag!r}; known: {', '.join(KINDS)}")

    def selectors(self, p: ShapeParams) -> tuple[Degree, Degree, Degree]:
        y, z, u = _TABLE[self.tag]
        return y(p.k - 1), z(p.s - 1), u(p.s + p.m - 1)


def _kind(kind: SumKind | str) -> SumKind:
    return kind if isinstance(kind, SumKind) else SumKind(kind)


def direct_work_bits(p: ShapeParams) -> int:
    """log2 bound on the products one direct evaluation touches."""
    return p.k + max(p.s, p.s + p.m) + 1


@lru_cache(maxsize=512)
def product_tables(tag: str, p: ShapeParams) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """For each admissible Y: the products ``Y*Z`` and ``Y*U`` over the kind's ranges."""
    ys, zs, us = (sel.polys() for sel in SumKind(tag).selectors(p))
    return tuple((tuple(clmul(y, z) for z in zs), tuple(clmul(y, u) for u in us)) for y in ys)


def exp_sum_direct(kind: SumKind | str, p: ShapeParams, c: CoefficientPair, budget_bits: int = 20) -> int:
    """The triple sum ``sum_Y (sum_Z E(tYZ)) (sum_U E(eta YU))`` evaluated term by term."""
    kind = _kind(kind)
    c.check_shape(p)
    check_budget(direct_work_bits(p), budget_bits, "direct exponential sum")
    total = 0
    for yz, yu in product_tables(kind.tag, p):
        a = sum(-1 if (c.alpha & v).bit_count() & 1 else 1 for v in yz)
        if a == 0:
            continue
        b = sum(-1 if (c.beta & v).bit_count() & 1 else 1 for v in yu)
        total += a * b
    return total


def _character_sums(values: np.ndarray, products: list[tuple[int, ...]]) -> np.ndarray:
    """``out[x, y] = sum over v in products[y] of (-1)^parity(x & v)``."""
    out = np.zeros((values.shape[0], len(products)), dtype=np.int64)
    for y, vs in enumerate(products):
        for v in vs:
            out[:, y] += 1 - 2 * (np.bitwise_count(values & np.uint64(v)) & 1).astype(np.int64)
    return out


def exp_sum_direct_table(kind: SumKind | str, p: ShapeParams, budget_bits: int = 22) -> np.ndarray:
    """The direct sum for every pair at once, indexed ``[beta, alpha]``.

    Same triple sum as :func:`exp_sum_direct`: the inner Z- and U-sums are
    tabulated per coefficient vector, then combined over Y as a matrix product.
    """
    kind = _kind(kind)
    check_budget(p.pair_bits, budget_bits, "exponential-sum table")
    tables = product_tables(kind.tag, p)
    alphas = np.arange(1 << p.alpha_len, dtype=np.uint64)
    betas = np.arange(1 << p.beta_len, dtype=np.uint64)
    za = _character_sums(alphas, [yz for yz, _ in tables])
    ub = _character_sums(betas, [yu for _, yu in tables])
    return ub @ za.T


def _signed(value_exp: int, same: bool, plus_one: bool) -> int:
    if same:
        return 1 << value_exp
    if plus_one:
        return -(1 << value_exp)
    return 0


def exp_sum_rank_formula(kind: SumKind | str, p: ShapeParams, c: CoefficientPair, memo: dict | None = None) -> int:
    """The same sum from ranks of persymmetric blocks built on ``c``.

    ``memo`` may be shared across kinds for one pair to avoid re-ranking.
    """
    kind = _kind(kind)
    c.check_shape(p)
    s, m, k = p.s, p.m, p.k
    e = 2 * s + m + k
    memo = {} if memo is None else memo

    def r(top: int, bottom: int, cols: int) -> int:
        key = (top, bottom, cols)
        if key not in memo:
            memo[key] = row_rank(block_rows(c, top, bottom, cols))
        return memo[key]

    tag = kind.tag
    if tag == "g":
        return 1 << (e - r(s, s + m, k))
    if tag == "v":
        return 1 << (e - 2 - r(s - 1, s + m - 1, k))
    if tag in ("g1", "g2"):
        full = r(s, s + m, k)
        other = r(s - 1, s + m, k) if tag == "g1" else r(s, s + m - 1, k)
        return 1 << (e - 1 - full) if other == full else 0
    if tag in ("f1", "f2", "h"):
        base = r(s - 1, s + m - 1, k)
        if tag == "f1":
            other = r(s, s + m - 1, k)
        elif tag == "f2":
            other = r(s - 1, s + m, k)
        else:
            other = row_rank(block_rows(c, s - 1, s + m - 1, k) + (sum_row(c, s, m, k),))
        return 1 << (e - 2 - base) if other == base else 0
    if tag == "psi":
        full = r(s, s + m, k)
        return 1 << (e - 1 - full) if full == r(s, s + m, k - 1) else 0
    if tag == "phi1":
        a = r(s, s + m - 1, k)
        return 1 << (e - 2 - a) if a == r(s, s + m - 1, k - 1) else 0
    if tag == "phi2":
        a = r(s, s + m, k - 1)
        return 1 << (e - 2 - a) if a == r(s, s + m - 1, k - 1) else 0
    if tag == "phi":
        j = r(s, s + m - 1, k - 1)
        if j != r(s, s + m - 1, k) or j != r(s, s + m, k - 1):
            return 0
        last = r(s, s + m, k)
        return _signed(e - j - 2, last == j, last == j + 1)
    if tag == "theta1":
        j = r(s - 1, s + m - 1, k - 1)
        if j != r(s - 1, s + m - 1, k) or j != r(s, s + m - 1, k - 1):
            return 0
        last = r(s, s + m - 1, k)
        return _signed(e - j - 3, last == j, last == j + 1)
    if tag in ("theta2", "theta3"):
        j = r(s - 1, s + m - 1, k - 1)
        other = r(s - 1, s + m, k - 1) if tag == "theta2" else r(s, s + m - 1, k - 1)
        return 1 << (e - 3 - j) if other == j else 0
    raise AssertionError(f"no rank formula for {tag}")


def all_pairs(p: ShapeParams, budget_bits: int = 22):
    """Every CoefficientPair of a (small) shape, in index order."""
    check_budget(p.pair_bits, budget_bits)
    for beta in range(1 << p.beta_len):
        for alpha in range(1 << p.alpha_len):
            yield CoefficientPair(alpha, beta, p.alpha_len, p.beta_len)


def compare_all(p: ShapeParams, kinds=KINDS, on_mismatch: Callable | None = None) -> int:
    """Count (pair, kind) mismatches between the two evaluators over every pair."""
    tables = {tag: exp_sum_direct_table(tag, p) for tag in kinds}
    bad = 0
    for c in all_pairs(p):
        memo: dict = {}
        for tag in kinds:
            d = int(tables[tag][c.beta, c.alpha])
            f = exp_sum_rank_formula(tag, p, c, memo)
            if d != f:
                bad += 1
                if on_mismatch:
                    on_mismatch(tag, c, d, f)
    return bad
