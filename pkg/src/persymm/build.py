"""Persymmetric (Hankel) blocks and the stacked double persymmetric family.

Coefficients use 1-based names (``alpha_1, alpha_2, ...``) everywhere outside
this module.  Storage is a packed int whose bit ``i - 1`` holds coefficient
``i``; this is the only place that offset is applied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .gf2 import BitMatrix, stack

Bits = Union[int, Sequence[int]]


def pack_bits(bits: Sequence[int]) -> int:
    """Pack ``(c_1, c_2, ...)`` into an int with bit ``i - 1`` = ``c_i``."""
    return sum((int(b) & 1) << i for i, b in enumerate(bits))


def unpack_bits(value: int, length: int) -> tuple[int, ...]:
    return tuple((value >> i) & 1 for i in range(length))


@dataclass(frozen=True)
class ShapeParams:
    """Shape of the family: ``s`` top rows, ``s + m`` bottom rows, ``k`` columns."""

    s: int
    m: int
    k: int

    def __post_init__(self):
        if self.s < 1 or self.m < 0 or self.k < 1:
            raise ValueError(f"invalid shape s={self.s}, m={self.m}, k={self.k} (need s>=1, m>=0, k>=1)")

    @classmethod
    def from_blocks(cls, top: int, bottom: int, k: int) -> "ShapeParams":
        """Normalize a ``[top over bottom]`` family to ``top <= bottom``.

        Rank is invariant under row permutations, so ``[a over b]`` with
        ``a > b`` counts the same as ``[b over a]``.
        """
        lo, hi = min(top, bottom), max(top, bottom)
        return cls(lo, hi - lo, k)

    @property
    def total_rows(self) -> int:
        return 2 * self.s + self.m

    @property
    def max_rank(self) -> int:
        return min(self.total_rows, self.k)

    @property
    def alpha_len(self) -> int:
        return self.k + self.s - 1

    @property
    def beta_len(self) -> int:
        return self.k + self.s + self.m - 1

    @property
    def pair_bits(self) -> int:
        """log2 of the number of coefficient pairs, ``2k + 2s + m - 2``."""
        return self.alpha_len + self.beta_len

    def __str__(self):
        return f"(s={self.s}, m={self.m}, k={self.k})"


@dataclass(frozen=True)
class CoefficientPair:
    """Truncated coefficients ``(alpha_1..alpha_{k+s-1}, beta_1..beta_{k+s+m-1})``."""

    alpha: int
    beta: int
    alpha_len: int
    beta_len: int

    def __post_init__(self):
        if not 0 <= self.alpha < (1 << self.alpha_len):
            raise ValueError("alpha has bits beyond its length")
        if not 0 <= self.beta < (1 << self.beta_len):
            raise ValueError("beta has bits beyond its length")

    @classmethod
    def for_shape(cls, p: ShapeParams, alpha: Bits = 0, beta: Bits = 0) -> "CoefficientPair":
        a = _as_packed(alpha, p.alpha_len, "alpha")
        b = _as_packed(beta, p.beta_len, "beta")
        return cls(a, b, p.alpha_len, p.beta_len)

    def alpha_bits(self) -> tuple[int, ...]:
        return unpack_bits(self.alpha, self.alpha_len)

    def beta_bits(self) -> tuple[int, ...]:
        return unpack_bits(self.beta, self.beta_len)

    def check_shape(self, p: ShapeParams) -> None:
        if self.alpha_len != p.alpha_len or self.beta_len != p.beta_len:
            raise ValueError(
                f"coefficient lengths ({self.alpha_len}, {self.beta_len}) do not match "
                f"shape {p}: expected ({p.alpha_len}, {p.beta_len})"
            )


def _as_packed(value: Bits, length: int, name: str) -> int:
    if isinstance(value, int):
        if value < 0 or value >= (1 << length):
            raise ValueError(f"{name} does not fit in {length} bits")
        return value
    if len(value) != length:
        raise ValueError(f"{name} must have exactly {length} coefficients, got {len(value)}")
    return pack_bits(value)


def hankel_rows(packed: int, rows: int, cols: int, offset: int = 1) -> tuple[int, ...]:
    """Packed rows of the persymmetric block whose (i, j) entry is ``c[offset + i + j - 2]``."""
    mask = (1 << cols) - 1
    return tuple((packed >> (offset - 1 + i)) & mask for i in range(rows))


def persymmetric(coeffs: Bits, rows: int, cols: int, offset: int = 1, length: int | None = None) -> BitMatrix:
    """The ``rows x cols`` block with constant anti-diagonals read from ``coeffs``.

    Entry (i, j), 1-based, is ``coeffs[offset + i + j - 2]``.  ``coeffs`` is a
    0/1 sequence starting at ``c_1`` or a packed int (then pass ``length``).
    """
    if offset < 1:
        raise ValueError("offset must be >= 1")
    if isinstance(coeffs, int):
        packed = coeffs
        have = length if length is not None else packed.bit_length()
    else:
        packed = pack_bits(coeffs)
        have = len(coeffs)
    if rows and cols:
        need = offset + rows + cols - 2
        if have < need:
            raise ValueError(f"need {need} coefficients for a {rows}x{cols} block at offset {offset}, got {have}")
    return BitMatrix.from_rows(hankel_rows(packed, rows, cols, offset), cols)


def block_rows(c: CoefficientPair, top: int, bottom: int, cols: int) -> tuple[int, ...]:
    """Rows of ``D^{[top over bottom] x cols}``: ``top`` alpha rows, then ``bottom`` beta rows."""
    if top + cols - 1 > c.alpha_len and top and cols:
        raise ValueError("alpha coefficients too short for requested block")
    if bottom + cols - 1 > c.beta_len and bottom and cols:
        raise ValueError("beta coefficients too short for requested block")
    return hankel_rows(c.alpha, top, cols) + hankel_rows(c.beta, bottom, cols)


def block(c: CoefficientPair, top: int, bottom: int, cols: int) -> BitMatrix:
    return BitMatrix.from_rows(block_rows(c, top, bottom, cols), cols)


def double_persymmetric(p: ShapeParams, c: CoefficientPair) -> BitMatrix:
    """The ``(2s+m) x k`` matrix: the s alpha rows stacked on the s+m beta rows."""
    c.check_shape(p)
    top = persymmetric(c.alpha, p.s, p.k, 1, c.alpha_len)
    bottom = persymmetric(c.beta, p.s + p.m, p.k, 1, c.beta_len)
    return stack(top, bottom)


def sum_row(c: CoefficientPair, s: int, m: int, cols: int) -> int:
    """Packed row ``(alpha_s + beta_{s+m}, ..., alpha_{s+cols-1} + beta_{s+m+cols-1})``."""
    mask = (1 << cols) - 1
    return ((c.alpha >> (s - 1)) ^ (c.beta >> (s + m - 1))) & mask


def augmented_sum_row_matrix(p: ShapeParams, c: CoefficientPair) -> BitMatrix:
    """``(2s+m-1) x k``: s-1 alpha rows, s+m-1 beta rows, then the alpha/beta sum row."""
    if p.s < 2:
        raise ValueError("the augmented matrix needs s >= 2")
    c.check_shape(p)
    rows = block_rows(c, p.s - 1, p.s + p.m - 1, p.k) + (sum_row(c, p.s, p.m, p.k),)
    return BitMatrix.from_rows(rows, p.k)
