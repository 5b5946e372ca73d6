"""Dense GF(2) matrices with rows packed into Python ints.

Bit ``j`` of row ``i`` holds entry ``(i, j)``.  Column counts are capped at
:data:`MAX_COLS` so a row always fits one machine word, which is what the
batched kernel below relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MAX_COLS = 64


@dataclass(frozen=True)
class BitMatrix:
    rows: int
    cols: int
    row_data: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if self.cols > MAX_COLS:
            raise ValueError(f"at most {MAX_COLS} columns supported, got {self.cols}")
        if len(self.row_data) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.row_data)}")
        limit = 1 << self.cols
        for r in self.row_data:
            if r < 0 or r >= limit:
                raise ValueError(f"row {r:#x} has bits outside {self.cols} columns")

    @classmethod
    def from_rows(cls, row_data: Iterable[int], cols: int) -> "BitMatrix":
        data = tuple(row_data)
        return cls(len(data), cols, data)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        """Build from a nested 0/1 list; ``entries[i][j]`` is entry (i, j)."""
        if cols is None:
            cols = len(entries[0]) if entries else 0
        packed = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged row")
            packed.append(sum((int(v) & 1) << j for j, v in enumerate(row)))
        return cls(len(packed), cols, tuple(packed))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def entry(self, i: int, j: int) -> int:
        return (self.row_data[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.row_data]

    def __str__(self):
        return "\n".join("".join(str(v) for v in row) for row in self.to_lists())


def row_rank(row_data: Iterable[int]) -> int:
    """GF(2) rank of the span of a collection of packed rows.

    Forward elimination keyed on the lowest set bit: each basis vector owns
    one pivot bit and every later row is cleared at that bit.
    """
    pivots: dict[int, int] = {}
    for x in row_data:
        while x:
            low = x & -x
            p = pivots.get(low)
            if p is None:
                pivots[low] = x
                break
            x ^= p
    return len(pivots)


def rank(m: BitMatrix) -> int:
    return row_rank(m.row_data)


def stack(top: BitMatrix, bottom: BitMatrix) -> BitMatrix:
    if top.cols != bottom.cols:
        raise ValueError(f"column mismatch: {top.cols} vs {bottom.cols}")
    return BitMatrix(top.rows + bottom.rows, top.cols, top.row_data + bottom.row_data)


def drop_leading_columns(m: BitMatrix, n: int) -> BitMatrix:
    """Keep the last ``cols - n`` columns."""
    if n < 0 or n > m.cols:
        raise ValueError(f"cannot drop {n} columns from a {m.cols}-column matrix")
    return BitMatrix(m.rows, m.cols - n, tuple(r >> n for r in m.row_data))


def keep_leading_columns(m: BitMatrix, n: int) -> BitMatrix:
    """Keep the first ``n`` columns."""
    if n < 0 or n > m.cols:
        raise ValueError(f"cannot keep {n} columns of a {m.cols}-column matrix")
    mask = (1 << n) - 1
    return BitMatrix(m.rows, n, tuple(r & mask for r in m.row_data))


def batch_rank(rows: np.ndarray, cols: int) -> np.ndarray:
    """Ranks of many small matrices at once.

    ``rows`` has shape ``(N, R)`` and unsigned integer dtype; entry ``[n, i]``
    is the packed row ``i`` of matrix ``n``.  Returns an int array of length N.
    The input is not modified.
    """
    work = np.array(rows, copy=True)
    if work.ndim != 2:
        raise ValueError("expected a 2-d array of packed rows")
    n, r = work.shape
    ranks = np.zeros(n, dtype=np.int64)
    if n == 0 or r == 0 or cols == 0:
        return ranks
    used = np.zeros((n, r), dtype=bool)
    idx = np.arange(n)
    one = work.dtype.type(1)
    for c in range(cols):
        avail = (((work >> work.dtype.type(c)) & one) != 0) & ~used
        has = avail.any(axis=1)
        piv = avail.argmax(axis=1)
        pivot_rows = work[idx, piv]
        avail[idx, piv] = False
        work ^= np.where(avail, pivot_rows[:, None], 0).astype(work.dtype)
        used[idx[has], piv[has]] = True
        ranks += has
    return ranks
