"""Exhaustive ground truth over every coefficient pair of a shape.

Pairs are indexed by ``beta << alpha_len | alpha``.  By default a compiled
loop ranks each pair in turn; without numba the index space is cut into
chunks, materialized as numpy arrays of packed rows and ranked with
:func:`persymm.gf2.batch_rank`.  Workers receive contiguous
index ranges (so the split is by high beta bits) and return plain count
vectors, merged by addition.  Counts therefore never depend on the worker
count.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .build import ShapeParams
from .gf2 import batch_rank

DEFAULT_BUDGET_BITS = 26
CHUNK_BITS = 16


class BudgetExceeded(RuntimeError):
    """Raised instead of silently truncating an enumeration."""

    def __init__(self, needed_bits: int, budget_bits: int, what: str = "enumeration"):
        self.needed_bits = needed_bits
        self.budget_bits = budget_bits
        super().__init__(f"{what} needs 2^{needed_bits} items, budget is 2^{budget_bits}")


def default_budget_bits() -> int:
    env = os.environ.get("PERSYMM_BUDGET_BITS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"PERSYMM_BUDGET_BITS must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET_BITS


def check_budget(bits: int, budget_bits: int | None, what: str = "enumeration") -> None:
    limit = default_budget_bits() if budget_bits is None else budget_bits
    if bits > limit:
        raise BudgetExceeded(bits, limit, what)


class Sub(NamedTuple):
    """One submatrix of the stack: ``top`` alpha rows, ``bottom`` beta rows, ``cols`` columns.

    With ``sum_row`` set, one more row ``alpha_{top+1+j} + beta_{bottom+1+j}``
    is appended (the augmented construction).
    """

    top: int
    bottom: int
    cols: int
    sum_row: bool = False

    @property
    def nrows(self) -> int:
        return self.top + self.bottom + int(self.sum_row)

    @property
    def max_rank(self) -> int:
        return min(self.nrows, self.cols)


@dataclass
class JointRankStats:
    params: ShapeParams
    kind: str
    table: dict[tuple[int, ...], int] = field(default_factory=dict)

    def total(self) -> int:
        return sum(self.table.values())

    def get(self, key: tuple[int, ...]) -> int:
        return self.table.get(tuple(key), 0)

    def marginal(self, positions: Sequence[int]) -> dict[tuple[int, ...], int]:
        out: Counter = Counter()
        for key, n in self.table.items():
            out[tuple(key[j] for j in positions)] += n
        return dict(out)


def _rows_for(sub: Sub, alphas: np.ndarray, betas: np.ndarray) -> np.ndarray:
    mask = np.uint64((1 << sub.cols) - 1)
    cols = [(alphas >> np.uint64(i)) & mask for i in range(sub.top)]
    cols += [(betas >> np.uint64(i)) & mask for i in range(sub.bottom)]
    if sub.sum_row:
        cols.append(((alphas >> np.uint64(sub.top)) ^ (betas >> np.uint64(sub.bottom))) & mask)
    if not cols:
        return np.zeros((alphas.shape[0], 0), dtype=np.uint64)
    return np.stack(cols, axis=1)


def backend() -> str:
    """``numba`` when available, else ``numpy``; ``PERSYMM_ORACLE_BACKEND`` forces one."""
    want = os.environ.get("PERSYMM_ORACLE_BACKEND", "").strip().lower()
    if want not in ("", "numba", "numpy"):
        raise ValueError(f"PERSYMM_ORACLE_BACKEND must be numba or numpy, got {want!r}")
    if want == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if want == "numba":
            raise
        return "numpy"
    return "numba"


def _count_range(args) -> np.ndarray:
    """Histogram of the encoded rank tuple over pair indices ``[lo, hi)``."""
    alpha_len, subs, radix, lo, hi, engine = args
    size = radix ** len(subs)
    hist = np.zeros(size, dtype=np.int64)
    if engine == "numba":
        from ._jit import count_range

        field_ = [np.array([getattr(s, f) for s in subs], dtype=np.int64) for f in ("top", "bottom", "cols")]
        sums = np.array([int(s.sum_row) for s in subs], dtype=np.int64)
        count_range(alpha_len, *field_, sums, radix, lo, hi, hist)
        return hist
    amask = np.uint64((1 << alpha_len) - 1)
    step = 1 << CHUNK_BITS
    for start in range(lo, hi, step):
        idx = np.arange(start, min(start + step, hi), dtype=np.uint64)
        alphas = idx & amask
        betas = idx >> np.uint64(alpha_len)
        code = np.zeros(idx.shape[0], dtype=np.int64)
        for sub in reversed(subs):
            code = code * radix + batch_rank(_rows_for(sub, alphas, betas), sub.cols)
        hist += np.bincount(code, minlength=size)
    return hist


def _auto_workers(workers: int | None) -> int:
    if workers is None or workers <= 0:
        return os.cpu_count() or 1
    return workers


def joint_ranks(
    p: ShapeParams,
    subs: Sequence[Sub],
    budget_bits: int | None = None,
    workers: int | None = 1,
    lengths: tuple[int, int] | None = None,
) -> dict[tuple[int, ...], int]:
    """Count pairs by the tuple of ranks of ``subs``.  The core of every oracle query.

    ``lengths`` overrides the coefficient lengths ``(alpha_len, beta_len)``
    of the enumerated space; by default they come from ``p``.
    """
    alpha_len, beta_len = lengths if lengths is not None else (p.alpha_len, p.beta_len)
    bits = alpha_len + beta_len
    check_budget(bits, budget_bits)
    for sub in subs:
        if sub.top + sub.cols - 1 + int(sub.sum_row) > alpha_len and (sub.top or sub.sum_row):
            raise ValueError(f"{sub} needs more alpha coefficients than {alpha_len}")
        if sub.bottom + sub.cols - 1 + int(sub.sum_row) > beta_len and (sub.bottom or sub.sum_row):
            raise ValueError(f"{sub} needs more beta coefficients than {beta_len}")
    subs = tuple(subs)
    radix = max(s.max_rank for s in subs) + 1
    total = 1 << bits
    engine = backend()
    nworkers = min(_auto_workers(workers), max(1, total >> CHUNK_BITS))
    if nworkers == 1:
        hist = _count_range((alpha_len, subs, radix, 0, total, engine))
    else:
        edges = [total * w // nworkers for w in range(nworkers + 1)]
        jobs = [(alpha_len, subs, radix, edges[w], edges[w + 1], engine) for w in range(nworkers)]
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            hist = sum(pool.map(_count_range, jobs))
    table = {}
    for code in np.flatnonzero(hist):
        key, c = [], int(code)
        for _ in subs:
            key.append(c % radix)
            c //= radix
        table[tuple(key)] = int(hist[code])
    return table


def enumerate_rank_distribution(p: ShapeParams, budget_bits: int | None = None, workers: int | None = 1):
    """Brute-force Γ_0..Γ_{min(2s+m,k)} by ranking every pair."""
    from .formulas import RankDistribution

    table = joint_ranks(p, [Sub(p.s, p.s + p.m, p.k)], budget_bits, workers)
    counts = [0] * (p.max_rank + 1)
    for (r,), n in table.items():
        counts[r] = n
    return RankDistribution(p, tuple(counts))


def _need_s2(p: ShapeParams, what: str) -> None:
    if p.s < 2:
        raise ValueError(f"{what} needs s >= 2, got {p}")


def sigma_subs(p: ShapeParams, k: int | None = None) -> list[Sub]:
    kk = p.k if k is None else k
    s, m = p.s, p.m
    return [Sub(s - 1, s + m - 1, kk), Sub(s, s + m - 1, kk), Sub(s, s + m, kk)]


def sigma_triples(p: ShapeParams, budget_bits: int | None = None, workers: int | None = 1) -> JointRankStats:
    """Joint ranks of ``D^{[s-1,s+m-1]}``, ``D^{[s,s+m-1]}`` and ``D^{[s,s+m]}``, all with k columns."""
    _need_s2(p, "sigma_triples")
    return JointRankStats(p, "sigma", joint_ranks(p, sigma_subs(p), budget_bits, workers))


def six_tuple_subs(p: ShapeParams) -> list[Sub]:
    s, m, k = p.s, p.m, p.k
    out = []
    for top, bottom in ((s - 1, s + m - 1), (s, s + m - 1), (s, s + m)):
        out += [Sub(top, bottom, k - 1), Sub(top, bottom, k)]
    return out


def partition_six_tuple(p: ShapeParams, budget_bits: int | None = None, workers: int | None = 1) -> JointRankStats:
    """Joint ranks of the three nested row sets, each at k-1 and k columns.

    Key order: ``(r[s-1,s+m-1]x(k-1), r[s-1,s+m-1]xk, r[s,s+m-1]x(k-1),
    r[s,s+m-1]xk, r[s,s+m]x(k-1), r[s,s+m]xk)``.
    """
    _need_s2(p, "partition_six_tuple")
    if p.k < 2:
        raise ValueError("partition_six_tuple needs k >= 2")
    return JointRankStats(p, "six", joint_ranks(p, six_tuple_subs(p), budget_bits, workers))


def sigma_augmented_row(p: ShapeParams, budget_bits: int | None = None, workers: int | None = 1) -> JointRankStats:
    """Joint ranks of ``D^{[s-1,s+m-1]}`` and of the same block with the alpha/beta sum row appended."""
    _need_s2(p, "sigma_augmented_row")
    s, m, k = p.s, p.m, p.k
    subs = [Sub(s - 1, s + m - 1, k), Sub(s - 1, s + m - 1, k, sum_row=True)]
    return JointRankStats(p, "augmented", joint_ranks(p, subs, budget_bits, workers))


def alpha_row_pair(p: ShapeParams, budget_bits: int | None = None, workers: int | None = 1) -> JointRankStats:
    """Joint ranks of ``D^{[s-1,s+m-1]}`` and ``D^{[s,s+m-1]}`` over the smaller space.

    Neither matrix reads the last beta coefficient, so the enumeration uses
    beta vectors one shorter than the shape's (length k+s+m-2).
    """
    _need_s2(p, "alpha_row_pair")
    s, m, k = p.s, p.m, p.k
    subs = [Sub(s - 1, s + m - 1, k), Sub(s, s + m - 1, k)]
    table = joint_ranks(p, subs, budget_bits, workers, lengths=(p.alpha_len, p.beta_len - 1))
    return JointRankStats(p, "alpha-row", table)
