"""The t-inclusion matrix M_{t,v,k} and exact null-space membership.

Rows are the patterns ``(u)_I``: every t-subset I of the positions in
lexicographic order, and for each I every u in V^t in lexicographic order.
Columns are the blocks of V^k in lexicographic order. Entry (r, c) is 1 iff
block c contains pattern r.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .core import (Block, FrequencyVector, Params, ParameterError, SubBlockKey,
                   TradeError)

DEFAULT_MAX_COLUMNS = int(os.environ.get("LATINTRADES_MAX_COLUMNS", 1_000_000))


class CapacityError(TradeError):
    """The requested matrix exceeds the configured size cap."""


def block_index(block: Block, v: int) -> int:
    """Position of ``block`` in the lexicographic order of V^k (0-based)."""
    idx = 0
    for x in block:
        idx = idx * v + (x - 1)
    return idx


def index_block(idx: int, v: int, k: int) -> Block:
    out = []
    for _ in range(k):
        idx, r = divmod(idx, v)
        out.append(r + 1)
    return tuple(reversed(out))


def enumerate_rows(t: int, v: int, k: int) -> list[SubBlockKey]:
    """Row labels, by brute-force enumeration in the fixed row order."""
    return [SubBlockKey(I, u)
            for I in combinations(range(1, k + 1), t)
            for u in product(range(1, v + 1), repeat=t)]


@dataclass(frozen=True)
class InclusionMatrix:
    params: Params
    matrix: sp.csc_matrix  # int64 0/1, shape (rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    @property
    def n_rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_cols(self) -> int:
        return self.matrix.shape[1]

    def rows(self) -> list[SubBlockKey]:
        p = self.params
        return enumerate_rows(p.t, p.v, p.k)

    def row_label(self, r: int) -> SubBlockKey:
        p = self.params
        n_u = p.v ** p.t
        I = list(combinations(range(1, p.k + 1), p.t))[r // n_u]
        return SubBlockKey(I, index_block(r % n_u, p.v, p.t))

    def column_label(self, c: int) -> Block:
        return index_block(c, self.params.v, self.params.k)

    def positions(self) -> list[tuple[int, int]]:
        """All (row, col) positions holding a 1, sorted."""
        coo = self.matrix.tocoo()
        return sorted(zip(coo.row.tolist(), coo.col.tolist()))

    def column_sums(self) -> np.ndarray:
        return np.asarray(self.matrix.sum(axis=0)).ravel()

    def row_sums(self) -> np.ndarray:
        return np.asarray(self.matrix.sum(axis=1)).ravel()

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()


def build_inclusion_matrix(t: int, v: int, k: int,
                           max_columns: int = DEFAULT_MAX_COLUMNS) -> InclusionMatrix:
    params = Params(t, k, v)
    n_cols = v ** k
    if n_cols > max_columns:
        raise CapacityError(f"v^k = {n_cols} columns exceeds the cap of {max_columns}")
    subsets = list(combinations(range(k), t))
    n_u = v ** t
    n_rows = len(subsets) * n_u
    # digits[c, j] = symbol - 1 of column c at position j
    cols = np.arange(n_cols, dtype=np.int64)
    digits = np.empty((n_cols, k), dtype=np.int64)
    rest = cols.copy()
    for j in range(k - 1, -1, -1):
        rest, digits[:, j] = np.divmod(rest, v)
    row_idx = []
    for s, I in enumerate(subsets):
        u = np.zeros(n_cols, dtype=np.int64)
        for j in I:
            u = u * v + digits[:, j]
        row_idx.append(s * n_u + u)
    rows = np.concatenate(row_idx) if row_idx else np.empty(0, dtype=np.int64)
    data = np.ones(len(rows), dtype=np.int64)
    allcols = np.tile(cols, len(subsets))
    m = sp.csc_matrix((data, (rows, allcols)), shape=(n_rows, n_cols), dtype=np.int64)
    m.sort_indices()
    return InclusionMatrix(params, m)


@dataclass(frozen=True)
class NullCheckResult:
    zero: bool
    nonzero_rows: tuple[tuple[int, int], ...] = ()  # (row index, product value)

    def __bool__(self):
        return self.zero


_INT64_SAFE = 2 ** 62


def null_check(m: InclusionMatrix, fv: FrequencyVector) -> NullCheckResult:
    """Compute M @ fv over the integers and report the rows that are nonzero."""
    p, q = m.params, fv.params
    if (p.t, p.k) != (q.t, q.k) or q.v > p.v:
        raise ParameterError(f"matrix built for {p} cannot take a vector over {q}")
    x = np.zeros(m.n_cols, dtype=np.int64)
    l1 = sum(abs(c) for c in fv.entries.values())
    if l1 < _INT64_SAFE:
        for b, c in fv.entries.items():
            x[block_index(b, p.v)] = c
        prod = m.matrix @ x
        nz = np.flatnonzero(prod)
        return NullCheckResult(len(nz) == 0,
                               tuple((int(r), int(prod[r])) for r in nz))
    # huge multiplicities: exact python-int accumulation over the stored columns
    acc: dict[int, int] = {}
    csc = m.matrix
    for b, c in fv.entries.items():
        col = block_index(b, p.v)
        for r in csc.indices[csc.indptr[col]:csc.indptr[col + 1]]:
            acc[int(r)] = acc.get(int(r), 0) + c
    nz = tuple(sorted((r, val) for r, val in acc.items() if val))
    return NullCheckResult(not nz, nz)


def export_text(m: InclusionMatrix) -> str:
    """Header ``t k v rows cols`` then one ``row col`` line per 1, sorted."""
    p = m.params
    lines = [f"{p.t} {p.k} {p.v} {m.n_rows} {m.n_cols}"]
    lines.extend(f"{r} {c}" for r, c in m.positions())
    return "\n".join(lines) + "\n"


def export(m: InclusionMatrix, path: str | Path) -> None:
    Path(path).write_text(export_text(m), newline="\n")
