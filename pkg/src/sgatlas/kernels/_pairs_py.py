"""Numpy fallback for the pair-enumeration kernel.

Must produce byte-identical arrays to the compiled version; keep dtypes and
ordering in lockstep with ``_pairs_cy.pyx``.
"""

from __future__ import annotations

import numpy as np

MAX_KERNEL_SITES = 16

_POP16 = None


def _popcount_table() -> np.ndarray:
    global _POP16
    if _POP16 is None:
        # popcount of 0..2^16-1 via the classic doubling construction
        table = np.zeros(1 << 16, dtype=np.uint8)
        for bit in range(16):
            table[1 << bit: 1 << (bit + 1)] = table[: 1 << bit] + 1
        _POP16 = table
    return _POP16


def pair_block(n: int, row_start: int, row_stop: int):
    """Canonical pairs (row <= col) for rows in [row_start, row_stop).

    Returns (rows, cols, k, ae, d1) where k is the differ count, ae the
    co-excited count, and d1 the differ sites excited in the row state.
    Row-major order: all cols >= row for each row in turn.
    """
    if not 1 <= n <= MAX_KERNEL_SITES:
        raise ValueError(f"site count {n} outside 1..{MAX_KERNEL_SITES}")
    dim = 1 << n
    if not 0 <= row_start <= row_stop <= dim:
        raise ValueError(f"row range [{row_start}, {row_stop}) outside 0..{dim}")
    pop = _popcount_table()
    rows_list = []
    cols_list = []
    for r in range(row_start, row_stop):
        cols_list.append(np.arange(r, dim, dtype=np.uint32))
        rows_list.append(np.full(dim - r, r, dtype=np.uint32))
    if rows_list:
        rows = np.concatenate(rows_list)
        cols = np.concatenate(cols_list)
    else:
        rows = np.empty(0, dtype=np.uint32)
        cols = np.empty(0, dtype=np.uint32)
    x = rows ^ cols
    k = pop[x]
    ae = pop[rows & cols]
    d1 = pop[rows & x]
    return rows, cols, k, ae, d1
