# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled pair-enumeration kernel.

Same contract as ``_pairs_py.pair_block``; one tight loop instead of
per-row vector passes.
"""

import numpy as np

MAX_KERNEL_SITES = 16

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define sgatlas_popcount(x) __builtin_popcount((unsigned int)(x))
    #else
    static int sgatlas_popcount(unsigned int x) {
        x = x - ((x >> 1) & 0x55555555u);
        x = (x & 0x33333333u) + ((x >> 2) & 0x33333333u);
        x = (x + (x >> 4)) & 0x0F0F0F0Fu;
        return (int)((x * 0x01010101u) >> 24);
    }
    #endif
    """
    int sgatlas_popcount(unsigned int x) nogil


def pair_block(int n, int row_start, int row_stop):
    """Canonical pairs (row <= col) for rows in [row_start, row_stop).

    Returns (rows, cols, k, ae, d1) exactly as the numpy fallback does.
    """
    if not 1 <= n <= MAX_KERNEL_SITES:
        raise ValueError(f"site count {n} outside 1..{MAX_KERNEL_SITES}")
    cdef unsigned int dim = 1u << n
    if not 0 <= row_start <= row_stop <= dim:
        raise ValueError(f"row range [{row_start}, {row_stop}) outside 0..{dim}")

    cdef Py_ssize_t total = 0
    cdef unsigned int r
    for r in range(row_start, row_stop):
        total += dim - r

    rows_arr = np.empty(total, dtype=np.uint32)
    cols_arr = np.empty(total, dtype=np.uint32)
    k_arr = np.empty(total, dtype=np.uint8)
    ae_arr = np.empty(total, dtype=np.uint8)
    d1_arr = np.empty(total, dtype=np.uint8)

    cdef unsigned int[::1] rows = rows_arr
    cdef unsigned int[::1] cols = cols_arr
    cdef unsigned char[::1] k = k_arr
    cdef unsigned char[::1] ae = ae_arr
    cdef unsigned char[::1] d1 = d1_arr

    cdef Py_ssize_t idx = 0
    cdef unsigned int c, x
    with nogil:
        for r in range(row_start, row_stop):
            for c in range(r, dim):
                x = r ^ c
                rows[idx] = r
                cols[idx] = c
                k[idx] = <unsigned char>sgatlas_popcount(x)
                ae[idx] = <unsigned char>sgatlas_popcount(r & c)
                d1[idx] = <unsigned char>sgatlas_popcount(r & x)
                idx += 1
    return rows_arr, cols_arr, k_arr, ae_arr, d1_arr
