# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gaussian elimination over small finite fields.

Operates on int16 matrices of element indices using the dense operation
tables attached to a FieldSpec (valid for field order <= 256).  The
matrix argument is clobbered; callers pass a copy.
"""

BACKEND_NAME = "compiled"


def rank_destructive(short[:, ::1] m, const short[:, ::1] add,
                     const short[:, ::1] mul, const short[::1] inv,
                     const short[::1] neg):
    """Rank of ``m``; identical contract to the pure Python twin."""
    cdef Py_ssize_t rows = m.shape[0]
    cdef Py_ssize_t cols = m.shape[1]
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t col, i, j, pivot
    cdef short pinv, factor, tmp
    for col in range(cols):
        if rank == rows:
            break
        pivot = -1
        for i in range(rank, rows):
            if m[i, col] != 0:
                pivot = i
                break
        if pivot < 0:
            continue
        if pivot != rank:
            for j in range(cols):
                tmp = m[rank, j]
                m[rank, j] = m[pivot, j]
                m[pivot, j] = tmp
        pinv = inv[m[rank, col]]
        for j in range(col, cols):
            m[rank, j] = mul[pinv, m[rank, j]]
        for i in range(rank + 1, rows):
            if m[i, col] != 0:
                factor = neg[m[i, col]]
                for j in range(col, cols):
                    m[i, j] = add[m[i, j], mul[factor, m[rank, j]]]
        rank += 1
    return rank


def rref_destructive(short[:, ::1] m, short[::1] pivots, const short[:, ::1] add,
                     const short[:, ::1] mul, const short[::1] inv,
                     const short[::1] neg):
    """Reduced row echelon form in place; returns the pivot count."""
    cdef Py_ssize_t rows = m.shape[0]
    cdef Py_ssize_t cols = m.shape[1]
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t col, i, j, pivot
    cdef short pinv, factor, tmp
    for col in range(cols):
        if rank == rows:
            break
        pivot = -1
        for i in range(rank, rows):
            if m[i, col] != 0:
                pivot = i
                break
        if pivot < 0:
            continue
        if pivot != rank:
            for j in range(cols):
                tmp = m[rank, j]
                m[rank, j] = m[pivot, j]
                m[pivot, j] = tmp
        pinv = inv[m[rank, col]]
        for j in range(col, cols):
            m[rank, j] = mul[pinv, m[rank, j]]
        for i in range(rows):
            if i != rank and m[i, col] != 0:
                factor = neg[m[i, col]]
                for j in range(col, cols):
                    m[i, j] = add[m[i, j], mul[factor, m[rank, j]]]
        pivots[rank] = <short> col
        rank += 1
    return rank
