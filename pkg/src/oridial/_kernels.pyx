# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled row-reduction kernel.

Same fraction-free (Bareiss) elimination as ``_kernels_py`` with the same
pivoting rule; entries are arbitrary-precision Python ints, so results are
bit-for-bit identical to the fallback.  Cython only removes the
interpreter overhead of the inner loops.
"""

BACKEND = "cython"


def ff_row_echelon(list rows, Py_ssize_t ncols):
    """Fraction-free row echelon form over the integers, in place.

    Returns the list of pivot columns; the rank is its length.
    """
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t pr = 0, pc, i, r, j, src
    cdef list pivots = []
    cdef list piv_row, row
    cdef object prev = 1, p, a
    for pc in range(ncols):
        if pr >= nrows:
            break
        src = -1
        for i in range(pr, nrows):
            if (<list>rows[i])[pc]:
                src = i
                break
        if src < 0:
            continue
        if src != pr:
            rows[pr], rows[src] = rows[src], rows[pr]
        piv_row = <list>rows[pr]
        p = piv_row[pc]
        for r in range(pr + 1, nrows):
            row = <list>rows[r]
            a = row[pc]
            if a:
                for j in range(pc, ncols):
                    row[j] = (p * row[j] - a * piv_row[j]) // prev
            elif prev != 1 or p != 1:
                for j in range(pc + 1, ncols):
                    if row[j]:
                        row[j] = (p * row[j]) // prev
        prev = p
        pivots.append(pc)
        pr += 1
    return pivots
