"""Pure-Python row-reduction kernel.

Fallback twin of the compiled ``_kernels`` extension; both run the exact
same fraction-free (Bareiss) elimination with the same pivoting rule, so
their outputs are bit-for-bit identical.
"""

BACKEND = "python"


def ff_row_echelon(rows, ncols):
    """Fraction-free row echelon form over the integers, in place.

    ``rows`` is a list of equal-length lists of Python ints.  Pivoting is
    deterministic: columns are scanned left to right and the first row
    with a nonzero entry is promoted.  Intermediate entries stay integral
    (each exact division below has zero remainder), and every entry of the
    echelon form is a minor of the input, which keeps growth polynomial.

    Returns the list of pivot columns; the rank is its length.
    """
    nrows = len(rows)
    pivots = []
    prev = 1
    pr = 0
    for pc in range(ncols):
        if pr >= nrows:
            break
        src = -1
        for i in range(pr, nrows):
            if rows[i][pc]:
                src = i
                break
        if src < 0:
            continue
        if src != pr:
            rows[pr], rows[src] = rows[src], rows[pr]
        piv_row = rows[pr]
        p = piv_row[pc]
        for r in range(pr + 1, nrows):
            row = rows[r]
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
