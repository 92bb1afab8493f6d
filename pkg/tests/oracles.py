"""Independent brute-force oracles used to cross-check the library.

Everything here is deliberately naive: dense row lists, textbook Gaussian
elimination, no sparsity, no shortcuts.  These functions must stay independent
of quasihopf.exactmath's solver code paths.
"""


def dense_rref(rows):
    """Reduced row echelon form of a dense matrix (list of lists of field
    elements supporting +, -, *, inverse(), and truthiness).  Returns
    (rref_rows, pivot_cols)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivot_cols = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivot_cols


def dense_rank(rows):
    _, pivots = dense_rref(rows)
    return len(pivots)


def dense_nullspace(rows, ncols, zero, one):
    """Canonical nullspace basis: one vector per free column, with a 1 in the
    free column and zeros in the other free columns."""
    rref, pivots = dense_rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(rref, pivots):
            if row[f]:
                v[pc] = zero - row[f]
        basis.append(tuple(v))
    return basis
