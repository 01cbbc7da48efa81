"""Generic exact row reduction for the non-prime coefficient domains.

Handles Q (fractions) and F_{p^m} (coefficient tuples) through the Field
interface.  Dense lists of scalars; matrices at this tier stay small, the
heavy prime-field work lives in _kernels.
"""

from __future__ import annotations


def rref_generic(rows, field):
    """In-place reduced row echelon form; returns (rows, pivot_columns)."""
    if not rows:
        return [], []
    ncols = len(rows[0])
    zero = field.zero()
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if not field.is_zero(rows[i][c]):
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        if inv != field.one():
            rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                row_r = rows[r]
                rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    out = [row for row in rows[:r]]
    return out, pivots


def reduce_generic(rows, pivots, v, field):
    """Residue of v modulo the row space of an RREF basis."""
    out = list(v)
    for k, c in enumerate(pivots):
        f = out[c]
        if not field.is_zero(f):
            row = rows[k]
            out = [field.sub(x, field.mul(f, y)) for x, y in zip(out, row)]
    return out
