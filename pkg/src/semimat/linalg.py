"""Exact linear algebra over the rationals.  No floating point anywhere."""

from __future__ import annotations

from fractions import Fraction


def solve_linear(rows, rhs):
    """Solve A c = rhs exactly by Gauss-Jordan elimination.

    ``rows`` is a list of equation rows (coefficients per unknown), ``rhs``
    the right-hand sides.  Returns one solution (free unknowns set to 0)
    or None when the system is inconsistent.
    """
    m = len(rows)
    if m != len(rhs):
        raise ValueError(f"{m} equations but {len(rhs)} right-hand sides")
    k = len(rows[0]) if m else 0
    aug = [[Fraction(v) for v in rows[i]] + [Fraction(rhs[i])] for i in range(m)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(k):
        pr = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        if pv != 1:
            aug[r] = [v / pv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [vi - f * vr for vi, vr in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][k] != 0:
            return None
    sol = [Fraction(0)] * k
    for pr, pc in pivots:
        sol[pc] = aug[pr][k]
    return sol


def determinant(rows) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination with row swaps."""
    m = len(rows)
    a = [[Fraction(v) for v in row] for row in rows]
    for row in a:
        if len(row) != m:
            raise ValueError("determinant needs a square matrix")
    if m == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for kk in range(m - 1):
        if a[kk][kk] == 0:
            swap = next((r for r in range(kk + 1, m) if a[r][kk] != 0), None)
            if swap is None:
                return Fraction(0)
            a[kk], a[swap] = a[swap], a[kk]
            sign = -sign
        pivot = a[kk][kk]
        for i in range(kk + 1, m):
            aik = a[i][kk]
            row_i = a[i]
            row_k = a[kk]
            for j in range(kk + 1, m):
                row_i[j] = (pivot * row_i[j] - aik * row_k[j]) / prev
            row_i[kk] = Fraction(0)
        prev = pivot
    return sign * a[m - 1][m - 1]


def identity_fractions(m: int) -> list[list[Fraction]]:
    return [[Fraction(1) if i == j else Fraction(0) for j in range(m)] for i in range(m)]
