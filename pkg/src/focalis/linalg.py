"""Small dense exact linear algebra over field-like scalars.

Matrices are lists of row lists.  Entries can be Fraction, QExt, MPoly,
RFunc, or Jet; the routines only use ring operations plus division where
noted.  Pivot selection goes through a unit predicate so the same code
serves fields (anything nonzero is a unit) and jets (value part nonzero).
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import RankDrop


def _is_unit_default(x) -> bool:
    return bool(x)


def mat_copy(m):
    return [list(row) for row in m]


def transpose(m):
    return [list(col) for col in zip(*m)]


def mat_vec(m, v):
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def identity(n, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def det(m):
    """Determinant by Bareiss elimination: every division is exact, so this
    works over Fraction, QExt, MPoly, and RFunc alike (not jets)."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = mat_copy(m)
    zero = a[0][0] - a[0][0]
    sign = 1
    prev = None
    for k in range(n - 1):
        piv = None
        for i in range(k, n):
            if a[i][k]:
                piv = i
                break
        if piv is None:
            return zero
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num if prev is None else num / prev
            a[i][k] = zero
        prev = a[k][k]
    return sign * a[n - 1][n - 1]

def det_cofactor(m):
    """Division-free determinant (first-row expansion); safe for jets."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        c = m[0][j]
        if not c:
            continue
        sub = [[row[t] for t in range(n) if t != j] for row in m[1:]]
        term = c * det_cofactor(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        z = m[0][0] - m[0][0]
        return z
    return total


def _eliminate(m, is_unit):
    """Row echelon form; returns (rows, pivot_cols). Destructive on a copy."""
    a = mat_copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if is_unit(a[i][c]):
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pivots.append(c)
        pv = a[r][c]
        for i in range(r + 1, rows):
            if a[i][c]:
                f = a[i][c] / pv
                for j in range(c, cols):
                    a[i][j] = a[i][j] - f * a[r][j]
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m, is_unit=_is_unit_default) -> int:
    if not m or not m[0]:
        return 0
    _, pivots = _eliminate(m, is_unit)
    return len(pivots)


def echelon_pivot_cols(m, is_unit=_is_unit_default):
    if not m or not m[0]:
        return []
    _, pivots = _eliminate(m, is_unit)
    return pivots


def rref(m, is_unit=_is_unit_default):
    """Reduced row echelon form; returns (rows, pivot_cols)."""
    a, pivots = _eliminate(m, is_unit)
    cols = len(a[0]) if a else 0
    for r in reversed(range(len(pivots))):
        c = pivots[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(r):
            f = a[i][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
    a = a[: len(pivots)]
    return a, pivots


def kernel_basis(m, is_unit=_is_unit_default):
    """Basis of the right kernel (list of vectors), via RREF free columns."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if rows == 0 or cols == 0:
        return identity(cols) if cols else []
    a, pivots = rref(m, is_unit)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    zero = m[0][0] - m[0][0]
    one = zero + 1
    for f in free:
        v = [zero] * cols
        v[f] = one
        for r, c in enumerate(pivots):
            v[c] = -a[r][f]
        basis.append(v)
    return basis


def solve_unique(m, b, is_unit=_is_unit_default):
    """Solve m x = b with a unique solution; raises RankDrop otherwise.

    Works for square or overdetermined systems (consistency checked on the
    leftover rows).
    """
    rows = len(m)
    cols = len(m[0])
    aug = [list(row) + [bv] for row, bv in zip(m, b)]
    a, pivots = _eliminate(aug, is_unit)
    if cols in pivots:
        raise RankDrop("inconsistent linear system")
    if len(pivots) < cols:
        raise RankDrop("linear system is underdetermined")
    for i in range(len(pivots), rows):
        if any(a[i][j] for j in range(cols + 1)):
            raise RankDrop("inconsistent linear system")
    x = [None] * cols
    for r in reversed(range(cols)):
        c = pivots[r]
        acc = a[r][cols]
        for j in range(c + 1, cols):
            acc = acc - a[r][j] * x[j]
        x[c] = acc / a[r][c]
    return x


def inverse(m, is_unit=_is_unit_default):
    n = len(m)
    zero = m[0][0] - m[0][0]
    one = zero + 1
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(m)]
    a, pivots = rref(aug, is_unit)
    if pivots[:n] != list(range(n)):
        raise RankDrop("matrix is not invertible")
    return [row[n:] for row in a[:n]]


def minors(m, k):
    """All k x k minors, lex-ordered by (row indices, col indices)."""
    rows = len(m)
    cols = len(m[0])
    out = []
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            sub = [[m[i][j] for j in cs] for i in rs]
            out.append(det_cofactor(sub) if k <= 3 else det(sub))
    return out


def det_via(m, divide=True):
    return det(m) if divide else det_cofactor(m)
