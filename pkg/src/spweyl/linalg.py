"""Exact linear algebra over Q, plus a p-adic pivoting variant.

Matrices are lists of rows of ``Fraction``. Nothing here mutates its input.
"""

from __future__ import annotations

from fractions import Fraction

from spweyl.padics import INF, valuation


def _copy(m):
    return [[Fraction(x) for x in row] for row in m]


def rref(m):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    a = _copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(cols):
        pr = next((i for i in range(r, rows) if a[i][col] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m) -> int:
    if not m or not m[0]:
        return 0
    # eliminate along the shorter side
    if len(m) < len(m[0]):
        return len(rref(m)[1])
    return len(rref(transpose(m))[1])


def transpose(m):
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def nullspace(m, ncols: int | None = None):
    """Basis of {v : m v = 0} as a list of vectors."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(m)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -red[row][f]
        basis.append(v)
    return basis


def integer_vector(v):
    """Scale a rational vector to a primitive integer vector."""
    from math import gcd

    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return [x // g for x in ints] if g else ints


def solve(m, rhs):
    """One solution of m x = rhs, or None if inconsistent."""
    aug = [list(row) + [Fraction(r)] for row, r in zip(m, rhs)]
    ncols = len(m[0]) if m else 0
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in enumerate(pivots):
        x[pc] = red[row][ncols]
    return x


class EchelonBasis:
    """Incrementally maintained echelon basis of a subspace of Q^(keys).

    Vectors are sparse dicts (dense lists are read as index -> entry); used
    for span membership and closure loops.
    """

    def __init__(self):
        self._rows = {}  # pivot key -> normalized row (pivot coeff 1)

    def __len__(self):
        return len(self._rows)

    def reduce(self, vec) -> dict:
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        v = {k: Fraction(x) for k, x in items if x != 0}
        changed = True
        while changed and v:
            changed = False
            for key in sorted(v, key=_sort_key):
                row = self._rows.get(key)
                if row is None:
                    continue
                f = v[key]
                for k2, x in row.items():
                    y = v.get(k2, 0) - f * x
                    if y:
                        v[k2] = y
                    else:
                        v.pop(k2, None)
                changed = True
                break
        return v

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; returns True when it was not already in the span."""
        v = self.reduce(vec)
        if not v:
            return False
        key = min(v, key=_sort_key)
        inv = 1 / v[key]
        row = {k: x * inv for k, x in v.items()}
        for other in self._rows.values():
            f = other.get(key)
            if f:
                for k2, x in row.items():
                    y = other.get(k2, 0) - f * x
                    if y:
                        other[k2] = y
                    else:
                        other.pop(k2, None)
        self._rows[key] = row
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def _sort_key(k):
    return repr(k) if not isinstance(k, (int, tuple)) else (0, k)


def same_span(vectors_a, vectors_b) -> bool:
    ea, eb = EchelonBasis(), EchelonBasis()
    for v in vectors_a:
        ea.add(v)
    for v in vectors_b:
        eb.add(v)
    return len(ea) == len(eb) and all(ea.contains(v) for v in vectors_b)


def padic_minor_valuation(m, p: int):
    """Minimal valuation of the maximal (column-count) minors of ``m``.

    Elimination with a pivot of least valuation at each step; the sum of the
    pivot valuations equals the valuation of the gcd of the maximal minors.
    Returns ``INF`` when the columns are dependent over Q.
    """
    a = _copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if cols > rows:
        return INF
    total = 0
    live_rows = list(range(rows))
    live_cols = list(range(cols))
    while live_cols:
        best = None
        for i in live_rows:
            row = a[i]
            for j in live_cols:
                x = row[j]
                if x:
                    v = valuation(x, p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            return INF
        v, pi, pj = best
        total += v
        piv = a[pi][pj]
        live_rows.remove(pi)
        live_cols.remove(pj)
        for i in live_rows:
            x = a[i][pj]
            if x:
                f = x / piv
                ri, rp = a[i], a[pi]
                for j in live_cols:
                    if rp[j]:
                        ri[j] -= f * rp[j]
                ri[pj] = Fraction(0)
    return total


def matmul_list(x, y):
    size_k = len(y)
    cols = len(y[0]) if y else 0
    out = []
    for row in x:
        acc = [Fraction(0)] * cols
        for k in range(size_k):
            v = row[k]
            if v:
                yk = y[k]
                for j in range(cols):
                    if yk[j]:
                        acc[j] += v * yk[j]
        out.append(acc)
    return out
