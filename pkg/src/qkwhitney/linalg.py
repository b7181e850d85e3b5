"""Exact dense linear algebra over a coefficient field.

Matrices are lists of rows; entries are field elements (``Fraction`` or
``RationalFunction``). Plain Gauss-Jordan elimination is enough here: all
entries are kept in canonical reduced form by the field itself.
"""

from __future__ import annotations

from .exceptions import DimensionError, SingularSystem

__all__ = [
    "row_echelon",
    "rank",
    "solve",
    "inverse",
    "identity",
    "matmul",
    "matvec",
    "IncrementalBasis",
]


def identity(n, field):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def matmul(a, b, field):
    if a and len(a[0]) != len(b):
        raise DimensionError("incompatible matrix shapes")
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            s = field.zero
            for k, x in enumerate(row):
                if x:
                    y = b[k][j]
                    if y:
                        s = s + x * y
            new.append(s)
        out.append(new)
    return out


def matvec(a, v, field):
    out = []
    for row in a:
        s = field.zero
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def row_echelon(rows, field):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows, field):
    if not rows:
        return 0
    return len(row_echelon(rows, field)[1])


def solve(a, b, field):
    """Solve ``a x = b`` for square nonsingular ``a``; ``b`` is a vector or a matrix."""
    n = len(a)
    vector = b and not isinstance(b[0], list)
    bm = [[x] for x in b] if vector else [list(r) for r in b]
    aug = [list(a[i]) + bm[i] for i in range(n)]
    red, pivots = row_echelon(aug, field)
    if pivots[:n] != list(range(n)):
        raise SingularSystem("matrix is singular")
    sol = [row[n:] for row in red[:n]]
    return [r[0] for r in sol] if vector else sol


def inverse(a, field):
    return solve(a, identity(len(a), field), field)


class IncrementalBasis:
    """Track the span of vectors added one at a time.

    ``add`` returns ``None`` if the vector was independent, otherwise the
    coefficients expressing it in terms of the previously added
    independent vectors (in insertion order).
    """

    def __init__(self, field):
        self.field = field
        self.rows = []  # reduced rows with pivot entry 1
        self.pivots = []
        self.combos = []  # row i = sum combos[i][k] * added[k]
        self.count = 0

    def add(self, vec):
        f = self.field
        v = list(vec)
        combo = {self.count: f.one}
        for row, p, rc in zip(self.rows, self.pivots, self.combos):
            c = v[p]
            if c:
                v = [x - c * y if y else x for x, y in zip(v, row)]
                for k, w in rc.items():
                    combo[k] = combo.get(k, f.zero) - c * w
        pivot = next((i for i, x in enumerate(v) if x), None)
        if pivot is None:
            # 0 = added[count] + sum_{k<count} combo[k] added[k]
            return [-combo.get(k, f.zero) for k in range(self.count)]
        inv = f.one / v[pivot]
        self.rows.append([x * inv if x else x for x in v])
        self.pivots.append(pivot)
        self.combos.append({k: w * inv for k, w in combo.items() if w})
        self.count += 1
        return None

    @property
    def dimension(self):
        return len(self.rows)
