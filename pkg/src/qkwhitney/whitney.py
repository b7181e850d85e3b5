"""Classical and quantum Whitney relations for type-A partial flag manifolds.

Ring variables are the elementary symmetric functions ``e<l>(X<j>)`` of the
tautological subbundle S_j and ``e<l>(Y<j>)`` of the quotient S_{j+1}/S_j.
The last block X^(k+1) is the torus (T1, ..., Tn) and is always a scalar.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod

from .coefficients import QQ_FIELD, RationalFunctionField
from .exceptions import NotStrictlyIncreasing, OutOfRange
from .polynomials import VarTable
from .series import QSeries, extend_table_with_q, series_invert_unit

__all__ = [
    "FlagShape",
    "build_shape",
    "parse_shape",
    "whitney_table",
    "elementary_T",
    "block_e",
    "classical_generators",
    "quantum_generators_completed",
    "quantum_generators_completed_closed_form",
    "quantum_generators_polynomial",
    "RelationSet",
    "relation_set",
]


@dataclass(frozen=True)
class FlagShape:
    """Fl(r_1 < ... < r_k; C^n)."""

    r: tuple
    n: int

    @property
    def k(self):
        return len(self.r)

    @property
    def dims(self):
        """(r_0, r_1, ..., r_k, r_{k+1}) = (0, r_1, ..., r_k, n)."""
        return (0,) + tuple(self.r) + (self.n,)

    @property
    def deltas(self):
        """Block sizes r_{j+1} - r_j for j = 0..k."""
        d = self.dims
        return tuple(d[j + 1] - d[j] for j in range(self.k + 1))

    def delta(self, j):
        """delta_j = r_{j+1} - r_j, 1-based j as in the relations."""
        return self.dims[j + 1] - self.dims[j]

    def rank(self, j):
        """r_j with r_0 = 0 and r_{k+1} = n."""
        return self.dims[j]

    @property
    def coset_count(self):
        return factorial(self.n) // prod(factorial(d) for d in self.deltas)

    @property
    def is_complete(self):
        return tuple(self.r) == tuple(range(1, self.n))

    @property
    def generator_count(self):
        return sum(self.dims[j + 1] for j in range(1, self.k + 1))

    def label(self):
        return f"{','.join(map(str, self.r))}:{self.n}"

    def __str__(self):
        return f"Fl({','.join(map(str, self.r))};{self.n})"


def build_shape(r, n):
    r = tuple(int(x) for x in r)
    n = int(n)
    if not r:
        raise OutOfRange("a flag shape needs at least one step")
    if any(b <= a for a, b in zip(r, r[1:])):
        raise NotStrictlyIncreasing(f"dimensions {r} are not strictly increasing")
    if r[0] <= 0 or r[-1] >= n:
        raise OutOfRange(f"dimensions {r} must lie strictly between 0 and {n}")
    return FlagShape(r, n)


def parse_shape(text):
    """Parse ``"r1,r2,...:n"``."""
    try:
        left, right = text.split(":")
        return build_shape([int(x) for x in left.split(",") if x.strip()], int(right))
    except ValueError as exc:
        if isinstance(exc, (NotStrictlyIncreasing, OutOfRange)):
            raise
        raise OutOfRange(f"malformed shape {text!r}; expected r1,r2,...:n") from None


def x_name(j, l):
    return f"e{l}(X{j})"


def y_name(j, l):
    return f"e{l}(Y{j})"


@lru_cache(maxsize=None)
def whitney_table(shape, equivariant=True):
    """Variable table of the presentation ring.

    Order (= precedence): for j = 1..k the X^(j) block, then the Y^(j) block.
    """
    names = []
    blocks = {}
    for j in range(1, shape.k + 1):
        for l in range(1, shape.rank(j) + 1):
            names.append(x_name(j, l))
            blocks[names[-1]] = ("X", j, l)
        for l in range(1, shape.delta(j) + 1):
            names.append(y_name(j, l))
            blocks[names[-1]] = ("Y", j, l)
    fld = RationalFunctionField(shape.n) if equivariant else QQ_FIELD
    return VarTable(names, fld, blocks)


@lru_cache(maxsize=None)
def q_table(shape, equivariant=True):
    return extend_table_with_q(whitney_table(shape, equivariant), shape.k)


def elementary_T(field, n, l):
    """e_l(T1..Tn) in ``field``; at T = 1 this is binomial(n, l)."""
    if l < 0 or l > n:
        return field.zero
    if field.nvars == 0:
        return field.convert(comb(n, l))
    gens = field.gens
    total = field.zero
    for idx in combinations(range(n), l):
        term = field.one
        for i in idx:
            term = term * gens[i]
        total = total + term
    return total


def block_e(table, shape, kind, j, l):
    """e_l of a block as a Poly, with the out-of-range conventions:
    e_0 = 1, e_l = 0 outside [0, rank], X^(0) empty, X^(k+1) = T (scalar)."""
    if l == 0:
        return table.one()
    if l < 0:
        return table.zero()
    if kind == "X":
        if j == 0:
            return table.zero()
        if j == shape.k + 1:
            return table.const(elementary_T(table.field, shape.n, l))
        if l > shape.rank(j):
            return table.zero()
        return table.var(x_name(j, l))
    if l > shape.delta(j):
        return table.zero()
    return table.var(y_name(j, l))


def _labels(shape):
    return [(j, l) for j in range(1, shape.k + 1) for l in range(1, shape.rank(j + 1) + 1)]


def classical_generators(shape, table=None):
    """sum_{i+s=l} e_i(X^(j)) e_s(Y^(j)) - e_l(X^(j+1)) for 1<=j<=k, 1<=l<=r_{j+1}."""
    table = table or whitney_table(shape)
    out = []
    for j, l in _labels(shape):
        g = table.zero()
        for i in range(0, l + 1):
            g = g + block_e(table, shape, "X", j, i) * block_e(table, shape, "Y", j, l - i)
        out.append(g - block_e(table, shape, "X", j + 1, l))
    return out


def _correction(table, shape, j, l):
    """e_{delta_j}(Y^(j)) * (e_{l-delta_j}(X^(j)) - e_{l-delta_j}(X^(j-1)))."""
    d = shape.delta(j)
    return block_e(table, shape, "Y", j, d) * (
        block_e(table, shape, "X", j, l - d) - block_e(table, shape, "X", j - 1, l - d)
    )


def _lambda_y(table, shape, kind, j, k, D):
    """Coefficient list (in y) of prod(1 + y Z_l) for the block, as QSeries."""
    size = shape.rank(j) if kind == "X" else shape.delta(j)
    return [QSeries.from_poly(block_e(table, shape, kind, j, i), k, D) for i in range(size + 1)]


def _ymul(a, b):
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for s, y in enumerate(b):
            out[i + s] = x * y if out[i + s] is None else out[i + s] + x * y
    return out


def _yadd(a, b, sign=1):
    n = max(len(a), len(b))
    zero = (a or b)[0].zero()
    a = a + [zero] * (n - len(a))
    b = b + [zero] * (n - len(b))
    return [x + y if sign > 0 else x - y for x, y in zip(a, b)]


def quantum_generators_completed(shape, D, table=None):
    """Coefficients of y^l, 1 <= l <= r_{j+1}, of

        lambda_y(X^j) lambda_y(Y^j) - lambda_y(X^{j+1})
          + y^{delta_j} q_j/(1-q_j) e_{delta_j}(Y^j) (lambda_y(X^j) - lambda_y(X^{j-1})),

    expanded mechanically as polynomials in y with truncated-series coefficients.
    """
    if D < 1:
        raise ValueError("truncation order must be at least 1")
    table = table or whitney_table(shape)
    k = shape.k
    out = []
    for j in range(1, k + 1):
        lx = _lambda_y(table, shape, "X", j, k, D)
        ly = _lambda_y(table, shape, "Y", j, k, D)
        top = shape.rank(j + 1)
        lnext = [
            QSeries.from_poly(block_e(table, shape, "X", j + 1, i), k, D) for i in range(top + 1)
        ]
        lprev = (
            _lambda_y(table, shape, "X", j - 1, k, D)
            if j > 1
            else [QSeries.scalar(table, k, D, 1)]
        )
        qj = QSeries.q(table, k, D, j - 1)
        factor = qj * series_invert_unit(qj.one() - qj)
        d = shape.delta(j)
        shift = [qj.zero()] * d + [factor * QSeries.from_poly(block_e(table, shape, "Y", j, d), k, D)]
        expr = _yadd(_ymul(lx, ly), lnext, sign=-1)
        expr = _yadd(expr, _ymul(shift, _yadd(lx, lprev, sign=-1)))
        for l in range(1, top + 1):
            out.append(expr[l] if l < len(expr) else qj.zero())
    return out


def quantum_generators_completed_closed_form(shape, D, table=None):
    """g_cl + q_j/(1-q_j) * correction; used to cross-check the mechanical expansion."""
    table = table or whitney_table(shape)
    k = shape.k
    out = []
    for (j, l), g in zip(_labels(shape), classical_generators(shape, table)):
        qj = QSeries.q(table, k, D, j - 1)
        factor = qj * series_invert_unit(qj.one() - qj)
        out.append(QSeries.from_poly(g, k, D) + factor * QSeries.from_poly(_correction(table, shape, j, l), k, D))
    return out


def quantum_generators_polynomial(shape, table=None):
    """(1 - q_j) g_cl + q_j * correction, in the table extended by q1..qk."""
    base = table or whitney_table(shape)
    qt = extend_table_with_q(base, shape.k)
    out = []
    for (j, l), g in zip(_labels(shape), classical_generators(shape, base)):
        qj = qt.var(f"q{j}")
        gq = g.change_table(qt)
        corr = _correction(base, shape, j, l).change_table(qt)
        out.append((1 - qj) * gq + qj * corr)
    return out


@dataclass
class RelationSet:
    shape: FlagShape
    table: VarTable
    qtable: VarTable
    D: int
    labels: list
    classical: list
    completed: list
    polynomial: list = dc_field(default_factory=list)


def relation_set(shape, D=6, equivariant=True):
    table = whitney_table(shape, equivariant)
    return RelationSet(
        shape=shape,
        table=table,
        qtable=extend_table_with_q(table, shape.k),
        D=D,
        labels=_labels(shape),
        classical=classical_generators(shape, table),
        completed=quantum_generators_completed(shape, D, table),
        polynomial=quantum_generators_polynomial(shape, table),
    )


generator_labels = _labels
__all__ += ["generator_labels", "q_table", "x_name", "y_name"]
