"""Power series in q1..qk truncated at total degree D, with polynomial coefficients."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .coefficients import LaurentPoly, RationalFunction
from .exceptions import DimensionError, NonUnitConstantTerm
from .polynomials import Poly, render_monomial

__all__ = [
    "QSeries",
    "series_mul",
    "series_invert_unit",
    "series_compare",
    "classical_limit",
    "q_monomials",
    "DEFAULT_QORDER",
]

DEFAULT_QORDER = 6


def q_monomials(k, D):
    """All exponent vectors of total degree <= D, graded then lex."""
    out = [e for e in product(range(D + 1), repeat=k) if sum(e) <= D]
    out.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    return out


def _qdeg(e):
    return sum(e)


class QSeries:
    """Element of Poly[[q1..qk]] / <q>^(D+1).

    ``coeffs`` maps q-exponent tuples to nonzero ``Poly`` coefficients over
    ``table``.
    """

    __slots__ = ("table", "k", "D", "coeffs")

    def __init__(self, table, k, D, coeffs=None):
        self.table = table
        self.k = int(k)
        self.D = int(D)
        clean = {}
        for e, c in (coeffs or {}).items():
            e = tuple(e)
            if len(e) != self.k:
                raise DimensionError(f"q-exponent {e} has the wrong length")
            if _qdeg(e) > self.D:
                continue
            if not isinstance(c, Poly):
                c = table.const(c)
            if c:
                clean[e] = clean[e] + c if e in clean else c
                if not clean[e]:
                    del clean[e]
        self.coeffs = clean

    # constructors -------------------------------------------------------

    @classmethod
    def from_poly(cls, p, k, D):
        return cls(p.table, k, D, {(0,) * k: p})

    @classmethod
    def scalar(cls, table, k, D, c):
        return cls(table, k, D, {(0,) * k: table.const(c)})

    @classmethod
    def q(cls, table, k, D, j, power=1):
        """The series q_{j+1}^power (0-based j)."""
        e = [0] * k
        e[j] = power
        return cls(table, k, D, {tuple(e): table.one()})

    @classmethod
    def from_q_poly(cls, p, table, q_names, D):
        """Read a polynomial in ``table`` plus the variables ``q_names`` as a series."""
        k = len(q_names)
        qpos = [p.table.index[n] for n in q_names]
        rest = [i for i in range(len(p.table.names)) if i not in qpos]
        rest_names = [p.table.names[i] for i in rest]
        if rest_names != list(table.names):
            raise DimensionError("polynomial variables do not match the series table")
        coeffs = {}
        for e, c in p.terms.items():
            qe = tuple(e[i] for i in qpos)
            if _qdeg(qe) > D:
                continue
            me = tuple(e[i] for i in rest)
            coeffs.setdefault(qe, {})[me] = c
        return cls(table, k, D, {qe: Poly(table, t) for qe, t in coeffs.items()})

    # helpers ------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, QSeries):
            if isinstance(other, Poly):
                return QSeries.from_poly(other, self.k, self.D)
            if isinstance(other, (int, Fraction, LaurentPoly, RationalFunction)):
                return QSeries.scalar(self.table, self.k, self.D, other)
            return NotImplemented
        if other.D != self.D:
            raise DimensionError(f"truncation orders differ: {self.D} vs {other.D}")
        if other.k != self.k or other.table != self.table:
            raise DimensionError("series over different rings")
        return other

    def zero(self):
        return QSeries(self.table, self.k, self.D)

    def one(self):
        return QSeries.scalar(self.table, self.k, self.D, self.table.field.one)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        coeffs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            coeffs[e] = coeffs[e] + c if e in coeffs else c
        return QSeries(self.table, self.k, self.D, coeffs)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.table, self.k, self.D, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        coeffs = {}
        for e1, c1 in self.coeffs.items():
            d1 = _qdeg(e1)
            for e2, c2 in other.coeffs.items():
                if d1 + _qdeg(e2) > self.D:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                coeffs[e] = coeffs[e] + p if e in coeffs else p
        return QSeries(self.table, self.k, self.D, coeffs)

    __rmul__ = __mul__

    def __pow__(self, m):
        if m < 0:
            return series_invert_unit(self) ** (-m)
        result = self.one()
        base = self
        while m:
            if m & 1:
                result = result * base
            base = base * base
            m >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            other = self._check(other)
            if other is NotImplemented:
                return NotImplemented
        return (
            self.D == other.D
            and self.k == other.k
            and self.table == other.table
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.D, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    # structure ----------------------------------------------------------

    def coeff(self, qexp):
        return self.coeffs.get(tuple(qexp), self.table.zero())

    def classical_limit(self):
        return self.coeff((0,) * self.k)

    def truncate(self, D):
        if D > self.D:
            raise DimensionError("cannot raise the truncation order")
        return QSeries(self.table, self.k, D, self.coeffs)

    def qdegree(self):
        """Largest total q-degree carrying a nonzero coefficient (-1 for 0)."""
        return max((_qdeg(e) for e in self.coeffs), default=-1)

    def is_scalar_valued(self):
        return all(c.is_constant() for c in self.coeffs.values())

    def scalar_coeffs(self):
        return {e: c.constant_coeff() for e, c in self.coeffs.items()}

    def map_coeffs(self, fn, table=None):
        table = table or self.table
        return QSeries(table, self.k, self.D, {e: fn(c) for e, c in self.coeffs.items()})

    def sorted_items(self):
        return sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))

    def __str__(self):
        if not self.coeffs:
            return "0"
        qnames = [f"q{j + 1}" for j in range(self.k)]
        parts = []
        for e, c in self.sorted_items():
            qm = render_monomial(qnames, e)
            body = str(c)
            if not qm:
                parts.append(body if len(c.terms) == 1 else f"({body})")
            elif body == "1":
                parts.append(qm)
            else:
                wrap = len(c.terms) > 1 or body.startswith("-")
                parts.append(f"({body})*{qm}" if wrap else f"{body}*{qm}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"QSeries(D={self.D}: {self})"


def series_mul(a, b):
    return a * b


def series_invert_unit(a):
    """Inverse of a series whose constant term is a nonzero field element."""
    a0 = a.classical_limit()
    if not a0 or not a0.is_constant():
        raise NonUnitConstantTerm(f"constant term {a0} is not an invertible scalar")
    field = a.table.field
    inv0 = field.one / a0.constant_coeff()
    rest = a - QSeries.from_poly(a0, a.k, a.D)
    # a = a0 (1 + r) with r in <q>;  1/a = inv0 * sum (-r)^m
    r = rest * inv0
    neg = -r
    total = a.one()
    term = a.one()
    for _ in range(a.D):
        term = term * neg
        if not term:
            break
        total = total + term
    return total * inv0


def series_compare(a, b):
    return a == b


def classical_limit(a):
    return a.classical_limit()


def extend_table_with_q(table, k):
    """``table`` with q1..qk appended (lowest precedence)."""
    names = [f"q{j + 1}" for j in range(k)]
    return table.extended(names, {n: ("q", j + 1) for j, n in enumerate(names)})


def series_to_q_poly(s, qtable):
    """The polynomial in ``qtable`` (table + q variables) with the same truncated terms."""
    n = len(s.table.names)
    out = {}
    for qe, c in s.coeffs.items():
        for e, v in c.terms.items():
            out[tuple(e) + tuple(qe)] = v
    return Poly(qtable, out)


__all__ += ["extend_table_with_q", "series_to_q_poly"]
