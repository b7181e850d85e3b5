"""Sparse multivariate polynomials over a coefficient field."""

from __future__ import annotations

from fractions import Fraction

from .coefficients import QQ_FIELD, LaurentPoly, RationalFunction
from .exceptions import DimensionError

__all__ = ["VarTable", "Poly", "grevlex_key", "lex_key", "ORDERS", "poly_arith"]


def grevlex_key(exps):
    """Sort key: larger key means larger monomial; the first variable is the largest."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def lex_key(exps):
    return exps


ORDERS = {"grevlex": grevlex_key, "lex": lex_key}


class VarTable:
    """Ordered ring variables over a coefficient field.

    ``blocks`` maps each variable name to a tag such as ``("X", j, l)``,
    ``("Y", j, l)``, ``("q", j)`` or ``("x", i)``; the table order is also
    the variable precedence used by monomial orders.
    """

    def __init__(self, names, field=QQ_FIELD, blocks=None):
        names = list(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        self.names = tuple(names)
        self.field = field
        self.blocks = dict(blocks or {})
        self.index = {n: i for i, n in enumerate(self.names)}

    @property
    def nvars(self):
        return len(self.names)

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, VarTable)
            and self.names == other.names
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"VarTable({list(self.names)}, {self.field!r})"

    def var(self, name):
        i = self.index[name]
        e = [0] * len(self.names)
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.var(n) for n in self.names]

    def const(self, c):
        return Poly(self, {(0,) * len(self.names): c})

    def zero(self):
        return Poly(self, {})

    def one(self):
        return self.const(self.field.one)

    def with_field(self, field):
        return VarTable(self.names, field, self.blocks)

    def extended(self, extra_names, extra_blocks=None):
        """A new table with ``extra_names`` appended (lowest precedence)."""
        blocks = dict(self.blocks)
        blocks.update(extra_blocks or {})
        return VarTable(list(self.names) + list(extra_names), self.field, blocks)

    def sub_table(self, names):
        blocks = {n: self.blocks[n] for n in names if n in self.blocks}
        return VarTable(names, self.field, blocks)


def _convert(field, c):
    if isinstance(c, Poly):
        raise TypeError("nested polynomial coefficient")
    return field.convert(c)


class Poly:
    """Canonical sparse polynomial: exponent tuple -> nonzero field element."""

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table, terms=None, _clean=False):
        self.table = table
        if _clean:
            self.terms = terms
        else:
            field = table.field
            n = len(table.names)
            out = {}
            for e, c in (terms or {}).items():
                e = tuple(e)
                if len(e) != n:
                    raise DimensionError(f"exponent {e} does not fit {n} variables")
                if any(x < 0 for x in e):
                    raise ValueError("negative exponent in a polynomial")
                c = _convert(field, c)
                if c:
                    if e in out:
                        s = out[e] + c
                        if s:
                            out[e] = s
                        else:
                            del out[e]
                    else:
                        out[e] = c
            self.terms = out
        self._hash = None

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.table is not self.table and other.table != self.table:
                raise DimensionError("polynomials over different variable tables")
            return other
        if isinstance(other, (int, Fraction, LaurentPoly, RationalFunction)):
            return self.table.const(other)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            if e in terms:
                s = terms[e] + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
            else:
                terms[e] = c
        return Poly(self.table, terms, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.table, {e: -c for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if e in terms:
                    s = terms[e] + c
                    if s:
                        terms[e] = s
                    else:
                        del terms[e]
                else:
                    terms[e] = c
        return Poly(self.table, terms, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = self.table.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, scalar):
        if isinstance(scalar, Poly):
            if not scalar.is_constant():
                raise TypeError("division by a non-constant polynomial")
            scalar = scalar.constant_coeff()
        inv = self.table.field.one / self.table.field.convert(scalar)
        return self.scale(inv)

    def scale(self, c):
        c = self.table.field.convert(c)
        if not c:
            return self.table.zero()
        return Poly(self.table, {e: v * c for e, v in self.terms.items()}, _clean=True)

    def mul_term(self, exps, c):
        """Multiply by the single term ``c * x^exps``."""
        return Poly(
            self.table,
            {tuple(a + b for a, b in zip(e, exps)): v * c for e, v in self.terms.items()},
            _clean=True,
        )

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = self._coerce(other)
            except DimensionError:
                return False
            if other is NotImplemented:
                return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection -------------------------------------------------------

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coeff(self):
        return self.terms.get((0,) * len(self.table.names), self.table.field.zero)

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.table.field.zero)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def leading(self, order="grevlex"):
        """(exponent, coefficient) of the leading term."""
        key = ORDERS[order]
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def sorted_terms(self, order="grevlex"):
        key = ORDERS[order]
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return [self.table.names[i] for i in sorted(used)]

    # -- transformations --------------------------------------------------

    def map_coeffs(self, fn, table=None):
        table = table or self.table
        return Poly(table, {e: fn(c) for e, c in self.terms.items()})

    def change_table(self, table):
        """Re-express in ``table``, matching variables by name.

        Variables missing from ``table`` must not occur in the polynomial.
        """
        used = self.variables()
        missing = [n for n in used if n not in table.index]
        if missing:
            raise DimensionError(f"variables {missing} are not in the target table")
        pos = [table.index.get(n) for n in self.table.names]
        n = len(table.names)
        terms = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, x in enumerate(e):
                if x:
                    new[pos[i]] = x
            terms[tuple(new)] = c
        return Poly(table, terms)

    def subs(self, values, table=None):
        """Substitute ``values`` (name -> Poly or scalar) and expand.

        Unlisted variables are kept. The result lives in ``table`` (default:
        this polynomial's table).
        """
        table = table or self.table
        images = []
        for name in self.table.names:
            if name in values:
                v = values[name]
                images.append(v if isinstance(v, Poly) else table.const(v))
            else:
                images.append(table.var(name))
        result = table.zero()
        cache = {}
        for e, c in self.terms.items():
            term = table.const(c)
            for i, x in enumerate(e):
                if x:
                    key = (i, x)
                    if key not in cache:
                        cache[key] = images[i] ** x
                    term = term * cache[key]
            result = result + term
        return result

    def evaluate(self, values):
        """Evaluate at field values, one per variable (or a name -> value dict)."""
        field = self.table.field
        if isinstance(values, dict):
            values = [values[n] for n in self.table.names]
        values = [field.convert(v) for v in values]
        total = field.zero
        for e, c in self.terms.items():
            term = c
            for v, x in zip(values, e):
                if x:
                    term = term * v**x
            total = total + term
        return total

    # -- rendering --------------------------------------------------------

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"Poly({self})"


def _coeff_text(c):
    s = str(c)
    if isinstance(c, Fraction):
        return s, (c < 0)
    if isinstance(c, RationalFunction):
        if c.is_constant():
            v = c.constant_value()
            return str(v), v < 0
        simple = c.den == 1 and len(c.num.terms()) == 1
        if simple:
            neg = s.startswith("-")
            return s, neg
        return f"({s})", False
    return s, False


def render_monomial(names, e):
    parts = []
    for name, x in zip(names, e):
        if x == 0:
            continue
        parts.append(name if x == 1 else f"{name}^{x}")
    return "*".join(parts)


def render_poly(p, order="grevlex"):
    if not p.terms:
        return "0"
    names = p.table.names
    out = []
    for idx, (e, c) in enumerate(p.sorted_terms(order)):
        text, neg = _coeff_text(c)
        mono = render_monomial(names, e)
        if neg:
            text = text[1:]
        if mono:
            body = mono if text == "1" else f"{text}*{mono}"
        else:
            body = text
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def poly_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")
