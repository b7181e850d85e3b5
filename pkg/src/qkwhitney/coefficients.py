"""Ground rings: Laurent polynomials in the torus characters and their fraction field.

``LaurentPoly`` is a small hand-rolled implementation of Z[T1^{+-1}, ..., Tn^{+-1}].
``RationalFunction`` is an element of Q(T1, ..., Tn); numerator and denominator
are sympy sparse polynomials over QQ, kept in lowest terms with a monic
denominator (lex order on T1 > T2 > ...).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from sympy import QQ
from sympy.polys.rings import ring as _sympy_ring

from .exceptions import DimensionError, DomainError

__all__ = [
    "LaurentPoly",
    "RationalFunction",
    "RationalFunctionField",
    "RationalField",
    "QQ_FIELD",
    "laurent_product",
    "is_unit",
    "specialize",
    "ratfun_normalize",
    "render_scalar",
]


def _to_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    # gmpy2.mpq and friends
    return Fraction(int(c.numerator), int(c.denominator))


def _format_coeff_term(coeff, mono_str):
    """Return (sign, body) for one rendered term."""
    sign = "-" if coeff < 0 else "+"
    a = -coeff if coeff < 0 else coeff
    if not mono_str:
        return sign, str(a)
    if a == 1:
        return sign, mono_str
    return sign, f"{a}*{mono_str}"


def _join_terms(pieces):
    if not pieces:
        return "0"
    out = []
    for i, (sign, body) in enumerate(pieces):
        if i == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def _mono_str(exps, names):
    parts = []
    for e, name in zip(exps, names):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _render_key(exps):
    # graded, then lexicographically largest first
    return (-sum(exps), tuple(-e for e in exps))


class LaurentPoly:
    """An element of Z[T1^{+-1}, ..., Tn^{+-1}] in canonical sparse form."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars, terms=None):
        self.nvars = int(nvars)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars:
                raise DimensionError(f"exponent {exps} does not have length {self.nvars}")
            if not isinstance(c, int):
                c = _to_fraction(c)
                if c.denominator != 1:
                    raise DomainError("LaurentPoly coefficients must be integers")
                c = int(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if clean[exps] == 0:
                    del clean[exps]
        self.terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def gen(cls, nvars, i, power=1):
        """The character T_{i+1}^power (0-based index)."""
        exps = [0] * nvars
        exps[i] = power
        return cls(nvars, {tuple(exps): 1})

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

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
                terms[e] = terms.get(e, 0) + c1 * c2
        return LaurentPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_unit(self):
        if len(self.terms) != 1:
            return False
        (c,) = self.terms.values()
        return c in (1, -1)

    def inverse(self):
        if not self.is_unit():
            raise DomainError(f"{self} is not a unit of Z[T^+-1]")
        ((e, c),) = self.terms.items()
        return LaurentPoly(self.nvars, {tuple(-x for x in e): c})

    def specialize(self, values):
        if len(values) != self.nvars:
            raise DimensionError("one value per parameter is required")
        values = [_to_fraction(v) for v in values]
        if any(v == 0 for v in values):
            raise DomainError("cannot specialize a Laurent polynomial at 0")
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = Fraction(c)
            for v, e in zip(values, exps):
                term *= v**e
            total += term
        return total

    def to_rational_function(self, field=None):
        field = field or RationalFunctionField(self.nvars)
        if field.nvars != self.nvars:
            raise DimensionError("field has a different number of parameters")
        shift = [min([0] + [e[i] for e in self.terms]) for i in range(self.nvars)]
        R = field.ring
        num = R.zero
        for exps, c in self.terms.items():
            num += R({tuple(e - s for e, s in zip(exps, shift)): QQ(c)})
        den = R({tuple(-s for s in shift): QQ(1)})
        return ratfun_normalize(num, den, field)

    def __str__(self):
        names = [f"T{i + 1}" for i in range(self.nvars)]
        pieces = [
            _format_coeff_term(c, _mono_str(e, names))
            for e, c in sorted(self.terms.items(), key=lambda t: _render_key(t[0]))
        ]
        return _join_terms(pieces)

    def __repr__(self):
        return f"LaurentPoly({self})"


def laurent_product(a, b):
    if not isinstance(a, LaurentPoly) or not isinstance(b, LaurentPoly):
        raise TypeError("laurent_product expects LaurentPoly operands")
    return a * b


def is_unit(a):
    return a.is_unit()


def specialize(a, assignment):
    return a.specialize(assignment)


@lru_cache(maxsize=None)
def _ring_for(nvars):
    names = ",".join(f"T{i + 1}" for i in range(nvars)) if nvars else ""
    if nvars == 0:
        R = _sympy_ring("", QQ)[0]
    else:
        R = _sympy_ring(names, QQ)[0]
    return R


class RationalField:
    """The rationals, with the small interface polynomial code expects."""

    nvars = 0
    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, c):
        if isinstance(c, Fraction):
            return c
        if isinstance(c, (int, Rational)):
            return Fraction(c)
        if isinstance(c, LaurentPoly):
            if c.nvars == 0:
                return Fraction(c.terms.get((), 0))
            raise DomainError("cannot coerce a Laurent polynomial into Q")
        if isinstance(c, RationalFunction) and c.is_constant():
            return c.constant_value()
        try:
            return _to_fraction(c)
        except (AttributeError, TypeError):
            raise DomainError(f"cannot coerce {c!r} into Q") from None

    def render(self, c):
        return str(c)

    def specialize(self, c, values):
        return c

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ_FIELD = RationalField()


class RationalFunctionField:
    """Q(T1, ..., Tn). Instances for the same n compare equal."""

    def __init__(self, nvars):
        self.nvars = int(nvars)
        self.ring = _ring_for(self.nvars)
        self.zero = RationalFunction(self, self.ring.zero, self.ring.one, _normalized=True)
        self.one = RationalFunction(self, self.ring.one, self.ring.one, _normalized=True)

    def gen(self, i):
        """T_{i+1} (0-based index)."""
        return RationalFunction(self, self.ring.gens[i], self.ring.one, _normalized=True)

    @property
    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def convert(self, c):
        if isinstance(c, RationalFunction):
            if c.field.nvars != self.nvars:
                raise DimensionError("rational functions over different parameter sets")
            return c
        if isinstance(c, LaurentPoly):
            return c.to_rational_function(self)
        if isinstance(c, (int, Fraction)) or hasattr(c, "denominator"):
            f = _to_fraction(c)
            return RationalFunction(self, self.ring(QQ(f.numerator, f.denominator)), self.ring.one,
                                    _normalized=True)
        raise DomainError(f"cannot coerce {c!r} into Q(T)")

    def render(self, c):
        return str(c)

    def specialize(self, c, values):
        return c.specialize(values)

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and other.nvars == self.nvars

    def __hash__(self):
        return hash(("QT", self.nvars))

    def __repr__(self):
        return f"QQ(T1..T{self.nvars})"


def ratfun_normalize(num, den, field=None):
    """Build the canonical ``num/den``.

    ``num`` and ``den`` may be sympy ring elements, ints, Fractions or
    LaurentPolys; ``field`` is inferred from LaurentPoly arguments if omitted.
    """
    if field is None:
        for x in (num, den):
            if isinstance(x, (LaurentPoly, RationalFunction)):
                field = RationalFunctionField(x.nvars)
                break
        else:
            raise DomainError("cannot infer the parameter count")
    if not hasattr(num, "ring") or isinstance(num, RationalFunction):
        num = field.convert(num)
    if not hasattr(den, "ring") or isinstance(den, RationalFunction):
        den = field.convert(den)
    if isinstance(num, RationalFunction) or isinstance(den, RationalFunction):
        num = field.convert(num) if not isinstance(num, RationalFunction) else num
        den = field.convert(den) if not isinstance(den, RationalFunction) else den
        return num / den
    return RationalFunction(field, num, den)


class RationalFunction:
    """Canonical element of Q(T1, ..., Tn)."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field, num, den, _normalized=False):
        self.field = field
        if not _normalized:
            if not den:
                raise ZeroDivisionError("zero denominator")
            if not num:
                num, den = field.ring.zero, field.ring.one
            elif den.is_ground:
                c = den.LC
                num, den = num.quo_ground(c), field.ring.one
            else:
                num, den = num.cancel(den)
                c = den.LC
                if c != 1:
                    num, den = num.quo_ground(c), den.quo_ground(c)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def nvars(self):
        return self.field.nvars

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.field.nvars != self.field.nvars:
                raise DimensionError("rational functions over different parameter sets")
            return other
        try:
            return self.field.convert(other)
        except DomainError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            if self.den == 1:
                num = self.num + other.num
                return RationalFunction(self.field, num, self.den, _normalized=True) if num else self.field.zero
            return RationalFunction(self.field, self.num + other.num, self.den)
        return RationalFunction(self.field, self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.field, -self.num, self.den, _normalized=True)

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
        if not self.num or not other.num:
            return self.field.zero
        if self.den == 1 and other.den == 1:
            return RationalFunction(self.field, self.num * other.num, self.den, _normalized=True)
        return RationalFunction(self.field, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.field, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k):
        if k < 0:
            return (self.field.one / self) ** (-k)
        return RationalFunction(self.field, self.num**k, self.den**k, _normalized=True)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = self.field.convert(other)
            except DomainError:
                return NotImplemented
        return self.field.nvars == other.field.nvars and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def is_constant(self):
        return self.den == 1 and self.num.is_ground

    def constant_value(self):
        if not self.is_constant():
            raise DomainError(f"{self} is not a constant")
        return _to_fraction(self.num.LC) if self.num else Fraction(0)

    def is_polynomial(self):
        return self.den == 1

    def specialize(self, values):
        """Evaluate at rational values, one per parameter."""
        if len(values) != self.nvars:
            raise DimensionError("one value per parameter is required")
        vals = [QQ(_to_fraction(v).numerator, _to_fraction(v).denominator) for v in values]
        if self.nvars == 0:
            return self.constant_value()
        d = self.den.evaluate(list(zip(self.field.ring.gens, vals))) if self.nvars else self.den
        if d == 0:
            raise DomainError(f"denominator of {self} vanishes at {list(values)}")
        n = self.num.evaluate(list(zip(self.field.ring.gens, vals)))
        return _to_fraction(n) / _to_fraction(d)

    def as_laurent(self):
        """Return the equal LaurentPoly, if the denominator is a monomial and
        the numerator has integer coefficients."""
        if len(self.den.terms()) != 1:
            raise DomainError(f"{self} is not a Laurent polynomial")
        ((dexp, _),) = self.den.terms()
        terms = {}
        for exps, c in self.num.terms():
            c = _to_fraction(c)
            if c.denominator != 1:
                raise DomainError(f"{self} has non-integral coefficients")
            terms[tuple(a - b for a, b in zip(exps, dexp))] = int(c)
        return LaurentPoly(self.nvars, terms)

    def _render_poly(self, p):
        names = [f"T{i + 1}" for i in range(self.nvars)]
        pieces = [
            _format_coeff_term(_to_fraction(c), _mono_str(e, names))
            for e, c in sorted(p.terms(), key=lambda t: _render_key(t[0]))
        ]
        return _join_terms(pieces)

    def __str__(self):
        n = self._render_poly(self.num)
        if self.den == 1:
            return n
        if len(self.num.terms()) > 1:
            n = f"({n})"
        d = self._render_poly(self.den)
        if len(self.den.terms()) > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RationalFunction({self})"


def render_scalar(c):
    """Canonical text for a field element (Fraction or RationalFunction)."""
    return str(c)
