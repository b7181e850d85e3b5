"""Classical quotient models and order-by-order lifting into the completed quantum quotient.

The lifting follows the constructive content of the Nakayama argument: each
classical Groebner basis element G = sum c_a g_a is lifted to
G~ = sum c_a g~_a using the stored cofactors, and a series is reduced one
q-degree at a time. Reducing the coefficient at q^alpha by G~ only injects
terms at strictly larger q-degree, so the standard monomials of the classical
quotient remain a basis at every truncation order.
"""

from __future__ import annotations

import logging

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .exceptions import CertificateFailure, DimensionError, MismatchedClassicalLimit, NotABasis
from .groebner import (
    DEFAULT_STEP_BUDGET,
    MonomialBasis,
    _Budget,
    buchberger,
    coordinates,
    standard_monomials,
)
from .linalg import identity, inverse, row_echelon
from .polynomials import Poly
from .series import DEFAULT_QORDER, QSeries, q_monomials

__all__ = [
    "ClassicalQuotient",
    "CompletedQuotient",
    "QuotientModel",
    "LiftedNormalForm",
    "classical_model",
    "lift_reduce",
    "membership_completed",
    "membership_polynomial",
    "structure_constants",
    "freeness_certificate",
    "DEFAULT_CAP",
]

log = logging.getLogger(__name__)

DEFAULT_CAP = 10**4


class ClassicalQuotient(TransformerMixin, BaseEstimator):
    """Finite-dimensional quotient S/<generators> over the coefficient field.

    ``fit`` computes a reduced Groebner basis (with cofactors) and the
    standard-monomial basis; ``transform`` maps polynomials to coordinate
    vectors in that basis.

    Parameters
    ----------
    order : {"grevlex", "lex"}
        Monomial order.
    cap : int
        Maximum number of standard monomials.
    step_budget : int
        Maximum number of reduction steps spent in Buchberger's algorithm.
    """

    def __init__(self, order="grevlex", cap=DEFAULT_CAP, step_budget=DEFAULT_STEP_BUDGET):
        self.order = order
        self.cap = cap
        self.step_budget = step_budget

    def fit(self, X, y=None):
        gens = list(X)
        if not gens:
            raise ValueError("at least one generator is required; use CompletedQuotient for the zero ideal")
        self.generators_ = gens
        self.table_ = gens[0].table
        self.gb_ = buchberger(gens, order=self.order, step_budget=self.step_budget)
        self.basis_ = standard_monomials(self.gb_, self.cap)
        self.rank_ = len(self.basis_)
        self._lift_cache = {}
        return self

    # fitted helpers -----------------------------------------------------

    @property
    def field(self):
        return self.table_.field

    def normal_form(self, f):
        check_is_fitted(self, "gb_")
        return self.gb_.normal_form(f)

    def coordinates(self, f):
        check_is_fitted(self, "gb_")
        return coordinates(f, self.basis_, self.gb_)

    def from_coordinates(self, vec):
        terms = {m: c for m, c in zip(self.basis_.monomials, vec) if c}
        return Poly(self.table_, terms)

    def transform(self, X):
        check_is_fitted(self, "gb_")
        return [self.coordinates(f) for f in X]

    def multiply(self, a, b):
        return self.normal_form(a * b)

    def contains(self, f):
        return not self.normal_form(f)


QuotientModel = ClassicalQuotient


def classical_model(gens, cap=DEFAULT_CAP, order="grevlex", step_budget=DEFAULT_STEP_BUDGET):
    return ClassicalQuotient(order=order, cap=cap, step_budget=step_budget).fit(gens)


class LiftedNormalForm:
    """Coordinates of a completed-quotient element in the classical standard-monomial basis.

    ``coordinates`` maps each basis monomial to a scalar-valued ``QSeries``;
    ``remainder`` is the fully reduced series itself.
    """

    def __init__(self, basis, remainder):
        self.basis = basis
        self.remainder = remainder
        self.D = remainder.D
        self.k = remainder.k
        coords = {}
        if basis is not None:
            per = {m: {} for m in basis.monomials}
            for qe, poly in remainder.coeffs.items():
                for m, c in poly.terms.items():
                    per[m][qe] = remainder.table.const(c)
            for m in basis.monomials:
                coords[m] = QSeries(remainder.table, self.k, self.D, per[m])
        self.coordinates = coords

    def is_zero(self):
        return not self.remainder

    def vector(self):
        return [self.coordinates[m] for m in self.basis.monomials]

    def classical_part(self):
        """q^0 coordinates as field elements."""
        z = self.remainder.table.field.zero
        return [self.coordinates[m].classical_limit().constant_coeff() if self.coordinates[m] else z
                for m in self.basis.monomials]

    def to_series(self):
        return self.remainder

    def __eq__(self, other):
        return isinstance(other, LiftedNormalForm) and self.remainder == other.remainder

    def __hash__(self):
        return hash(self.remainder)

    def __repr__(self):
        return f"LiftedNormalForm(D={self.D}: {self.remainder})"


def _check_limits(model, qgens):
    if len(qgens) != len(model.generators_):
        raise MismatchedClassicalLimit(
            f"{len(qgens)} quantum generators for {len(model.generators_)} classical ones"
        )
    for a, (g, qg) in enumerate(zip(model.generators_, qgens)):
        lim = qg.classical_limit()
        if lim != g:
            raise MismatchedClassicalLimit(
                f"generator {a}: classical limit {lim} differs from {g}"
            )


class _Lifted:
    """Quantum lifts G~ of the classical Groebner basis at a fixed truncation order."""

    def __init__(self, model, qgens, D):
        _check_limits(model, qgens)
        self.model = model
        self.D = D
        self.k = qgens[0].k if qgens else 0
        qgens = [g if g.D == D else _retruncate(g, D) for g in qgens]
        self.tails = []
        self.lifts = []
        for G, cof in zip(model.gb_.polys, model.gb_.cofactors):
            lift = QSeries(model.table_, self.k, D)
            for c, qg in zip(cof, qgens):
                if c:
                    lift = lift + QSeries.from_poly(c, self.k, D) * qg
            if lift.classical_limit() != G:  # pragma: no cover - cofactor bug guard
                raise AssertionError("cofactor lift does not reduce to the Groebner element")
            zero = (0,) * self.k
            self.lifts.append(lift)
            self.tails.append(
                sorted(((qe, p) for qe, p in lift.coeffs.items() if qe != zero),
                       key=lambda t: (sum(t[0]), t[0]))
            )
        self.order_list = q_monomials(self.k, D)

    def syzygy_residues(self):
        """Lifted normal forms of the S-polynomials of the lifted basis.

        All of them vanish iff the lifts form a standard basis of the
        completed ideal (the q-adic Buchberger criterion), i.e. iff the
        deformation is flat up to q^D.
        """
        order = self.model.gb_.order
        table = self.model.table_
        lead = [G.leading(order)[0] for G in self.model.gb_.polys]
        out = []
        for i in range(len(lead)):
            for j in range(i + 1, len(lead)):
                lcm = tuple(max(a, b) for a, b in zip(lead[i], lead[j]))
                mi = Poly(table, {tuple(a - b for a, b in zip(lcm, lead[i])): table.field.one})
                mj = Poly(table, {tuple(a - b for a, b in zip(lcm, lead[j])): table.field.one})
                s = self.lifts[i] * QSeries.from_poly(mi, self.k, self.D) - self.lifts[j] * QSeries.from_poly(mj, self.k, self.D)
                r = self.reduce(s)
                if r:
                    out.append(((i, j), r))
        return out

    def reduce(self, elem, budget=None):
        """The normative order-by-order reduction; returns the reduced series."""
        gb = self.model.gb_
        D = self.D
        W = {qe: p for qe, p in elem.coeffs.items()}
        for alpha in self.order_list:
            P = W.get(alpha)
            if P is None:
                continue
            rem, quo = gb.reduce(P, budget)
            if rem:
                W[alpha] = rem
            else:
                del W[alpha]
            da = sum(alpha)
            for i, qdict in quo.items():
                h = Poly(P.table, {e: c for e, c in qdict.items() if c})
                if not h:
                    continue
                for beta, tail in self.tails[i]:
                    if da + sum(beta) > D:
                        break
                    target = tuple(a + b for a, b in zip(alpha, beta))
                    upd = W.get(target)
                    contrib = h * tail
                    W[target] = upd - contrib if upd is not None else -contrib
                    if not W[target]:
                        del W[target]
        return QSeries(elem.table, self.k, D, W)


def _retruncate(s, D):
    if s.D == D:
        return s
    if s.D > D:
        return s.truncate(D)
    raise DimensionError(f"series known only up to q-degree {s.D}, {D} requested")


def _lifted(model, qgens, D):
    key = (tuple(qgens), D)
    cache = model.__dict__.setdefault("_lift_cache", {})
    if key not in cache:
        cache[key] = _Lifted(model, list(qgens), D)
    return cache[key]


def lift_reduce(elem, model, qgens, D=None, step_budget=None):
    """Lifted normal form of ``elem`` modulo the completed ideal <qgens>, up to q^D.

    With no quantum generators the ideal is zero and ``elem`` is returned as is.
    """
    if not qgens:
        return LiftedNormalForm(None, elem if D is None else _retruncate(elem, D))
    D = elem.D if D is None else D
    lifted = _lifted(model, qgens, D)
    if isinstance(elem, Poly):
        if elem.table != model.table_:
            raise DimensionError("element is not in the presentation ring of the model")
        elem = QSeries.from_poly(elem, lifted.k, D)
    elif elem.D != D:
        elem = _retruncate(elem, D)
    budget = _Budget(step_budget) if step_budget else None
    return LiftedNormalForm(model.basis_, lifted.reduce(elem, budget))


def membership_completed(elem, model, qgens, D=None):
    """True iff ``elem`` lies in the completed ideal, certified modulo <q>^(D+1)."""
    return lift_reduce(elem, model, qgens, D).is_zero()


_POLY_GB_CACHE = {}


def membership_polynomial(elem, polygens, step_budget=DEFAULT_STEP_BUDGET):
    """Exact membership in the ideal of the polynomial ring (q's are ring variables)."""
    key = tuple(polygens)
    if key not in _POLY_GB_CACHE:
        _POLY_GB_CACHE[key] = buchberger(polygens, step_budget=step_budget, track_cofactors=False)
    gb = _POLY_GB_CACHE[key]
    if elem.table != gb.table:
        elem = elem.change_table(gb.table)
    return gb.contains(elem)


def _coord_matrix(model, qgens, classes, D):
    """Columns: lifted coordinates of each class (scalar series)."""
    return [lift_reduce(c, model, qgens, D).vector() for c in classes]


def _series_matrix_inverse(cols, model, D, k):
    """Inverse of the p x p matrix of scalar series whose columns are ``cols``."""
    field = model.field
    p = len(cols)
    table = model.table_
    zero = (0,) * k
    # split the matrix by q-monomial: M = sum_alpha M_alpha q^alpha
    parts = {}
    for j, col in enumerate(cols):
        for i, s in enumerate(col):
            for qe, poly in s.coeffs.items():
                parts.setdefault(qe, [[field.zero] * p for _ in range(p)])[i][j] = poly.constant_coeff()
    m0 = parts.get(zero, [[field.zero] * p for _ in range(p)])
    _, piv = row_echelon(m0, field)
    if len(piv) < p:
        raise NotABasis("class list is not a basis of the classical quotient")
    inv0 = inverse(m0, field)
    # N = M0^-1 (M - M0);  M^-1 = sum_m (-N)^m M0^-1
    def series_entry(mat_by_q):
        return [[QSeries(table, k, D, {qe: table.const(mat[i][j]) for qe, mat in mat_by_q.items()})
                 for j in range(p)] for i in range(p)]

    Minv = series_entry({zero: inv0})
    Mfull = series_entry(parts)
    eye = series_entry({zero: identity(p, field)})
    M0inv_s = Minv
    N = _smatmul(M0inv_s, _smatsub(Mfull, series_entry({zero: m0})))
    negN = [[-x for x in row] for row in N]
    total = eye
    term = eye
    for _ in range(D):
        term = _smatmul(term, negN)
        total = _smatadd(total, term)
    return _smatmul(total, M0inv_s)


def _smatmul(a, b):
    n, m = len(a), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = a[i][0].zero()
            for t in range(len(b)):
                if a[i][t] and b[t][j]:
                    s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def _smatadd(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _smatsub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def structure_constants(model, qgens, class_list, D=DEFAULT_QORDER):
    """Coordinates of each product a*b in the supplied class basis.

    Returns a dict ``(i, j) -> list of scalar QSeries`` (one per class).
    """
    classes = [c if isinstance(c, QSeries) else QSeries.from_poly(c, qgens[0].k, D) for c in class_list]
    classes = [_retruncate(c, D) for c in classes]
    if len(classes) != model.rank_:
        raise NotABasis(f"{len(classes)} classes for a rank {model.rank_} quotient")
    k = classes[0].k
    cols = _coord_matrix(model, qgens, classes, D)
    minv = _series_matrix_inverse(cols, model, D, k)
    table = {}
    for i, a in enumerate(classes):
        for j in range(i, len(classes)):
            v = lift_reduce(a * classes[j], model, qgens, D).vector()
            x = [
                _sum_series([minv[r][t] * v[t] for t in range(len(v)) if minv[r][t] and v[t]], a)
                for r in range(len(v))
            ]
            table[(i, j)] = x
            table[(j, i)] = x
    return table


def _sum_series(items, like):
    total = like.zero()
    for s in items:
        total = total + s
    return total


class CertificateReport(dict):
    """Plain dict with attribute access for the common fields."""

    @property
    def passed(self):
        return self.get("status") == "pass"


def freeness_certificate(model, qgens, D=4, raise_on_failure=True):
    """Check at truncation order D that the classical basis stays a basis.

    (i) every basis monomial is its own lifted normal form; (ii) the q^0
    part of each lifted product matches the classical structure constants;
    (iii) every coordinate coefficient is a scalar of the ground field, so
    no denominator vanishing at q = 0 appears; (iv) the S-polynomials of the
    lifted Groebner basis reduce to zero, so lifted normal forms are unique.
    """
    _check_limits(model, qgens)
    basis_polys = model.basis_.polys()
    k = qgens[0].k
    witnesses = []
    for b in basis_polys:
        lnf = lift_reduce(QSeries.from_poly(b, k, D), model, qgens, D)
        if lnf.remainder != QSeries.from_poly(b, k, D):
            witnesses.append({"check": "basis-fixed", "element": str(b), "got": str(lnf.remainder)})
    for (i, j), r in _lifted(model, qgens, D).syzygy_residues():
        witnesses.append({"check": "syzygy-lift", "pair": [i, j], "residue": str(r)})
    products = 0
    max_qdeg = 0
    for i, a in enumerate(basis_polys):
        for b in basis_polys[i:]:
            prod = a * b
            lnf = lift_reduce(QSeries.from_poly(prod, k, D), model, qgens, D)
            classical = model.coordinates(prod)
            products += 1
            if lnf.classical_part() != classical:
                witnesses.append({"check": "classical-limit", "element": str(prod)})
            for s in lnf.vector():
                max_qdeg = max(max_qdeg, s.qdegree())
                if not s.is_scalar_valued():
                    witnesses.append({"check": "scalar-coefficients", "element": str(prod)})
    report = CertificateReport(
        D=D,
        rank=model.rank_,
        basis=model.basis_.render(),
        products_checked=products,
        max_observed_qdegree=max_qdeg,
        status="pass" if not witnesses else "fail",
        witnesses=witnesses,
    )
    if witnesses and raise_on_failure:
        raise CertificateFailure(f"freeness certificate failed at D={D}", witnesses[0])
    return report


class CompletedQuotient(TransformerMixin, BaseEstimator):
    """Completed quantum quotient S[[q]]/<quantum generators>, truncated at q^qorder.

    ``fit(classical, quantum)`` builds the classical model and the lifted
    Groebner basis; ``transform`` returns lifted coordinate vectors.
    """

    def __init__(self, qorder=DEFAULT_QORDER, order="grevlex", cap=DEFAULT_CAP,
                 step_budget=DEFAULT_STEP_BUDGET):
        self.qorder = qorder
        self.order = order
        self.cap = cap
        self.step_budget = step_budget

    def fit(self, X, y=None):
        if y is None:
            raise ValueError("CompletedQuotient.fit needs the quantum generators as y")
        self.model_ = ClassicalQuotient(self.order, self.cap, self.step_budget).fit(X)
        self.quantum_generators_ = [_retruncate(g, self.qorder) for g in y]
        _lifted(self.model_, self.quantum_generators_, self.qorder)
        self.rank_ = self.model_.rank_
        return self

    def lift(self, elem):
        check_is_fitted(self, "model_")
        return lift_reduce(elem, self.model_, self.quantum_generators_, self.qorder)

    def transform(self, X):
        return [self.lift(e).vector() for e in X]

    def contains(self, elem):
        return self.lift(elem).is_zero()

    def certificate(self, D=None, raise_on_failure=False):
        check_is_fitted(self, "model_")
        D = self.qorder if D is None else D
        qgens = [_retruncate(g, D) for g in self.quantum_generators_]
        return freeness_certificate(self.model_, qgens, D, raise_on_failure)


__all__ += ["CertificateReport", "MonomialBasis"]
