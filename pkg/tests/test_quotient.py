from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sklearn.base import clone

from qkwhitney.exceptions import CertificateFailure, DimensionError, MismatchedClassicalLimit, NotABasis
from qkwhitney.polynomials import Poly, VarTable
from qkwhitney.quotient import (
    ClassicalQuotient,
    CompletedQuotient,
    classical_model,
    freeness_certificate,
    lift_reduce,
    membership_completed,
    structure_constants,
)
from qkwhitney.series import QSeries, q_monomials
from qkwhitney.whitney import parse_shape, relation_set

FL3 = parse_shape("1,2:3")
D = 4
RS = relation_set(FL3, D)
MODEL = classical_model(RS.classical)
TABLE = MODEL.table_
NV = len(TABLE.names)

_monos = [e for e in product(range(3), repeat=NV) if sum(e) <= 2]


def elements(D=D):
    keys = st.tuples(st.sampled_from(_monos), st.sampled_from(q_monomials(2, D)))

    def build(d):
        coeffs = {}
        for (m, qe), c in d.items():
            coeffs.setdefault(qe, {})[m] = c
        return QSeries(TABLE, 2, D, {qe: Poly(TABLE, t) for qe, t in coeffs.items()})

    return st.dictionaries(keys, st.integers(-3, 3), max_size=5).map(build)


def nf(s, D=D):
    return lift_reduce(s, MODEL, RS.completed if D == RS.D else relation_set(FL3, D).completed, D)


@given(elements(), elements(), st.integers(-3, 3))
def test_linearity(a, b, alpha):
    assert nf(a * alpha + b).remainder == nf(a).remainder * alpha + nf(b).remainder


@given(elements())
def test_idempotent_on_reduced_forms(a):
    r = nf(a)
    assert nf(r.remainder) == r


@given(elements())
def test_consistent_with_classical_engine(a):
    assert nf(a).classical_part() == MODEL.coordinates(a.classical_limit())


@given(elements(D=5))
def test_truncation_coherence(a):
    full = lift_reduce(a, MODEL, relation_set(FL3, 5).completed, 5)
    low = lift_reduce(a.truncate(3), MODEL, relation_set(FL3, 3).completed, 3)
    assert full.remainder.truncate(3) == low.remainder


def test_generators_reduce_to_zero():
    for g in RS.completed:
        assert membership_completed(g, MODEL, RS.completed, D)


def test_empty_generators_are_the_zero_ideal():
    s = QSeries.from_poly(TABLE.var("e1(X1)"), 2, D)
    assert lift_reduce(s, MODEL, [], D).remainder == s


def test_mismatched_classical_limit():
    bad = list(RS.completed)
    bad[0] = bad[0] + QSeries.from_poly(TABLE.one(), 2, D)
    with pytest.raises(MismatchedClassicalLimit):
        lift_reduce(TABLE.one(), MODEL, bad, D)
    with pytest.raises(MismatchedClassicalLimit):
        freeness_certificate(MODEL, bad[:-1], D)


def test_wrong_ring_rejected():
    other = relation_set(parse_shape("1:3"), D)
    with pytest.raises(DimensionError):
        lift_reduce(other.table.one(), MODEL, RS.completed, D)


def test_cannot_raise_truncation_order():
    with pytest.raises(DimensionError):
        lift_reduce(QSeries.from_poly(TABLE.one(), 2, D), MODEL, RS.completed, D + 1)


def test_freeness_certificate_fl3():
    rep = freeness_certificate(MODEL, RS.completed, D)
    assert rep.passed
    assert rep["rank"] == 6 and rep["products_checked"] == 21


def test_freeness_certificate_detects_non_flat_deformation():
    # <x^2 - q, xy, y^2>: y*(x^2 - q) - x*(xy) = -q*y lies in the ideal but
    # y is a basis monomial, so the deformation is not flat
    t = VarTable(["x", "y"])
    x, y = t.gens()
    q = QSeries.q(t, 1, 3, 0)
    lift = lambda p: QSeries.from_poly(p, 1, 3)
    model = classical_model([x**2, x * y, y**2])
    qgens = [lift(x**2) - q, lift(x * y), lift(y**2)]
    rep = freeness_certificate(model, qgens, 3, raise_on_failure=False)
    assert not rep.passed
    assert rep["witnesses"][0]["check"] == "syzygy-lift"
    assert rep["witnesses"][0]["residue"] == "y*q1"
    with pytest.raises(CertificateFailure) as info:
        freeness_certificate(model, qgens, 3)
    assert info.value.witness["check"] == "syzygy-lift"


def test_structure_constants_need_a_basis():
    with pytest.raises(NotABasis):
        structure_constants(MODEL, RS.completed, MODEL.basis_.polys()[:-1], D)
    dup = MODEL.basis_.polys()
    dup[-1] = dup[0]
    with pytest.raises(NotABasis):
        structure_constants(MODEL, RS.completed, dup, D)


def test_structure_constants_monomial_basis_classical_part():
    basis = MODEL.basis_.polys()
    sc = structure_constants(MODEL, RS.completed, basis, D)
    for (i, j), coeffs in sc.items():
        classical = MODEL.coordinates(basis[i] * basis[j])
        assert [s.classical_limit().constant_coeff() if s else MODEL.field.zero for s in coeffs] == classical


def test_estimator_api():
    est = ClassicalQuotient(cap=500)
    assert est.get_params()["cap"] == 500
    fitted = est.fit(RS.classical)
    assert fitted is est and est.rank_ == 6
    vecs = est.transform([TABLE.var("e1(X1)") ** 2])
    assert len(vecs[0]) == 6
    assert clone(est).get_params() == est.get_params()
    cq = CompletedQuotient(qorder=3).fit(RS.classical, RS.completed)
    assert cq.rank_ == 6
    assert cq.contains(RS.completed[1].truncate(3))
    assert cq.certificate().passed
    with pytest.raises(ValueError):
        CompletedQuotient().fit(RS.classical)
