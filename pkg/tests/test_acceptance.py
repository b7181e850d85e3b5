"""Acceptance criteria, one printed PASS/FAIL line each. All tolerances are
exact; truncated statements hold at the stated q-order."""

import pytest

from conftest import ACCEPTANCE_LINES
from qkwhitney import checks
from qkwhitney.quotient import classical_model, membership_polynomial
from qkwhitney.schubert import divisor_generation_check
from qkwhitney.whitney import parse_shape


def report(number, title, ok, detail=""):
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}"
    if detail:
        line += f"  [{detail}]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def test_criterion_01_fl3_polynomial_relations():
    rep = checks.check_fl3_polynomial_relations()
    bad = [r["index"] for r in rep["generators"] if not r["match"]]
    ok = report(1, "Fl(3) polynomial relations match the printed list", rep["status"] == "pass",
                f"mismatched generators {bad}" if bad else "")
    assert ok, rep.get("witness")


def test_criterion_02_kernel_dichotomy():
    rep = checks.check_kernel_dichotomy(D=6)
    ok = report(2, "kernel element: completed yes, polynomial no, cleared yes",
                rep["in_completed_ideal"] and not rep["in_polynomial_ideal"]
                and rep["cleared_in_polynomial_ideal"])
    assert ok


def test_criterion_03_toy_completion():
    rep = checks.check_toy_completion(range(1, 7))
    ok = report(3, "toy <(1-q)x>: x lifts to 0 for D=1..6, zero divisors in the polynomial ring",
                all(rep["lift_reduce_x_is_zero"].values()) and not rep["x_in_polynomial_ideal"]
                and not rep["one_minus_q_in_polynomial_ideal"] and rep["product_in_polynomial_ideal"])
    assert ok


def test_criterion_04_rank_table():
    rep = checks.check_rank_table()
    rows = {r["shape"]: r["groebner_rank"] for r in rep["rows"]}
    ok = report(4, "Groebner rank equals coset count", rep["status"] == "pass", str(rows))
    assert ok


def test_criterion_05_gr24_minimal_polynomial():
    rep = checks.check_gr24_minpoly()
    ok = report(5, "Gr(2,4) divisor: minimal polynomial degree 5, span 5 < 6",
                rep["degree"] == 5 and rep["span_dimension"] == 5 and rep["rank"] == 6,
                f"degree {rep['degree']}, span {rep['span_dimension']}")
    assert ok


def test_criterion_06_freeness_certificate():
    rep = checks.check_freeness(("1,2:3", "2:4", "1:3", "1,2,3:4"), D=4)
    ok = report(6, "freeness certificate at D=4", rep["status"] == "pass",
                ", ".join(f"{r['shape']}:{r['status']}" for r in rep["rows"]))
    assert ok


def test_criterion_07_structure_constants():
    rep = checks.check_structure_constants(low=4, high=6)
    ok = report(7, "Fl(3) Schubert structure constants stable D=4 vs 6, clearable at q=0",
                rep["stable_through_degree"] == 4 and rep["scalar_coefficients"]
                and not rep["uncleared_entries"],
                f"max cleared q-degree {rep['max_cleared_qdegree']}")
    assert ok


def test_criterion_08_localization_oracle():
    rep = checks.check_localization_oracle(("1,2:3", "2:4"), pairs=200)
    ok = report(8, "localization is multiplicative on 200 random pairs per shape",
                rep["status"] == "pass" and all(r["pairs"] == 200 for r in rep["rows"]))
    assert ok


def test_criterion_09_triangularity():
    rep = checks.check_triangularity((3, 4))
    sizes = [r["size"] for r in rep["rows"]]
    ok = report(9, "Grothendieck localization matrices triangular, divisor identities hold",
                rep["status"] == "pass" and sizes == [6, 24], f"sizes {sizes}")
    assert ok


def test_criterion_10_line_bundle_identity():
    rep = checks.check_line_bundle_identity((3, 4))
    ok = report(10, "X1_1*e_{n-1}(Y1) - e_n(T) in the ideal for P^2, P^3", rep["status"] == "pass")
    assert ok


def test_criterion_11_printed_completed_variant():
    rep = checks.check_printed_completed_variant(D=6)
    verdict = "same ideal" if rep["same_ideal"] else "different ideals"
    ok = report(11, "flagged completed relation: definite verdict with witness",
                rep["kernel_element_in_mechanical_ideal"] and rep["witness"] is not None,
                f"{verdict}; witness generator {rep['witness'].get('index')}")
    assert ok
