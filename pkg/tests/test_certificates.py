from fractions import Fraction

import pytest

from projarr.certificates import (
    bound_expression,
    check_certificate,
    derive_bound,
    feasible_vertices,
    objective_value,
    optimize_certificate,
    theorem1_bound,
    theorem1_certificate,
    theorem1_formula,
)
from projarr.errors import ApplicabilityViolation, Infeasible, UnboundedObjective
from projarr.inequalities import BOJANOWSKI, GREEN_TAO, HIRZEBRUCH, MELCHIOR, spec_from_dict

F = Fraction


def test_check_certificate_m6():
    cert = check_certificate(F(2, 9), F(5, 9), BOJANOWSKI, 6)
    assert cert.slacks == {2: 0, 3: F(1, 4), 4: F(1, 3), 5: F(1, 4), 6: 0}
    assert cert.tight() == [2, 6]


def test_check_certificate_m10_closed_form_slacks():
    m = 10
    cert = check_certificate(F(m + 2, 6 * m), F(2 * (m - 1), 3 * m), BOJANOWSKI, m)
    for k in range(5, m + 1):
        assert cert.slacks[k] == -F((k - 2) * (k - m), 2 * m)
        assert cert.slacks[k] >= 0


@pytest.mark.parametrize("eps", [F(1, 10**9), F(1, 100), F(1, 13)])
def test_check_certificate_k4_cap(eps):
    with pytest.raises(Infeasible) as info:
        check_certificate(F(1, 4) + eps, 0, BOJANOWSKI, 4)
    assert info.value.k == 4
    assert info.value.slack < 0
    check_certificate(F(1, 4), 0, BOJANOWSKI, 4)


@pytest.mark.parametrize("c1, c2, m", [(0, F(1, 2), 4), (F(-1), 0, 4), (F(1, 8), F(-1, 8), 4), (F(1, 8), 0, 1)])
def test_check_certificate_preconditions(c1, c2, m):
    with pytest.raises(ValueError):
        check_certificate(c1, c2, BOJANOWSKI, m)


@pytest.mark.parametrize("m, pair", [
    (6, (F(2, 9), F(5, 9))),
    (2, (F(1, 3), F(1, 3))),
    (9, (F(11, 54), F(16, 27))),
    (5, (F(7, 30), F(8, 15))),
])
def test_theorem1_certificate(m, pair):
    cert = theorem1_certificate(m)
    assert (cert.c1, cert.c2) == pair
    assert cert.slacks[2] == 0


def test_theorem1_certificate_m2_only_k2():
    cert = theorem1_certificate(2)
    assert list(cert.slacks) == [2]
    assert 2 * cert.c1 + cert.c2 == 1


def test_derive_bound_n30():
    assert derive_bound(theorem1_certificate(6), BOJANOWSKI, 30) == 211
    assert F(2, 9) * 870 + F(5, 9) * 30 + 1 == 211


def test_derive_bound_outside_regime():
    with pytest.raises(ApplicabilityViolation):
        derive_bound(theorem1_certificate(6), BOJANOWSKI, 8)


def test_derive_bound_c2_zero():
    cert = check_certificate(F(1, 4), 0, BOJANOWSKI, 4)
    assert not cert.uses_inequality
    for n in (6, 10, 31):
        assert derive_bound(cert, BOJANOWSKI, n) == F(n * (n - 1), 4) + 1


def test_derive_bound_rejects_report_only_and_mismatch():
    cert = check_certificate(F(1, 4), 0, GREEN_TAO, 3)
    with pytest.raises(ApplicabilityViolation):
        derive_bound(cert, GREEN_TAO, 20)
    with pytest.raises(ValueError):
        derive_bound(cert, BOJANOWSKI, 20)


def test_bound_expression():
    expr = bound_expression(theorem1_certificate(6), BOJANOWSKI)
    assert expr(30) == 211
    assert str(expr) == "c1*n*(n-1) + c2*n + 1"


@pytest.mark.parametrize("n, m, value", [(9, 6, 22), (30, 6, 211), (30, 20, F(359, 2))])
def test_theorem1_bound(n, m, value):
    assert theorem1_bound(n, m) == value


def test_theorem1_bound_guard():
    with pytest.raises(ApplicabilityViolation):
        theorem1_bound(10, 7)


@pytest.mark.parametrize("m, pair", [
    (6, (F(2, 9), F(5, 9))),
    (4, (F(1, 4), F(1, 2))),
    (5, (F(7, 30), F(8, 15))),
])
def test_optimize_examples(m, pair):
    cert = optimize_certificate(BOJANOWSKI, m)
    assert (cert.c1, cert.c2) == pair


def test_optimize_m5_matches_theorem1_pair():
    assert optimize_certificate(BOJANOWSKI, 5).same_pair(theorem1_certificate(5))


def test_optimize_melchior_m4_regression():
    # vertex of 12c1 - c2 = 3 and 2c1 + c2 = 1, derived by hand
    cert = optimize_certificate(MELCHIOR, 4)
    assert (cert.c1, cert.c2) == (F(2, 7), F(3, 7))
    assert cert.tight() == [2, 4]


def _float_lex_lp(spec, m):
    from scipy.optimize import linprog
    a = [[k * (k - 1), float(spec.alpha(k))] for k in range(2, m + 1)]
    b = [k - 1 for k in range(2, m + 1)]
    first = linprog([-1, 0], A_ub=a, b_ub=b, bounds=[(0, None), (0, None)], method="highs")
    c1 = first.x[0]
    second = linprog([0, -1], A_ub=a, b_ub=b, bounds=[(c1 - 1e-12, c1), (0, None)], method="highs")
    return c1, second.x[1]


@pytest.mark.parametrize("spec", [BOJANOWSKI, MELCHIOR, HIRZEBRUCH])
@pytest.mark.parametrize("m", [3, 4, 5, 7, 12, 25])
def test_optimize_against_float_lp(spec, m):
    cert = optimize_certificate(spec, m)
    c1, c2 = _float_lex_lp(spec, m)
    assert float(cert.c1) == pytest.approx(c1, abs=1e-8)
    assert float(cert.c2) == pytest.approx(c2, abs=1e-7)


def _float_at_n_lp(spec, m, n):
    from scipy.optimize import linprog
    a = [[k * (k - 1), float(spec.alpha(k))] for k in range(2, m + 1)]
    b = [k - 1 for k in range(2, m + 1)]
    res = linprog([-n * (n - 1), -float(spec.alpha0(n))], A_ub=a, b_ub=b,
                  bounds=[(0, None), (0, None)], method="highs")
    return -res.fun


@pytest.mark.parametrize("m, n", [(3, 5), (3, 12), (6, 9), (10, 40), (20, 30)])
def test_optimize_at_n_against_float_lp(m, n):
    cert = optimize_certificate(BOJANOWSKI, m, "at_n", n=n)
    assert float(objective_value(cert, BOJANOWSKI, n)) == pytest.approx(_float_at_n_lp(BOJANOWSKI, m, n), rel=1e-9)


def test_theorem1_feasible_range():
    for m in range(2, 201):
        cert = theorem1_certificate(m)
        assert cert.slacks[2] == 0
        if m >= 5:
            assert cert.slacks[m] == 0
        for k in range(5, m + 1):
            excess = cert.c1 * k * (k - 1) + cert.c2 * (k - F(k * k, 4)) - (k - 1)
            assert excess == F(k - 2, 2) * (k - m) / m


def test_lexicographic_bound_dominates_theorem1_for_m_ge_4():
    for m in range(4, 30):
        lex = optimize_certificate(BOJANOWSKI, m)
        reference = theorem1_certificate(m)
        for n in range((3 * m + 1) // 2, 3 * m + 20):
            assert derive_bound(lex, BOJANOWSKI, n) >= derive_bound(reference, BOJANOWSKI, n)


def test_lexicographic_below_theorem1_at_m3_small_n():
    # lex optimum (1/3, 0) drops the inequality; the theorem1 pair is better for n < 9
    lex = optimize_certificate(BOJANOWSKI, 3)
    reference = theorem1_certificate(3)
    assert (lex.c1, lex.c2) == (F(1, 3), 0)
    assert derive_bound(lex, BOJANOWSKI, 5) < derive_bound(reference, BOJANOWSKI, 5)
    assert derive_bound(lex, BOJANOWSKI, 9) == derive_bound(reference, BOJANOWSKI, 9)


def test_at_n_objective_monotone_in_m():
    for n in (12, 30, 60):
        values = [objective_value(optimize_certificate(BOJANOWSKI, m, "at_n", n=n), BOJANOWSKI, n)
                  for m in range(2, 2 * n // 3 + 1)]
        assert all(a >= b for a, b in zip(values, values[1:]))


def test_at_n_beats_every_vertex():
    n, m = 20, 8
    best = objective_value(optimize_certificate(BOJANOWSKI, m, "at_n", n=n), BOJANOWSKI, n)
    for c1, c2 in feasible_vertices(BOJANOWSKI, m):
        assert c1 * n * (n - 1) + c2 * n <= best


def test_soundness_on_data(fixture_profiles):
    checked = 0
    for arr, p in fixture_profiles:
        for spec in (BOJANOWSKI, HIRZEBRUCH, MELCHIOR):
            if not spec.applicable(p):
                continue
            for m in range(max(p.m, 2), p.n + 1):
                if not spec.regime(p.n, m):
                    continue
                for cert in (optimize_certificate(spec, m),
                             optimize_certificate(spec, m, "at_n", n=p.n)):
                    assert p.f >= derive_bound(cert, spec, p.n), (arr.label, spec.name, m)
                    checked += 1
    assert checked > 100


def test_unbounded_custom_spec():
    # alpha_2 = -1 leaves c2 unconstrained from above
    spec = spec_from_dict({"name": "y", "alpha0": {"const": "1"}, "alpha": [{"k": 2, "v": "-1"}]})
    with pytest.raises(UnboundedObjective):
        optimize_certificate(spec, 2)
    with pytest.raises(UnboundedObjective):
        optimize_certificate(spec, 2, "at_n", n=10)


def test_small_c1_always_feasible():
    # every right-hand side k - 1 is positive, so (c1, 0) works for tiny c1
    # and EmptyFeasibleRegion cannot fire for this constraint family
    hostile = spec_from_dict({"name": "z", "alpha0": {"const": "1"},
                              "alpha": [{"k": 2, "v": "100"}, {"k": 3, "v": "-7"}],
                              "alpha_tail": {"poly_in_k": ["1000"], "from_k": 4}})
    cert = optimize_certificate(hostile, 9)
    assert cert.c1 > 0
    check_certificate(F(1, 10**6), 0, hostile, 9)


def test_optimize_preconditions():
    with pytest.raises(ValueError):
        optimize_certificate(BOJANOWSKI, 1)
    with pytest.raises(ValueError):
        optimize_certificate(BOJANOWSKI, 5, "at_n")
    with pytest.raises(ValueError):
        optimize_certificate(BOJANOWSKI, 5, "best")


def test_certificate_json():
    assert theorem1_certificate(6).to_dict(BOJANOWSKI) == {
        "ineq": "bojanowski", "m": 6, "c1": "2/9", "c2": "5/9",
        "slacks": {"2": "0", "3": "1/4", "4": "1/3", "5": "1/4", "6": "0"},
        "bound": "c1*n*(n-1) + c2*n + 1",
    }


def test_theorem1_formula_matches_certificate_symbolically():
    # c1 n(n-1) + c2 n + 1 expanded equals ((m+2)n^2 + (3m-6)n)/(6m) + 1
    for m in range(2, 12):
        c1, c2 = theorem1_certificate(m).c1, theorem1_certificate(m).c2
        assert c1 == F(m + 2, 6 * m)
        assert -c1 + c2 == F(3 * m - 6, 6 * m)
        assert theorem1_formula(3 * m, m) == c1 * 9 * m * m + (c2 - c1) * 3 * m + 1
