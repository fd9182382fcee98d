"""
Testes do isolamento de raízes por cadeias de Sturm.
"""

from fractions import Fraction

import mpmath
import pytest
import sympy
from sympy.polys.domains import QQ

from src.exact_arith import factorial
from src.polynomials import Family, adapted, build
from src.reports import STATUS_FAIL, STATUS_INFO
from src.roots import (
    IsolatingInterval,
    RefinementExhaustedError,
    RootReport,
    cauchy_bound,
    check_endpoint_bound,
    check_interlacing,
    decreasing_from,
    endpoint_ratio_bound,
    even_root_count,
    extremal_zero_checks,
    factorial_root_sequences,
    isolate_all,
    real_root_count,
    report_to_dict,
    root_checks,
    root_report,
    stirling_lower_bound_holds,
    sturm_chain,
    sturm_count,
)

HALF_LINE = [Fraction(-1, 2), Fraction(1)]  # y - 1/2


def test_sturm_chain_of_square():
    chain = sturm_chain([Fraction(1), Fraction(-2), Fraction(1)])  # (y-1)^2
    assert not chain.squarefree
    assert real_root_count([1, -2, 1], chain) == 1


def test_sturm_chain_terms_are_primitive():
    chain = sturm_chain([Fraction(1, 2), Fraction(-3, 2), Fraction(1)])  # (y-1)(y-1/2)
    assert chain.squarefree
    for q in chain.polys:
        assert all(int(c.denominator) == 1 for c in q)
    assert list(chain.polys[0]) == [QQ(2), QQ(-3), QQ(1)]
    assert chain.variations(0) - chain.variations(2) == 2


def test_cauchy_bound():
    assert cauchy_bound([Fraction(-6), Fraction(1), Fraction(1)]) == 7  # raízes 2 e -3
    assert cauchy_bound([Fraction(0), Fraction(0), Fraction(5)]) == 1


def test_sturm_count_examples():
    assert sturm_count(HALF_LINE, 0, 1) == 1
    assert sturm_count(adapted(build(Family.LAMBDA, 2)), 0, 1) == 1
    assert sturm_count(adapted(build(Family.XI, 5)), 0, 1) == 4


def test_sturm_count_shifts_endpoint_on_root():
    # raiz em a = 1/2 fica fora de (a, b] após o deslocamento
    assert sturm_count(HALF_LINE, Fraction(1, 2), 1) == 0
    assert sturm_count(HALF_LINE, 0, Fraction(1, 2)) == 1


def test_sturm_count_rejects_empty_interval():
    with pytest.raises(ValueError):
        sturm_count(HALF_LINE, 1, 0)


def test_sturm_count_gives_up_on_dense_roots():
    y = sympy.Symbol("y")
    dense = sympy.Poly(sympy.prod([y - sympy.Rational(i, 2**64) for i in range(12)]), y)
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(dense.all_coeffs())]
    with pytest.raises(ValueError, match="endpoint-on-root"):
        sturm_count(coeffs, 0, 1)


def test_isolate_constant_polynomial():
    report = isolate_all(adapted(build(Family.XI, 1)))
    assert report.intervals == []
    assert report.all_real and report.all_simple


def test_isolate_lambda_two():
    report = isolate_all(adapted(build(Family.LAMBDA, 2)))
    assert len(report.intervals) == 1
    iv = report.intervals[0]
    assert 0 < iv.lo < iv.hi < 1
    assert iv.width <= Fraction(1, 2**80)
    assert report.all_real and report.all_simple and report.all_in_unit


@pytest.mark.parametrize("family", list(Family))
@pytest.mark.parametrize("n", range(2, 11))
def test_isolate_all_real_simple_in_unit(family, n):
    report = root_report(family, n)
    assert len(report.intervals) == n - 1
    assert report.all_real and report.all_simple and report.all_in_unit
    assert report.largest_root_bound_ok
    assert all(a.hi <= b.lo for a, b in zip(report.intervals, report.intervals[1:]))


def test_intervals_contain_sympy_roots():
    y = sympy.Symbol("y")
    q = adapted(build(Family.LAMBDA, 4))
    expr = sum(sympy.Rational(c.numerator, c.denominator) * y**t for t, c in enumerate(q.coeffs))
    roots = sorted(sympy.Poly(expr, y).nroots(n=40))
    report = isolate_all(q, Fraction(1, 2**40))
    for iv, r in zip(report.intervals, roots):
        assert float(iv.lo) - 1e-12 <= float(r) <= float(iv.hi) + 1e-12


@pytest.mark.parametrize("family", list(Family))
@pytest.mark.parametrize("n", range(2, 10))
def test_interlacing_consecutive(family, n):
    assert check_interlacing(root_report(family, n), root_report(family, n + 1))


def test_interlacing_from_constant():
    assert check_interlacing(root_report(Family.XI, 1), root_report(Family.XI, 2))


def test_interlacing_detects_violation():
    p = isolate_all([Fraction(-9, 10), Fraction(1)])  # raiz 9/10
    q = isolate_all([Fraction(1, 10), Fraction(-7, 10), Fraction(1)])  # raízes 1/5 e 1/2
    assert not check_interlacing(p, q)


def test_interlacing_refines_overlapping_intervals():
    p = isolate_all([Fraction(-1, 3), Fraction(1)], Fraction(1, 2))
    q = isolate_all([Fraction(1, 12), Fraction(-2, 3), Fraction(1)], Fraction(1, 2))  # 1/6 e 1/2
    assert check_interlacing(p, q)


def test_interlacing_exhausts_on_shared_root():
    p = isolate_all([Fraction(-1, 2), Fraction(1)])
    q = isolate_all([Fraction(1, 4), Fraction(-5, 4), Fraction(1)])  # raízes 1/4 e 1
    assert check_interlacing(p, q)
    shared = isolate_all([Fraction(1, 8), Fraction(-3, 4), Fraction(1)])  # 1/4 e 1/2
    with pytest.raises(RefinementExhaustedError, match="refinement-exhausted"):
        check_interlacing(p, shared)


def test_endpoint_ratio_examples():
    assert endpoint_ratio_bound(HALF_LINE, 1, "right") == 0.5
    ctx = mpmath.MPContext()
    ctx.prec = 128
    for n in range(2, 8):
        lam = endpoint_ratio_bound(adapted(build(Family.LAMBDA, n)), 1, "right", 128)
        expected = ctx.root(ctx.mpf(2 ** (2 * n - 1)) / factorial(2 * n), n - 1)
        assert abs(lam - expected) <= abs(expected) * ctx.mpf(2) ** -120
        xi = endpoint_ratio_bound(adapted(build(Family.XI, n)), 1, "right", 128)
        expected = 1 / ctx.root(ctx.mpf(factorial(2 * n - 1)), n - 1)
        assert abs(xi - expected) <= abs(expected) * ctx.mpf(2) ** -120


def test_endpoint_ratio_errors():
    with pytest.raises(ValueError):
        endpoint_ratio_bound(HALF_LINE, Fraction(1, 2), "right")
    with pytest.raises(ValueError):
        endpoint_ratio_bound(HALF_LINE, 1, "up")
    with pytest.raises(ValueError):
        endpoint_ratio_bound([Fraction(3)], 1, "right")


def test_left_endpoint_bound():
    report = isolate_all([Fraction(3, 8), Fraction(-5, 4), Fraction(1)])  # raízes 1/2 e 3/4
    assert check_endpoint_bound(report, Fraction(0), "left")
    assert check_endpoint_bound(report, Fraction(1), "right")


def test_even_root_count():
    for family in Family:
        for n in range(1, 7):
            assert even_root_count(build(family, n)) == 2 * (n - 1)


def test_factorial_root_sequences():
    seqs = factorial_root_sequences(30)
    first_n, first_xi = seqs["xi"][0]
    assert first_n == 2
    assert abs(first_xi - mpmath.mpf(1) / 6) < 1e-30
    for key in ("xi", "lambda", "factorial_lemma"):
        start = decreasing_from(seqs[key])
        assert start is not None and start <= 15
    assert stirling_lower_bound_holds(60)


def test_report_serialization():
    report = root_report(Family.LAMBDA, 3)
    data = report_to_dict(report, 20)
    assert data["degree"] == 2
    assert len(data["intervals"]) == 2
    lo = Fraction(data["intervals"][0]["lo"])
    assert lo == report.intervals[0].lo
    assert data["intervals"][0]["preview"].startswith("0.")


def test_root_checks_pass():
    n_max = 10
    reports = {(f.value, n): root_report(f, n) for f in Family for n in range(2, n_max + 1)}
    checks = root_checks(reports, n_max)
    assert not [c for c in checks if c.status == STATUS_FAIL]
    trends = [c for c in checks if "trend" in c.name]
    assert trends and all(c.status == STATUS_INFO for c in trends)


def test_extremal_zero_checks_require_three():
    with pytest.raises(ValueError, match="n-out-of-range"):
        extremal_zero_checks(2)


def test_root_report_equality_ignores_coefficients():
    a = RootReport("Xi", 2, [IsolatingInterval(Fraction(0), Fraction(1))], True, True, True, True, (Fraction(1),))
    b = RootReport("Xi", 2, [IsolatingInterval(Fraction(0), Fraction(1))], True, True, True, True, ())
    assert a == b
