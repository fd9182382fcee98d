"""
Testes das referências de zeta/beta, das quadraturas e dos múltiplos de pi.
"""

from fractions import Fraction

import mpmath
import pytest

from src.polynomials import EvenPolynomial, Family, build
from src.quadrature import (
    PiMultiple,
    QuadratureConvergenceError,
    QuadResult,
    Route,
    beta_ref,
    hyperbolic_stage_constant,
    hyperbolic_stage_terms,
    integral_beta,
    integral_checks,
    integral_hyperbolic_route,
    integral_zeta,
    normalized_target,
    pi_ratio_suite,
    reference_checks,
    sqrt_weight_integral_exact,
    zeta_ref,
)
from src.reports import STATUS_FAIL

BITS = 50


def _rel(a, b):
    return abs(mpmath.mpf(a) - mpmath.mpf(b)) / abs(mpmath.mpf(b))


def test_zeta_ref_examples():
    with mpmath.workdps(40):
        assert abs(zeta_ref(3, 100) - mpmath.mpf("1.2020569031595942853997381615114499907650")) < mpmath.mpf(2) ** -99
        assert abs(zeta_ref(5, 100) - mpmath.zeta(5)) < mpmath.mpf(2) ** -99
    assert zeta_ref(3, 64) > zeta_ref(5, 64) > zeta_ref(7, 64) > 1


@pytest.mark.parametrize("s", [3, 5, 7, 9, 13])
def test_zeta_methods_agree(s):
    first = zeta_ref(s, 128)
    second = zeta_ref(s, 128, method="eta")
    assert abs(first - second) <= mpmath.mpf(2) ** -120


def test_beta_ref_examples():
    with mpmath.workdps(40):
        assert abs(beta_ref(2, 100) - mpmath.catalan) < mpmath.mpf(2) ** -99
        assert abs(beta_ref(4, 100) - mpmath.mpf("0.98894455174110533610842263")) < mpmath.mpf(10) ** -25


@pytest.mark.parametrize("s", [2, 4, 6, 12])
def test_beta_methods_agree(s):
    first = beta_ref(s, 128)
    second = beta_ref(s, 128, method="hurwitz")
    assert abs(first - second) <= mpmath.mpf(2) ** -120


def test_beta_bracketed_by_partial_sums():
    value = beta_ref(2, 64)
    partial = [sum(Fraction((-1) ** m, (2 * m + 1) ** 2) for m in range(k + 1)) for k in range(20, 22)]
    low, high = min(partial), max(partial)
    assert mpmath.mpf(low.numerator) / low.denominator <= value <= mpmath.mpf(high.numerator) / high.denominator


@pytest.mark.parametrize("fn,arg", [(zeta_ref, 4), (zeta_ref, 1), (beta_ref, 3), (beta_ref, 0)])
def test_reference_domains(fn, arg):
    with pytest.raises(ValueError):
        fn(arg, 64)


def test_unknown_method():
    with pytest.raises(ValueError):
        zeta_ref(3, 64, method="direct")


def test_integral_beta_first_case():
    result = integral_beta(1, BITS)
    assert isinstance(result, QuadResult)
    assert result.route is Route.TANH_SUBSTITUTION
    assert abs(result.value - mpmath.mpf("0.2915609040308187")) < 1e-12
    assert _rel(result.value, normalized_target(Family.XI, 1, BITS)) <= 1e-10
    assert result.est_error >= 0
    assert result.nodes_used > 0


def test_integral_zeta_first_case():
    result = integral_zeta(1, BITS)
    assert abs(result.value - mpmath.mpf("0.121790570839")) < 1e-11
    # sem o fator Lambda_1 = 1/7
    assert abs(7 * result.value - mpmath.mpf("0.85253399587")) < 1e-10


@pytest.mark.parametrize("n", range(1, 7))
def test_integrals_match_references(n):
    with mpmath.workdps(30):
        beta_target = mpmath.catalan if n == 1 else mpmath.dirichlet(2 * n, [0, 1, 0, -1])
        zeta_target = mpmath.zeta(2 * n + 1)
        assert _rel(integral_beta(n, BITS).value, beta_target / mpmath.pi ** (2 * n - 1)) <= 1e-10
        assert _rel(integral_zeta(n, BITS).value, zeta_target / mpmath.pi ** (2 * n)) <= 1e-10


@pytest.mark.parametrize("family", list(Family))
@pytest.mark.parametrize("n", range(1, 6))
def test_dual_route_agreement(family, n):
    direct = integral_beta(n, BITS) if family is Family.XI else integral_zeta(n, BITS)
    hyperbolic = integral_hyperbolic_route(family, n, BITS)
    assert hyperbolic.route is Route.HYPERBOLIC_FORM
    assert _rel(hyperbolic.value, direct.value) <= 1e-10


def test_hyperbolic_stage_small_n():
    assert hyperbolic_stage_terms(Family.XI, 1) == [(1, Fraction(1, 2))]
    assert hyperbolic_stage_terms(Family.LAMBDA, 1) == [(1, Fraction(-1, 8))]
    assert hyperbolic_stage_terms(Family.XI, 2) == [(3, Fraction(1, 8)), (1, Fraction(-23, 8))]
    assert hyperbolic_stage_constant(Family.XI, 1) == Fraction(1, 2)
    assert hyperbolic_stage_constant(Family.LAMBDA, 1) == Fraction(-8, 7)
    assert hyperbolic_stage_constant(Family.LAMBDA, 2) == Fraction(8, 93)


@pytest.mark.parametrize("family", list(Family))
@pytest.mark.parametrize("n", range(1, 9))
def test_hyperbolic_stage_at_zero_matches_construction(family, n):
    # o integrando da forma hiperbólica em u -> 0 vale P(0)
    terms = hyperbolic_stage_terms(family, n)
    at_zero = hyperbolic_stage_constant(family, n) * sum(w * c for c, w in terms)
    assert at_zero == build(family, n).coeffs[0]


def test_hyperbolic_route_does_not_use_trapezoid(monkeypatch):
    from src import quadrature

    def fail(*args, **kwargs):
        raise AssertionError("trapézio chamado pela rota hiperbólica")

    monkeypatch.setattr(quadrature, "_trapezoid", fail)
    with mpmath.workdps(30):
        beta = integral_hyperbolic_route(Family.XI, 2, BITS)
        assert _rel(beta.value, mpmath.dirichlet(4, [0, 1, 0, -1]) / mpmath.pi**3) <= 1e-10
        zeta = integral_hyperbolic_route(Family.LAMBDA, 2, BITS)
        assert _rel(zeta.value, mpmath.zeta(5) / mpmath.pi**4) <= 1e-10
    assert zeta.est_error < abs(zeta.value) * 1e-10


def test_step_halving_contracts():
    result = integral_zeta(3, BITS)
    diffs = result.differences
    assert len(diffs) >= 2
    assert diffs[-1] <= diffs[-2] / 4


def test_higher_precision_is_consistent():
    low = integral_beta(2, BITS)
    high = integral_beta(2, BITS + 64)
    assert abs(low.value - high.value) <= max(low.est_error, abs(low.value) * mpmath.mpf(2) ** -BITS) * 4


def test_convergence_error_carries_best_estimate(monkeypatch):
    from src import quadrature

    monkeypatch.setitem(quadrature.QUADRATURE_CONFIG, "max_halvings", 1)
    with pytest.raises(QuadratureConvergenceError) as info:
        integral_beta(1, 200)
    best = info.value.best
    assert abs(best.value - mpmath.mpf("0.29156090403")) < 1e-6


def test_hyperbolic_convergence_error(monkeypatch):
    from src import quadrature

    monkeypatch.setitem(quadrature.QUADRATURE_CONFIG, "hyperbolic_max_degree", 2)
    with pytest.raises(QuadratureConvergenceError) as info:
        integral_hyperbolic_route(Family.LAMBDA, 3, 200)
    assert info.value.best.route is Route.HYPERBOLIC_FORM


def test_sqrt_weight_examples():
    constant = EvenPolynomial(Family.XI, 1, (Fraction(1),))
    square = EvenPolynomial(Family.XI, 2, (Fraction(0), Fraction(1)))
    assert sqrt_weight_integral_exact(constant) == PiMultiple(Fraction(1, 2))
    assert sqrt_weight_integral_exact(square).ratio == Fraction(1, 4)
    assert sqrt_weight_integral_exact(build(Family.LAMBDA, 1)).ratio == Fraction(1, 14)
    assert sqrt_weight_integral_exact(build(Family.XI, 1)).ratio == Fraction(1, 8)
    assert sqrt_weight_integral_exact(build(Family.XI, 2)).ratio == Fraction(1, 96)


def test_sqrt_weight_matches_quadrature():
    p = build(Family.LAMBDA, 3)
    ratio = sqrt_weight_integral_exact(p).ratio
    with mpmath.workdps(30):
        numeric = mpmath.quad(
            lambda t: sum(mpmath.mpf(c.numerator) / c.denominator * mpmath.sin(t) ** (2 * k) for k, c in enumerate(p.coeffs)),
            [0, mpmath.pi / 2],
        )
        assert _rel(numeric, mpmath.mpf(ratio.numerator) / ratio.denominator * mpmath.pi) < 1e-20


def test_pi_ratio_suite():
    checks = pi_ratio_suite(12)
    assert len(checks) == 2 * 13
    assert not [c for c in checks if c.status == STATUS_FAIL]
    assert checks[0].exact_value == "1/8"


def test_pi_multiple_serialization():
    data = PiMultiple(Fraction(1, 14)).to_dict(10)
    assert data["ratio"] == "1/14"
    assert data["value"].startswith("0.224399475")


def test_integral_and_reference_checks():
    checks = reference_checks(2, 15) + integral_checks(2, 15)
    assert not [c for c in checks if c.status == STATUS_FAIL]
    assert {"integral_beta", "integral_zeta", "dual_route_agreement", "zeta_ref_methods"} <= {c.name for c in checks}


def test_quad_result_serialization():
    data = integral_beta(1, BITS).to_dict(12)
    assert data["route"] == "tanh_substitution"
    assert data["value"].startswith("0.2915609040")
    assert data["nodes_used"] > 0
