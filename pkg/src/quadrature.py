"""
Módulo de quadratura em precisão arbitrária.
Valida as representações integrais de beta(2n)/pi^(2n-1) e zeta(2n+1)/pi^(2n)
contra referências independentes de zeta e beta, e calcula exatamente as
integrais com peso 1/sqrt(1-x^2) como múltiplos racionais de pi.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from src.config import QUADRATURE_CONFIG, REPORT_CONFIG
from src.exact_arith import (
    UsageError,
    digits_to_bits,
    double_factorial,
    factorial,
    rational_str,
    render_decimal,
    to_mpf,
    working_context,
)
from src.polynomials import EvenPolynomial, Family, build
from src.reports import Check, make_check
from src.special_numbers import bernoulli, eulerian_a, eulerian_b

logger = logging.getLogger(__name__)

SUITE = "integral"
PI_RATIO_SUITE = "pi_ratio"


class Route(str, Enum):
    TANH_SUBSTITUTION = "tanh_substitution"
    HYPERBOLIC_FORM = "hyperbolic_form"


@dataclass(frozen=True)
class QuadResult:
    """Valor da quadratura, estimativa de erro por dobra do passo e nós usados."""

    value: object
    est_error: object
    nodes_used: int
    route: Route
    differences: Tuple[object, ...] = field(default=(), compare=False, repr=False)

    def to_dict(self, digits: int) -> Dict[str, object]:
        ctx = working_context(digits_to_bits(digits) + 8)
        return {
            "value": render_decimal(ctx, ctx.mpf(self.value), digits),
            "est_error": render_decimal(ctx, ctx.mpf(self.est_error), 5),
            "nodes_used": self.nodes_used,
            "route": self.route.value,
        }


@dataclass(frozen=True)
class PiMultiple:
    """Integral igual a ratio * pi, com ratio racional exato."""

    ratio: Fraction

    def to_dict(self, digits: int) -> Dict[str, object]:
        ctx = working_context(digits_to_bits(digits) + 8)
        return {
            "ratio": rational_str(self.ratio),
            "value": render_decimal(ctx, to_mpf(ctx, self.ratio) * ctx.pi, digits),
        }


class QuadratureConvergenceError(RuntimeError):
    """Quadratura sem convergência dentro do orçamento de nós; carrega a melhor estimativa."""

    def __init__(self, message: str, best: QuadResult):
        super().__init__(message)
        self.best = best


# ---------------------------------------------------------------------------
# Referências para zeta e beta
# ---------------------------------------------------------------------------

def _cvz_alternating(ctx, term: Callable[[int], object], bits: int):
    """
    Soma acelerada de sum_k (-1)^k term(k) (Cohen-Villegas-Zagier);
    erro relativo <= 2/(3+sqrt 8)^m.
    """
    m = int(math.ceil(bits * math.log(2) / math.log(3 + math.sqrt(8)))) + 2
    d = (3 + ctx.sqrt(8)) ** m
    d = (d + 1 / d) / 2
    b = ctx.mpf(-1)
    c = -d
    total = ctx.mpf(0)
    for k in range(m):
        c = b - c
        total += c * term(k)
        b = b * (k + m) * (k - m) / ((k + ctx.mpf(1) / 2) * (k + 1))
    return total / d


def _zeta_euler_maclaurin(ctx, s: int, bits: int):
    n_terms = max(10, bits // 3)
    N = ctx.mpf(n_terms)
    total = ctx.fsum(ctx.mpf(k) ** (-s) for k in range(1, n_terms))
    total += N ** (1 - s) / (s - 1) + N ** (-s) / 2
    tolerance = ctx.mpf(2) ** (-(bits + 8))
    rising = s  # s (s+1) ... (s+2j-2)
    for j in range(1, 4 * n_terms):
        term = to_mpf(ctx, bernoulli(2 * j) / math.factorial(2 * j)) * rising * N ** (-s - 2 * j + 1)
        total += term
        if abs(term) < tolerance:
            break
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    return total


def zeta_ref(s: int, precision: int, method: str = "euler_maclaurin"):
    """
    zeta(s) para s ímpar >= 3 com erro absoluto <= 2^-precision.

    Args:
        s: Argumento ímpar >= 3.
        precision: Precisão em bits.
        method: "euler_maclaurin" (soma direta com correção de cauda pelos números de
            Bernoulli) ou "eta" (série alternada acelerada, zeta = eta / (1 - 2^(1-s))).

    Returns:
        BigFloat com `precision` bits.
    """
    if s < 3 or s % 2 == 0:
        raise ValueError(f"zeta_ref exige s ímpar >= 3 (recebido {s})")
    bits = precision + QUADRATURE_CONFIG["guard_bits"]
    ctx = working_context(bits)
    if method == "euler_maclaurin":
        value = _zeta_euler_maclaurin(ctx, s, bits)
    elif method == "eta":
        eta = _cvz_alternating(ctx, lambda k: ctx.mpf(k + 1) ** (-s), bits)
        value = eta / (1 - ctx.mpf(2) ** (1 - s))
    else:
        raise ValueError(f"Método desconhecido para zeta_ref: {method!r}")
    return working_context(precision).mpf(value)


def beta_ref(s: int, precision: int, method: str = "cvz"):
    """
    beta(s) = sum_m (-1)^m/(2m+1)^s para s par >= 2.

    Args:
        s: Argumento par >= 2.
        precision: Precisão em bits.
        method: "cvz" (série alternada acelerada) ou "hurwitz"
            (4^-s (zeta(s,1/4) - zeta(s,3/4))).
    """
    if s < 2 or s % 2 == 1:
        raise ValueError(f"beta_ref exige s par >= 2 (recebido {s})")
    bits = precision + QUADRATURE_CONFIG["guard_bits"]
    ctx = working_context(bits)
    if method == "cvz":
        value = _cvz_alternating(ctx, lambda k: ctx.mpf(2 * k + 1) ** (-s), bits)
    elif method == "hurwitz":
        quarter = ctx.mpf(1) / 4
        value = (ctx.zeta(s, quarter) - ctx.zeta(s, 3 * quarter)) / ctx.mpf(4) ** s
    else:
        raise ValueError(f"Método desconhecido para beta_ref: {method!r}")
    return working_context(precision).mpf(value)


def normalized_target(family: Family, n: int, precision: int):
    """beta(2n)/pi^(2n-1) (Xi) ou zeta(2n+1)/pi^(2n) (Lambda)."""
    ctx = working_context(precision + QUADRATURE_CONFIG["guard_bits"])
    if Family(family) is Family.XI:
        value = ctx.mpf(beta_ref(2 * n, precision + 16)) / ctx.pi ** (2 * n - 1)
    else:
        value = ctx.mpf(zeta_ref(2 * n + 1, precision + 16)) / ctx.pi ** (2 * n)
    return working_context(precision).mpf(value)


# ---------------------------------------------------------------------------
# Quadratura na variável u = arctanh x
# ---------------------------------------------------------------------------

def _extra_bits(p: EvenPolynomial) -> int:
    """Bits perdidos por cancelamento: log2(sum |a_t| / |lc|)."""
    ratio = sum(abs(c) for c in p.coeffs) / abs(p.leading)
    return max(0, ratio.numerator.bit_length() - ratio.denominator.bit_length() + 1)


def _truncation(p: EvenPolynomial, bits: int, decay: int) -> Fraction:
    """
    Ponto de corte U (múltiplo do passo inicial) com cauda
    <= 2 C e^(-decay U)/U <= 2^-(bits+16) |lc|, C = sum |a_t|.
    """
    h0 = QUADRATURE_CONFIG["initial_step"]
    weight = float(sum(abs(c) for c in p.coeffs) / abs(p.leading))
    u_max = (math.log(2 * weight) + (bits + 16) * math.log(2)) / decay
    return h0 * max(1, math.ceil(u_max / float(h0)))


def _tail_bound(ctx, p: EvenPolynomial, cutoff, decay: int):
    weight = to_mpf(ctx, sum(abs(c) for c in p.coeffs))
    return 2 * weight * ctx.exp(-decay * cutoff) / cutoff


def _trapezoid(ctx, f, f0, cutoff: Fraction, precision: int, route: Route, tail) -> QuadResult:
    """
    Regra do trapézio em [0, U] com passo dividido por dois até
    |T_h - T_(h/2)| <= 2^-precision |T|. O integrando é analítico numa faixa,
    então a convergência é exponencial em 1/h.
    """
    h = QUADRATURE_CONFIG["initial_step"]
    steps = int(cutoff / h)
    u_end = to_mpf(ctx, cutoff)
    interior = ctx.fsum(f(to_mpf(ctx, k * h)) for k in range(1, steps))
    edges = (f0 + f(u_end)) / 2
    estimate = to_mpf(ctx, h) * (edges + interior)
    nodes = steps + 1
    differences: List[object] = []
    relative = ctx.mpf(2) ** (-precision)

    for _ in range(QUADRATURE_CONFIG["max_halvings"]):
        h /= 2
        steps *= 2
        interior += ctx.fsum(f(to_mpf(ctx, k * h)) for k in range(1, steps, 2))
        nodes += steps // 2
        refined = to_mpf(ctx, h) * (edges + interior)
        diff = abs(refined - estimate)
        differences.append(diff)
        estimate = refined
        if diff <= relative * abs(estimate):
            return QuadResult(estimate, diff + tail, nodes, route, tuple(differences))

    best = QuadResult(estimate, differences[-1] + tail, nodes, route, tuple(differences))
    raise QuadratureConvergenceError(
        f"Quadratura ({route.value}) não convergiu após {QUADRATURE_CONFIG['max_halvings']} divisões do passo",
        best,
    )


def _direct_integral(family: Family, n: int, precision: int) -> QuadResult:
    p = build(family, n)
    decay = 1 if family is Family.XI else 2
    work = precision + QUADRATURE_CONFIG["guard_bits"] + _extra_bits(p)
    ctx = working_context(work)
    coeffs = [to_mpf(ctx, c) for c in reversed(p.coeffs)]

    def integrand(u):
        t = ctx.tanh(u)
        return t * ctx.polyval(coeffs, t * t) * ctx.sech(u) ** decay / u

    cutoff = _truncation(p, precision, decay)
    tail = _tail_bound(ctx, p, to_mpf(ctx, cutoff), decay)
    logger.debug("Quadratura %s_%d: U=%s, %d bits de trabalho", family.value, n, cutoff, work)
    result = _trapezoid(ctx, integrand, coeffs[0], cutoff, precision, Route.TANH_SUBSTITUTION, tail)
    return _rounded(result, precision)


def _rounded(result: QuadResult, precision: int) -> QuadResult:
    ctx = working_context(precision)
    return QuadResult(
        ctx.mpf(result.value), ctx.mpf(result.est_error), result.nodes_used, result.route, result.differences
    )


def integral_beta(n: int, precision: int) -> QuadResult:
    """
    beta(2n)/pi^(2n-1) = int_0^oo tanh(u) Xi_n(tanh u) sech(u)/u du.

    Raises:
        QuadratureConvergenceError: Sem convergência no orçamento de nós.
    """
    return _direct_integral(Family.XI, n, precision)


def integral_zeta(n: int, precision: int) -> QuadResult:
    """zeta(2n+1)/pi^(2n) = int_0^oo tanh(u) Lambda_n(tanh u) sech(u)^2/u du."""
    return _direct_integral(Family.LAMBDA, n, precision)


def hyperbolic_stage_terms(family: Family, n: int) -> List[Tuple[int, Fraction]]:
    """
    Pares (2n-1-2k, peso) da meia soma euleriana, k = 0..n-1, já com o prefator do estágio:
    Xi: <2n-1, k>^B (-1)^k / 2^(2n-1); Lambda: -<2n, k> (-1)^k / 2^(2n+1).
    """
    family = Family(family)
    if n < 1:
        raise UsageError(f"n-out-of-range: estágio hiperbólico exige n >= 1 (recebido {n})")
    if family is Family.XI:
        stage = Fraction(1, 2 ** (2 * n - 1))
        row = [eulerian_b(2 * n - 1, k) for k in range(n)]
    else:
        stage = Fraction(-1, 2 ** (2 * n + 1))
        row = [eulerian_a(2 * n, k) for k in range(n)]
    return [(2 * n - 1 - 2 * k, stage * (-1) ** k * w) for k, w in enumerate(row)]


def hyperbolic_stage_constant(family: Family, n: int) -> Fraction:
    """
    Constante que leva o estágio hiperbólico ao alvo normalizado. Inverte
    int_0^1 Im Li_{-2n}(ix)/x lnln(1/x) dx = (-1)^(n+1) 2^(2n-1) (2n-1)! beta(2n)/pi^(2n-1) e
    int_0^1 Li_{-2n-1}(-x^2)/x lnln(1/x) dx = (-1)^n (1 - 2^-(2n+1)) (2n)! zeta(2n+1)/(2 pi^(2n)).
    """
    sign = (-1) ** (n + 1)
    if Family(family) is Family.XI:
        return Fraction(sign, 2 ** (2 * n - 1) * factorial(2 * n - 1))
    return Fraction(-sign * 2 ** (2 * n + 2), (2 ** (2 * n + 1) - 1) * factorial(2 * n))


def _log(q: Fraction) -> float:
    q = abs(q)
    return math.log(q.numerator) - math.log(q.denominator)


def integral_hyperbolic_route(family: Family, n: int, precision: int) -> QuadResult:
    """
    Alvo normalizado pela forma hiperbólica: constante x sum_k peso_k
    int_0^oo sinh((2n-1-2k)u) / (u cosh(u)^m) du, m = 2n (Xi) ou 2n+1 (Lambda).

    Integra com tanh-sinh do mpmath em [0, oo]; não compartilha nós nem corte
    com a regra do trapézio da rota direta.

    Raises:
        QuadratureConvergenceError: Erro estimado acima de 2^-precision relativo.
    """
    family = Family(family)
    terms = hyperbolic_stage_terms(family, n)
    constant = hyperbolic_stage_constant(family, n)
    power = 2 * n if family is Family.XI else 2 * n + 1
    at_zero = sum(w * c for c, w in terms)
    weight = sum(abs(w) for _, w in terms) * 2 ** (power - 1)

    spread = 2 * n * weight / abs(at_zero)
    extra = max(0, spread.numerator.bit_length() - spread.denominator.bit_length() + 1)
    work = precision + QUADRATURE_CONFIG["guard_bits"] + extra
    ctx = working_context(work)

    # |integrando| <= weight e^(-u)/u para u >= 1
    u_zero = max(1.0, _log(weight) - _log(at_zero) + (work + 16) * math.log(2))
    tail = to_mpf(ctx, abs(at_zero)) * ctx.mpf(2) ** (-(work + 16))
    mp_terms = [(c, to_mpf(ctx, w)) for c, w in terms]
    mp_at_zero = to_mpf(ctx, at_zero)
    evaluations = 0

    def integrand(u):
        nonlocal evaluations
        evaluations += 1
        if u > u_zero:
            return ctx.zero
        if not u:
            return mp_at_zero
        return ctx.fsum(w * ctx.sinh(c * u) for c, w in mp_terms) * ctx.sech(u) ** power / u

    stage, error = ctx.quad(
        integrand,
        [0, 1, ctx.inf],
        method="tanh-sinh",
        error=True,
        maxdegree=QUADRATURE_CONFIG["hyperbolic_max_degree"],
    )
    scale = to_mpf(ctx, constant)
    result = QuadResult(scale * stage, abs(scale) * (error + tail), evaluations, Route.HYPERBOLIC_FORM)
    logger.debug("Rota hiperbólica %s_%d: %d avaliações, erro do estágio %s", family.value, n, evaluations, ctx.nstr(error, 5))
    if error > ctx.mpf(2) ** (-precision) * abs(stage):
        raise QuadratureConvergenceError(
            f"Quadratura ({Route.HYPERBOLIC_FORM.value}) de {family.value}_{n} não convergiu até o grau "
            f"{QUADRATURE_CONFIG['hyperbolic_max_degree']}",
            _rounded(result, precision),
        )
    return _rounded(result, precision)


# ---------------------------------------------------------------------------
# Integrais com peso 1/sqrt(1-x^2): múltiplos racionais de pi
# ---------------------------------------------------------------------------

def sqrt_weight_integral_exact(p: EvenPolynomial) -> PiMultiple:
    """
    int_0^1 p(x)/sqrt(1-x^2) dx = ratio * pi, com
    ratio = sum_t a_t (1/2) (2t-1)!!/(2t)!!. Aritmética puramente racional.
    """
    ratio = Fraction(0)
    for t, a in enumerate(p.coeffs):
        ratio += a * Fraction(double_factorial(2 * t - 1), 2 * double_factorial(2 * t))
    return PiMultiple(ratio)


def pi_ratio_suite(n_max: int) -> List[Check]:
    """
    Positividade exata dos múltiplos de pi para n = 1..n_max e decrescimento da
    sequência na faixa calculada, para as duas famílias.
    """
    if n_max < 1:
        raise UsageError(f"n-out-of-range: pi_ratio_suite exige n_max >= 1 (recebido {n_max})")
    digits = REPORT_CONFIG["decimal_digits"]
    ctx = working_context(digits_to_bits(digits) + 8)
    checks: List[Check] = []
    for family in Family:
        ratios = []
        for n in range(1, n_max + 1):
            ratio = sqrt_weight_integral_exact(build(family, n)).ratio
            ratios.append(ratio)
            numeric = render_decimal(ctx, to_mpf(ctx, ratio) * ctx.pi, digits)
            checks.append(
                make_check(PI_RATIO_SUITE, "pi_multiple_positive", ratio > 0, n=n, family=family.value, exact=ratio, numeric=numeric)
            )
        decreasing = all(b < a for a, b in zip(ratios, ratios[1:]))
        checks.append(
            make_check(PI_RATIO_SUITE, "pi_multiple_decreasing", decreasing, family=family.value, detail=f"n=1..{n_max}")
        )
    return checks


def _relative_error(ctx, value, target):
    return abs(ctx.mpf(value) - ctx.mpf(target)) / abs(ctx.mpf(target))


def integral_checks(n: int, digits: int) -> List[Check]:
    """Verificações de quadratura para um n: as duas integrais e, se n for pequeno, a rota hiperbólica."""
    bits = digits_to_bits(digits)
    tolerance = QUADRATURE_CONFIG["acceptance_tolerance"]
    ctx = working_context(bits + QUADRATURE_CONFIG["guard_bits"])
    checks: List[Check] = []
    for family, integrate in ((Family.XI, integral_beta), (Family.LAMBDA, integral_zeta)):
        name = family.value
        try:
            result = integrate(n, bits)
        except QuadratureConvergenceError as e:
            logger.error("%s", e)
            result = e.best
        target = normalized_target(family, n, bits)
        rel = _relative_error(ctx, result.value, target)
        label = "integral_beta" if family is Family.XI else "integral_zeta"
        checks.append(
            make_check(
                SUITE,
                label,
                rel <= tolerance,
                n=n,
                family=name,
                numeric=render_decimal(ctx, ctx.mpf(result.value), digits),
                error=render_decimal(ctx, ctx.mpf(result.est_error), 5),
                detail=f"erro relativo {render_decimal(ctx, rel, 5)}; {result.nodes_used} nós",
            )
        )
        diffs = result.differences
        contracting = len(diffs) < 2 or diffs[-1] <= diffs[-2] / 4
        checks.append(make_check(SUITE, "step_halving_contraction", contracting, n=n, family=name))

        if n <= QUADRATURE_CONFIG["dual_route_max_n"]:
            hyperbolic = integral_hyperbolic_route(family, n, bits)
            dual = _relative_error(ctx, hyperbolic.value, result.value)
            checks.append(
                make_check(
                    SUITE,
                    "dual_route_agreement",
                    dual <= tolerance,
                    n=n,
                    family=name,
                    error=render_decimal(ctx, dual, 5),
                )
            )
    return checks


def reference_checks(n_max: int, digits: int) -> List[Check]:
    """Concordância entre os dois algoritmos de cada referência, até 2^-(bits-8)."""
    bits = digits_to_bits(digits)
    ctx = working_context(bits + 16)
    allowed = ctx.mpf(2) ** (-(bits - 8))
    checks: List[Check] = []
    for n in range(1, n_max + 1):
        pairs = (
            ("zeta_ref_methods", 2 * n + 1, zeta_ref(2 * n + 1, bits), zeta_ref(2 * n + 1, bits, "eta")),
            ("beta_ref_methods", 2 * n, beta_ref(2 * n, bits), beta_ref(2 * n, bits, "hurwitz")),
        )
        for name, s, first, second in pairs:
            gap = abs(ctx.mpf(first) - ctx.mpf(second))
            checks.append(
                make_check(
                    SUITE,
                    name,
                    gap <= allowed,
                    n=s,
                    numeric=render_decimal(ctx, ctx.mpf(first), digits),
                    error=render_decimal(ctx, gap, 5),
                )
            )
    return checks


def integral_suite(n_max: int, digits: int) -> List[Check]:
    """Suíte de integrais completa para n = 1..n_max (execução sequencial)."""
    if n_max < 1:
        raise UsageError(f"n-out-of-range: integral_suite exige n_max >= 1 (recebido {n_max})")
    checks = reference_checks(n_max, digits)
    for n in range(1, n_max + 1):
        checks.extend(integral_checks(n, digits))
    return checks
