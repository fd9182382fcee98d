"""
Módulo de construção dos polinômios pares Xi_n e Lambda_n.
Duas construções independentes (expansão por somas de E_{n,k} e composição com
os polinômios eulerianos no argumento -(1-x)/(1+x)), avaliação exata, formas
adaptadas (y = x^2) e as propriedades estruturais exatas que dispensam
isolamento de raízes.
"""

import logging
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Sequence, Tuple

from src.config import GEN_MAX_N, PROPERTY_CONFIG
from sympy.polys.densearith import dup_add, dup_div, dup_mul, dup_mul_ground, dup_pow
from sympy.polys.domains import QQ

from src.exact_arith import Number, Poly, UsageError, binom, eval_dense, factorial, from_dup
from src.reports import Check, make_check
from src.special_numbers import (
    EULERIAN_A,
    EULERIAN_B,
    bernoulli,
    euler_number,
    eulerian_a,
    eulerian_b,
    eulerian_sum_sides,
)

logger = logging.getLogger(__name__)

SUITE = "structural"


class Family(str, Enum):
    XI = "Xi"
    LAMBDA = "Lambda"

    @classmethod
    def parse(cls, value: str) -> "Family":
        for member in cls:
            if member.value.lower() == str(value).lower():
                return member
        raise UsageError(f"Família desconhecida: {value!r} (use xi ou lambda)")

    @property
    def eulerian_type(self) -> str:
        return "B" if self is Family.XI else "A"


class ConstructionError(RuntimeError):
    """Falha interna de construção (ex.: divisão por x com resto)."""


@dataclass(frozen=True)
class EvenPolynomial:
    """Polinômio par sum_t coeffs[t] x^(2t), t = 0..n-1, da família Xi ou Lambda."""

    family: Family
    n: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.n:
            raise ValueError(f"Esperados {self.n} coeficientes, recebidos {len(self.coeffs)}")
        if self.coeffs[-1] == 0:
            raise ValueError(f"Coeficiente de x^{2 * self.n - 2} nulo em {self.family.value}_{self.n}")

    @property
    def degree(self) -> int:
        return 2 * self.n - 2

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1]

    def __call__(self, x: Number) -> Fraction:
        return evaluate(self, x)


@dataclass(frozen=True)
class CoeffVector:
    """Vetor inteiro C^(A)_{n,t} ou C^(B)_{n,t}, t = 0..n-1."""

    family: str
    n: int
    values: Tuple[int, ...]


@dataclass(frozen=True)
class AdaptedPolynomial:
    """Substituição P(sqrt(y)) de um EvenPolynomial: polinômio denso em y de grau n-1."""

    family: Family
    n: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.n:
            raise ValueError(f"Grau em y deve ser {self.n - 1}; recebidos {len(self.coeffs)} coeficientes")
        if self.coeffs[-1] == 0:
            raise ValueError(f"Coeficiente de y^{self.n - 1} nulo na forma adaptada de {self.family.value}_{self.n}")
        if self.coeffs[0] == 0:
            raise ValueError(f"Forma adaptada de {self.family.value}_{self.n} se anula em y = 0")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1]

    def __call__(self, y: Number) -> Fraction:
        return eval_dense(self.coeffs, y)


def _check_n(n: int) -> None:
    if n < 1 or n > GEN_MAX_N:
        raise UsageError(f"n-out-of-range: n deve estar em [1, {GEN_MAX_N}] (recebido {n})")


def enk_product_eval(n: int, k: int, x: Number) -> Fraction:
    """
    Avalia E_{n,k}(x) = (1-x^2)^k ((1+x)^(2n-2k-1) - (1-x)^(2n-2k-1)) pela forma produto.

    Raises:
        ValueError: Se k estiver fora de [0, n-1].
    """
    if not 0 <= k <= n - 1:
        raise ValueError(f"k fora do intervalo [0, {n - 1}]: {k}")
    x = Fraction(x)
    m = 2 * n - 2 * k - 1
    return (1 - x * x) ** k * ((1 + x) ** m - (1 - x) ** m)


def enk_expansion_coeffs(n: int, k: int) -> List[int]:
    """
    Coeficientes internos c_t = sum_i (-1)^i C(k,i) C(2n-2k-1, 2t-2i+1), t = 0..n-1,
    tais que E_{n,k}(x) = 2x sum_t c_t x^(2t).
    """
    if not 0 <= k <= n - 1:
        raise ValueError(f"k fora do intervalo [0, {n - 1}]: {k}")
    m = 2 * n - 2 * k - 1
    return [
        sum((-1) ** i * binom(k, i) * binom(m, 2 * t - 2 * i + 1) for i in range(k + 1))
        for t in range(n)
    ]


def coeff_vector(family: str, n: int) -> CoeffVector:
    """
    Vetor C_{n,t} = sum_k peso(k) (-1)^k c_{k,t}, com peso <2n-1,k>^B (tipo B)
    ou <2n,k> (tipo A).

    Args:
        family: "A" ou "B".
        n: Índice n >= 1.

    Returns:
        CoeffVector exato.
    """
    if family not in ("A", "B"):
        raise ValueError(f"Família de coeficientes desconhecida: {family!r}")
    if n < 1:
        raise UsageError(f"n-out-of-range: n deve ser >= 1 (recebido {n})")
    values = [0] * n
    for k in range(n):
        weight = eulerian_b(2 * n - 1, k) if family == "B" else eulerian_a(2 * n, k)
        signed = (-1) ** k * weight
        for t, c in enumerate(enk_expansion_coeffs(n, k)):
            values[t] += signed * c
    return CoeffVector(family=family, n=n, values=tuple(values))


def explicit_prefactor(family: Family, n: int) -> Fraction:
    """Prefator da forma explícita (multiplica o vetor C)."""
    sign = (-1) ** (n + 1)
    if family is Family.XI:
        return Fraction(sign, 2 ** (4 * n - 2) * factorial(2 * n - 1))
    return Fraction(2 * sign, (2 ** (2 * n + 1) - 1) * factorial(2 * n))


def build(family: Family, n: int) -> EvenPolynomial:
    """
    Constrói Xi_n ou Lambda_n pela forma explícita (prefator x vetor C).

    Args:
        family: Family.XI ou Family.LAMBDA.
        n: Índice n em [1, GEN_MAX_N].

    Returns:
        EvenPolynomial com coeficientes racionais exatos.
    """
    _check_n(n)
    family = Family(family)
    vector = coeff_vector(family.eulerian_type, n)
    prefactor = explicit_prefactor(family, n)
    return EvenPolynomial(family=family, n=n, coeffs=tuple(prefactor * c for c in vector.values))


def moebius_row(family: Family, n: int) -> Tuple[int, ...]:
    """Linha euleriana usada na composição: B_{2n-1} (Xi) ou A_{2n} (Lambda)."""
    if Family(family) is Family.XI:
        return tuple(EULERIAN_B.row(2 * n - 1))
    return tuple(EULERIAN_A.row(2 * n))


def moebius_prefactor(family: Family, n: int) -> Fraction:
    """Prefator que multiplica N(x)/x na composição."""
    sign = (-1) ** (n + 1)
    if Family(family) is Family.XI:
        return Fraction(sign, 2 ** (4 * n - 1) * factorial(2 * n - 1))
    return Fraction(sign, (2 ** (2 * n + 1) - 1) * factorial(2 * n))


def _moebius_numerator(row: Sequence[int]) -> list:
    """
    N(x) = (1+x)^d R(-(1-x)/(1+x)) = sum_k row[k] (-1)^k (1-x)^k (1+x)^(d-k), d = len(row) - 1,
    como lista dup em QQ.
    """
    d = len(row) - 1
    one_minus = [-QQ.one, QQ.one]
    one_plus = [QQ.one, QQ.one]
    numerator: list = []
    for k, weight in enumerate(row):
        term = dup_mul(dup_pow(one_minus, k, QQ), dup_pow(one_plus, d - k, QQ), QQ)
        numerator = dup_add(numerator, dup_mul_ground(term, QQ((-1) ** k * weight), QQ), QQ)
    return numerator


def build_via_moebius(family: Family, n: int) -> EvenPolynomial:
    """
    Constrói Xi_n ou Lambda_n a partir dos polinômios eulerianos B_{2n-1} / A_{2n}
    avaliados em -(1-x)/(1+x): o numerador N(x) tem termo constante nulo e a
    divisão por x é exata.

    Raises:
        ConstructionError: Se a divisão por x deixar resto ou sobrarem termos ímpares.
    """
    _check_n(n)
    family = Family(family)
    row = moebius_row(family, n)
    prefactor = moebius_prefactor(family, n)

    quotient_dup, remainder = dup_div(_moebius_numerator(row), [QQ.one, QQ.zero], QQ)
    if remainder:
        raise ConstructionError(f"Divisão por x com resto em {family.value}_{n}: {from_dup(remainder)}")
    quotient = from_dup(quotient_dup)
    if not quotient or len(quotient) > 2 * n - 1:
        raise ConstructionError(f"Grau excedente em {family.value}_{n}: {len(quotient) - 1}")
    quotient += [Fraction(0)] * (2 * n - 1 - len(quotient))
    if any(c != 0 for c in quotient[1::2]):
        raise ConstructionError(f"Termos ímpares em {family.value}_{n}")
    coeffs = tuple(prefactor * c for c in quotient[0::2])
    return EvenPolynomial(family=family, n=n, coeffs=coeffs)


def evaluate(p: EvenPolynomial, x: Number) -> Fraction:
    """Avaliação exata por Horner em x^2."""
    return eval_dense(p.coeffs, Fraction(x) * x)


def to_dense_x(p: EvenPolynomial) -> Poly:
    """Polinômio par como polinômio denso em x (coeficientes ímpares nulos)."""
    dense = [Fraction(0)] * (2 * p.n - 1)
    for t, c in enumerate(p.coeffs):
        dense[2 * t] = c
    return dense


def adapted(p: EvenPolynomial) -> AdaptedPolynomial:
    """Polinômio adaptado P(sqrt(y))."""
    return AdaptedPolynomial(family=p.family, n=p.n, coeffs=p.coeffs)


def expected_leading(family: Family, n: int) -> Fraction:
    """Coeficiente de x^(2n-2): (-1)^(n+1)/2^(2n) (Xi) ou (-1)^(n+1)/(2^(2n+1)-1) (Lambda)."""
    family = Family(family)
    if family is Family.XI:
        return Fraction((-1) ** (n + 1), 2 ** (2 * n))
    return Fraction((-1) ** (n + 1), 2 ** (2 * n + 1) - 1)


def expected_top_coeff_vector(family: str, n: int) -> int:
    """C_{n,n-1}: (2n)!/2 (tipo A) ou 2^(2n-2)(2n-1)! (tipo B)."""
    if family == "A":
        return factorial(2 * n) // 2
    return 2 ** (2 * n - 2) * factorial(2 * n - 1)


def expected_value_at_zero(family: Family, n: int) -> Fraction:
    """Valor em x = 0 pelos números de Euler (Xi) ou de Bernoulli (Lambda)."""
    family = Family(family)
    sign = (-1) ** n
    if family is Family.XI:
        return Fraction(sign * euler_number(2 * n), 2 ** (2 * n) * factorial(2 * n - 1))
    numerator = sign * 2 ** (2 * n + 2) * (2 ** (2 * n + 2) - 1) * bernoulli(2 * n + 2)
    return numerator / ((2 ** (2 * n + 1) - 1) * (2 * n + 2) * factorial(2 * n))


def expected_value_at_one(family: Family, n: int) -> Fraction:
    """Valor em x = 1."""
    family = Family(family)
    sign = (-1) ** (n + 1)
    if family is Family.XI:
        return Fraction(sign, 2 ** (2 * n) * factorial(2 * n - 1))
    return Fraction(sign * 2 ** (2 * n - 1), (2 ** (2 * n + 1) - 1) * factorial(2 * n))


def signs_alternate(values: Sequence[Number], top_sign: int) -> bool:
    """Todos não nulos, sinais alternados, e o último com sinal `top_sign`."""
    last = len(values) - 1
    for t, v in enumerate(values):
        expected = top_sign * (-1) ** (last - t)
        if v == 0 or (v > 0) != (expected > 0):
            return False
    return True


def is_log_concave(values: Sequence[Number]) -> bool:
    """|v_t|^2 >= |v_(t-1)| |v_(t+1)| para 1 <= t <= len-2."""
    mags = [abs(v) for v in values]
    return all(mags[t] ** 2 >= mags[t - 1] * mags[t + 1] for t in range(1, len(mags) - 1))


def linear_coefficient_identity(n: int) -> Tuple[bool, bool]:
    """C_{n,0} coincide com as somas eulerianas alternadas (tipos B e A)."""
    sides = eulerian_sum_sides(n)
    c_b = coeff_vector("B", n).values[0]
    c_a = coeff_vector("A", n).values[0]
    return c_b == sides["B"][1], c_a == sides["A"][1]


def structural_checks(n: int) -> List[Check]:
    """
    Verificações estruturais exatas para as duas famílias em um n:
    construção cruzada, coeficiente líder, valores em 0 e 1, soma dos C,
    alternância de sinais, log-concavidade de |C|, positividade para x > 1
    e identidade do coeficiente linear.

    Args:
        n: Índice n >= 1.

    Returns:
        Lista de Checks.
    """
    checks: List[Check] = []
    top_sign = (-1) ** (n + 1)
    lin_b, lin_a = linear_coefficient_identity(n)
    for family in Family:
        name = family.value
        ctype = family.eulerian_type
        p = build(family, n)
        q = build_via_moebius(family, n)
        vector = coeff_vector(ctype, n)

        checks.append(make_check(SUITE, "cross_construction", p.coeffs == q.coeffs, n=n, family=name))
        checks.append(
            make_check(SUITE, "leading_coefficient", p.leading == expected_leading(family, n), n=n, family=name, exact=p.leading)
        )
        checks.append(
            make_check(
                SUITE,
                "coeff_vector_top",
                vector.values[-1] == expected_top_coeff_vector(ctype, n),
                n=n,
                family=ctype,
                exact=vector.values[-1],
            )
        )
        at_zero = evaluate(p, 0)
        checks.append(
            make_check(SUITE, "value_at_zero", at_zero == expected_value_at_zero(family, n), n=n, family=name, exact=at_zero)
        )
        at_one = evaluate(p, 1)
        checks.append(
            make_check(SUITE, "value_at_one", at_one == expected_value_at_one(family, n), n=n, family=name, exact=at_one)
        )
        total = sum(vector.values)
        checks.append(make_check(SUITE, "coeff_sum", total == 2 ** (2 * n - 2), n=n, family=ctype, exact=total))
        checks.append(make_check(SUITE, "sign_alternation", signs_alternate(p.coeffs, top_sign), n=n, family=name))
        checks.append(make_check(SUITE, "log_concavity", is_log_concave(vector.values), n=n, family=ctype))
        positive = all(top_sign * evaluate(p, x) > 0 for x in PROPERTY_CONFIG["sample_points_above_one"])
        checks.append(make_check(SUITE, "positive_beyond_one", positive, n=n, family=name))
        checks.append(
            make_check(SUITE, "linear_coefficient", lin_b if ctype == "B" else lin_a, n=n, family=ctype, exact=vector.values[0])
        )
    logger.info("Verificações estruturais n=%d: %d", n, len(checks))
    return checks


def grid_sup_check(p: EvenPolynomial, points: int) -> Tuple[bool, Fraction]:
    """
    max |p(i/(points+1))| <= |lc| na grade i = 1..points de (0,1).

    Returns:
        Tupla (passou, máximo observado).
    """
    worst = Fraction(0)
    for i in range(1, points + 1):
        value = abs(evaluate(p, Fraction(i, points + 1)))
        if value > worst:
            worst = value
    return worst <= abs(p.leading), worst


def evenness_check(p: EvenPolynomial, samples: int, seed: int) -> bool:
    """p(x) == p(-x) nos pontos racionais sorteados, pela forma densa em x."""
    rng = random.Random(seed)
    dense = to_dense_x(p)
    for _ in range(samples):
        x = Fraction(rng.randint(-1000, 1000), rng.randint(1, 1000))
        if eval_dense(dense, x) != eval_dense(dense, -x):
            return False
    return True


def property_checks(n: int) -> List[Check]:
    """Cota uniforme na grade e paridade, para as duas famílias."""
    checks: List[Check] = []
    for family in Family:
        p = build(family, n)
        ok, worst = grid_sup_check(p, PROPERTY_CONFIG["grid_points"])
        checks.append(make_check("properties", "grid_sup_bound", ok, n=n, family=family.value, exact=worst))
        even = evenness_check(p, PROPERTY_CONFIG["evenness_samples"], PROPERTY_CONFIG["random_seed"] + n)
        checks.append(make_check("properties", "evenness", even, n=n, family=family.value))
    return checks
