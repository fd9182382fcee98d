"""
Módulo de aritmética exata.
Racionais de precisão arbitrária, primitivas combinatórias (binomiais, fatoriais,
fatoriais duplos), a ponte para os polinômios densos do sympy sobre QQ e
utilitários para números de ponto flutuante de precisão arbitrária (BigFloat via mpmath).
"""

import math
from fractions import Fraction
from typing import List, Sequence, Union

import mpmath
from sympy.polys.densebasic import dup_strip
from sympy.polys.densetools import dup_eval
from sympy.polys.domains import QQ

# Racional canônico: Fraction normaliza sinal e mdc após cada operação.
Rational = Fraction
Number = Union[int, Fraction]

# Polinômio denso: lista de coeficientes, do termo constante para o de maior grau.
Poly = List[Fraction]


class UsageError(ValueError):
    """Pré-condição de entrada violada (ex.: n fora da faixa); a CLI responde com código 2."""


def binom(a: int, b: int) -> int:
    """
    Coeficiente binomial C(a, b) com a convenção de anulação.

    Args:
        a: Índice superior (não negativo).
        b: Índice inferior (qualquer inteiro).

    Returns:
        C(a, b) para 0 <= b <= a; 0 se b < 0 ou b > a.

    Raises:
        ValueError: Se o índice superior for negativo.
    """
    if a < 0:
        raise ValueError(f"unsupported-binomial-domain: índice superior negativo ({a}, {b})")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def double_factorial(m: int) -> int:
    """
    Fatorial duplo m!! com as convenções (-1)!! = 0!! = 1.

    Args:
        m: Inteiro >= -1.

    Returns:
        Produto dos inteiros positivos de mesma paridade que m, até 1 ou 2.

    Raises:
        ValueError: Se m < -1.
    """
    if m < -1:
        raise ValueError(f"Fatorial duplo indefinido para m = {m} (exige m >= -1)")
    result = 1
    for k in range(m, 0, -2):
        result *= k
    return result


def factorial(m: int) -> int:
    """Fatorial m! para m >= 0."""
    if m < 0:
        raise ValueError(f"Fatorial indefinido para m = {m}")
    return math.factorial(m)


def rational_str(q: Number) -> str:
    """Representação canônica "p/q" de um racional (inteiros saem como "p/1")."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Polinômios densos sobre Q (sympy.polys, representação dup)
# ---------------------------------------------------------------------------
# No lado público os coeficientes ficam em listas de Fraction, do termo
# constante para o de maior grau; as contas rodam nas listas "dup" do sympy
# (maior grau primeiro, elementos de QQ).

def qq(x: Number):
    """Elemento de QQ a partir de um racional exato."""
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def to_fraction(c) -> Fraction:
    """Elemento de QQ (ou inteiro) de volta para Fraction."""
    return Fraction(int(c.numerator), int(c.denominator))


def to_dup(coeffs: Sequence[Number]) -> list:
    """Coeficientes do termo constante para o de maior grau -> lista dup em QQ."""
    return dup_strip([qq(c) for c in reversed(coeffs)])


def from_dup(f: Sequence) -> Poly:
    """Lista dup em QQ -> coeficientes Fraction do termo constante para o de maior grau."""
    return [to_fraction(c) for c in reversed(f)]


def eval_dense(coeffs: Sequence[Number], x: Number) -> Fraction:
    """Avaliação exata (Horner do sympy) de coeficientes do termo constante para cima."""
    return to_fraction(dup_eval(to_dup(coeffs), qq(x), QQ))


# ---------------------------------------------------------------------------
# BigFloat: contextos mpmath independentes (sem estado global)
# ---------------------------------------------------------------------------

def working_context(bits: int) -> mpmath.MPContext:
    """Cria um contexto mpmath próprio com a precisão de trabalho em bits."""
    if bits < 2:
        raise ValueError(f"Precisão inválida: {bits} bits")
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


def to_mpf(ctx: mpmath.MPContext, q: Number):
    """Converte um racional exato para BigFloat no contexto dado (um arredondamento)."""
    q = Fraction(q)
    return ctx.fdiv(q.numerator, q.denominator)


def mpf_to_fraction(x) -> Fraction:
    """Valor exato (diádico) de um BigFloat."""
    man, exp = x.man_exp
    if man == 0:
        return Fraction(0)
    if exp >= 0:
        return Fraction(man * 2**exp)
    return Fraction(man, 2**(-exp))


def digits_to_bits(digits: int) -> int:
    """Número de bits necessários para `digits` dígitos decimais."""
    return int(math.ceil(digits * math.log2(10)))


def render_decimal(ctx: mpmath.MPContext, x, digits: int) -> str:
    """Renderização decimal de um BigFloat com `digits` dígitos significativos."""
    return ctx.nstr(x, digits, min_fixed=-5, max_fixed=5)
