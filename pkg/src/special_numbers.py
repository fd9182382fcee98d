"""
Módulo de números especiais exatos.
Números de Bernoulli, números de Euler (secante), números e polinômios eulerianos
dos tipos A e B, e as identidades que os relacionam (Worpitzky tipo B, somas
eulerianas, identidades de polilogaritmo de ordem negativa).
"""

import itertools
import logging
from fractions import Fraction
from typing import Dict, List, Tuple

from src.config import EULERIAN_CONFIG
from src.exact_arith import Number, UsageError, binom, factorial, to_mpf, working_context
from src.reports import Check, make_check

logger = logging.getLogger(__name__)

SUITE = "eulerian"


class EulerianTableA:
    """
    Tabela de números eulerianos do tipo A, construída pela recorrência
    <m,k> = (k+1)<m-1,k> + (m-k)<m-1,k-1>. A linha 0 é [1] por convenção.
    """

    def __init__(self) -> None:
        self._rows: List[Tuple[int, ...]] = [(1,)]

    def row(self, m: int) -> Tuple[int, ...]:
        if m < 0:
            raise ValueError(f"Linha euleriana inválida: m = {m}")
        while len(self._rows) <= m:
            size = len(self._rows)
            if size == 1:
                self._rows.append((1,))
                continue
            prev = self._rows[-1]
            new = []
            for k in range(size):
                same = prev[k] if k < len(prev) else 0
                lower = prev[k - 1] if 0 <= k - 1 < len(prev) else 0
                new.append((k + 1) * same + (size - k) * lower)
            self._rows.append(tuple(new))
        return self._rows[m]

    def prebuild(self, m_max: int) -> None:
        self.row(m_max)

    def __call__(self, m: int, k: int) -> int:
        row = self.row(m)
        if 0 <= k < len(row):
            return row[k]
        return 0


class EulerianTableB:
    """
    Tabela de números eulerianos do tipo B, construída pela recorrência
    <m,k>^B = (2k+1)<m-1,k>^B + (2m-2k+1)<m-1,k-1>^B, com <0,0>^B = 1.
    """

    def __init__(self) -> None:
        self._rows: List[Tuple[int, ...]] = [(1,)]

    def row(self, m: int) -> Tuple[int, ...]:
        if m < 0:
            raise ValueError(f"Linha euleriana inválida: m = {m}")
        while len(self._rows) <= m:
            size = len(self._rows)
            prev = self._rows[-1]
            new = []
            for k in range(size + 1):
                same = prev[k] if k < len(prev) else 0
                lower = prev[k - 1] if 0 <= k - 1 < len(prev) else 0
                new.append((2 * k + 1) * same + (2 * size - 2 * k + 1) * lower)
            self._rows.append(tuple(new))
        return self._rows[m]

    def prebuild(self, m_max: int) -> None:
        self.row(m_max)

    def __call__(self, m: int, k: int) -> int:
        row = self.row(m)
        if 0 <= k < len(row):
            return row[k]
        return 0


class SignedNumberCache:
    """Cache de números de Bernoulli (B_1 = -1/2) e de Euler na convenção da secante."""

    def __init__(self) -> None:
        self.bernoulli: Dict[int, Fraction] = {0: Fraction(1)}
        self.euler: Dict[int, int] = {0: 1}

    def bernoulli_number(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError(f"Índice de Bernoulli negativo: {n}")
        for m in range(len(self.bernoulli), n + 1):
            # sum_{k=0}^{m} C(m+1,k) B_k = 0
            acc = sum(binom(m + 1, k) * self.bernoulli[k] for k in range(m))
            self.bernoulli[m] = -acc / (m + 1)
        return self.bernoulli[n]

    def euler_number(self, n: int) -> int:
        if n < 0:
            raise ValueError(f"Índice de Euler negativo: {n}")
        if n % 2 == 1:
            return 0
        for j in range(len(self.euler), n // 2 + 1):
            # sum_{k=0}^{j} C(2j,2k) E_{2k} = 0
            acc = sum(binom(2 * j, 2 * k) * self.euler[2 * k] for k in range(j))
            self.euler[2 * j] = -acc
        return self.euler[n]


EULERIAN_A = EulerianTableA()
EULERIAN_B = EulerianTableB()
SIGNED_NUMBERS = SignedNumberCache()


def prebuild_tables(m_max: int) -> None:
    """Constrói antecipadamente as linhas 0..m_max (antes de paralelizar)."""
    EULERIAN_A.prebuild(m_max)
    EULERIAN_B.prebuild(m_max)


def eulerian_a(m: int, k: int) -> int:
    """Número euleriano do tipo A <m,k>; 0 fora de [0, m-1]."""
    return EULERIAN_A(m, k)


def eulerian_b(m: int, k: int) -> int:
    """Número euleriano do tipo B <m,k>^B; 0 fora de [0, m]."""
    return EULERIAN_B(m, k)


def bernoulli(n: int) -> Fraction:
    return SIGNED_NUMBERS.bernoulli_number(n)


def euler_number(n: int) -> int:
    return SIGNED_NUMBERS.euler_number(n)


def bernoulli_akiyama_tanigawa(n: int) -> Fraction:
    """
    Segundo algoritmo para B_n (Akiyama-Tanigawa). Produz B_1 = +1/2;
    para n != 1 coincide com `bernoulli`.
    """
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


def euler_boustrophedon(n: int) -> int:
    """
    Segundo algoritmo para E_n: triângulo de Entringer (boustrofédon), que fornece
    os números zigue-zague |E_n|; o sinal da secante é (-1)^(n/2).
    """
    if n % 2 == 1:
        return 0
    row = [1]
    for size in range(1, n + 1):
        new = [0]
        for k in range(1, size + 1):
            new.append(new[k - 1] + row[size - k])
        row = new
    return (-1) ** (n // 2) * row[-1]


def eulerian_poly_a(m: int, t: Number) -> Fraction:
    """A_m(t) = sum_k <m,k> t^k (A_0 = 1 pela convenção da linha 0)."""
    acc = Fraction(0)
    for c in reversed(EULERIAN_A.row(m)):
        acc = acc * t + c
    return acc


def eulerian_poly_b(m: int, t: Number) -> Fraction:
    """B_m(t) = sum_k <m,k>^B t^k."""
    acc = Fraction(0)
    for c in reversed(EULERIAN_B.row(m)):
        acc = acc * t + c
    return acc


def descent_counts_a(m: int) -> List[int]:
    """Contagem por força bruta de descidas sobre todas as permutações de {1..m}."""
    counts = [0] * max(m, 1)
    for perm in itertools.permutations(range(1, m + 1)):
        descents = sum(1 for i in range(m - 1) if perm[i] > perm[i + 1])
        counts[descents] += 1
    return counts


def descent_counts_b(m: int) -> List[int]:
    """
    Contagem por força bruta de descidas de tipo B sobre as 2^m m! permutações
    com sinal (posição 0 é descida quando w(1) < 0).
    """
    counts = [0] * (m + 1)
    for perm in itertools.permutations(range(1, m + 1)):
        for signs in itertools.product((1, -1), repeat=m):
            word = (0,) + tuple(s * v for s, v in zip(signs, perm))
            descents = sum(1 for i in range(m) if word[i] > word[i + 1])
            counts[descents] += 1
    return counts


def worpitzky_b_check(m: int, k: int) -> bool:
    """sum_l C(m+k-l, m) <m,l>^B == (2k+1)^m, exatamente."""
    lhs = sum(binom(m + k - ell, m) * eulerian_b(m, ell) for ell in range(m + 1) if m + k - ell >= 0)
    return lhs == (2 * k + 1) ** m


def eulerian_sum_sides(n: int) -> Dict[str, Tuple[Fraction, Fraction]]:
    """
    Os dois lados das somas eulerianas alternadas.

    Returns:
        {"B": (soma tipo B, -2^(2n-2) E_2n), "A": (soma tipo A, -2^(2n+1)(2^(2n+2)-1)B_(2n+2)/(2n+2))}
    """
    if n < 1:
        raise UsageError(f"n-out-of-range: somas eulerianas exigem n >= 1 (recebido {n})")
    sum_b = sum(eulerian_b(2 * n - 1, k) * (-1) ** k * (2 * n - 2 * k - 1) for k in range(n))
    sum_a = sum(eulerian_a(2 * n, k) * (-1) ** k * (2 * n - 2 * k - 1) for k in range(n))
    rhs_b = Fraction(-(2 ** (2 * n - 2)) * euler_number(2 * n))
    rhs_a = -Fraction(2 ** (2 * n + 1) * (2 ** (2 * n + 2) - 1), 2 * n + 2) * bernoulli(2 * n + 2)
    return {"B": (Fraction(sum_b), rhs_b), "A": (Fraction(sum_a), rhs_a)}


def eulerian_sum_identity(n: int) -> Tuple[bool, bool]:
    """Verifica as duas somas eulerianas; retorna (pass_B, pass_A)."""
    sides = eulerian_sum_sides(n)
    return sides["B"][0] == sides["B"][1], sides["A"][0] == sides["A"][1]


def _check_open_unit(z: Fraction) -> Fraction:
    z = Fraction(z)
    if not 0 < z < 1:
        raise ValueError(f"z deve estar em (0,1); recebido {z}")
    return z


def polylog_b_identity_residual(m: int, z: Number, precision: int = 64):
    """
    Resíduo |LHS - RHS| da identidade Im(Li_{-m}(iz))/z = sum_r <m,r>^B (-z^2)^r / (1+z^2)^(m+1).

    O lado esquerdo é a série alternada sum_k (2k+1)^m (-z^2)^k, truncada no primeiro
    índice K a partir do qual os termos decrescem e |termo_K| <= 2^-(precision+1);
    a soma parcial é exata, e o resto é limitado pelo primeiro termo omitido.

    Args:
        m: Ordem (não negativa).
        z: Racional em (0,1).
        precision: Precisão em bits do resultado e do truncamento.

    Returns:
        BigFloat com o resíduo (no máximo 2^-(precision+1)).
    """
    z = _check_open_unit(z)
    x = -z * z
    tol = Fraction(1, 2 ** (precision + 1))
    partial = Fraction(0)
    k = 0
    while True:
        term = (2 * k + 1) ** m * x**k
        ratio = Fraction(2 * k + 3, 2 * k + 1) ** m * z * z
        if abs(term) <= tol and ratio <= 1:
            break
        partial += term
        k += 1
    row = EULERIAN_B.row(m)
    closed = sum(c * x**r for r, c in enumerate(row)) / (1 + z * z) ** (m + 1)
    ctx = working_context(precision)
    logger.debug("Polilog B: m=%s z=%s termos=%s", m, z, k)
    return to_mpf(ctx, abs(partial - closed))


def polylog_a_identity_residual(m: int, z: Number, precision: int = 64):
    """
    Resíduo |LHS - RHS| da identidade de Wood Li_{-m}(z) = z A_m(z) / (1-z)^(m+1).

    A série positiva sum_{k>=1} k^m z^k é truncada quando o resto, limitado pela
    cauda geométrica t_{K+1} / (1 - q), fica abaixo de 2^-(precision+1).
    """
    z = _check_open_unit(z)
    tol = Fraction(1, 2 ** (precision + 1))
    partial = Fraction(0)
    k = 1
    while True:
        partial += Fraction(k) ** m * z**k
        nxt = Fraction(k + 1) ** m * z ** (k + 1)
        q = Fraction(k + 2, k + 1) ** m * z
        if q < 1 and nxt / (1 - q) <= tol:
            break
        k += 1
    closed = z * eulerian_poly_a(m, z) / (1 - z) ** (m + 1)
    ctx = working_context(precision)
    return to_mpf(ctx, abs(partial - closed))


def eulerian_suite(n_max: int) -> List[Check]:
    """
    Suíte de identidades eulerianas: simetria, somas de linha, força bruta,
    Worpitzky tipo B, somas eulerianas alternadas e concordância dos dois
    algoritmos de Bernoulli/Euler.

    Args:
        n_max: Maior n das somas eulerianas.

    Returns:
        Lista de Checks.
    """
    checks: List[Check] = []
    m_max = max(EULERIAN_CONFIG["table_max_m"], 2 * n_max)
    prebuild_tables(m_max)

    for m in range(EULERIAN_CONFIG["table_max_m"] + 1):
        row_a = EULERIAN_A.row(m)
        row_b = EULERIAN_B.row(m)
        sym = row_a == row_a[::-1] and row_b == row_b[::-1]
        positive = all(v > 0 for v in row_a) and all(v > 0 for v in row_b)
        sums = sum(row_a) == factorial(m) and sum(row_b) == 2**m * factorial(m)
        checks.append(make_check(SUITE, "row_symmetry_positivity", sym and positive, n=m))
        checks.append(make_check(SUITE, "row_sums", sums, n=m))

    for m in range(1, EULERIAN_CONFIG["brute_force_a_max_m"] + 1):
        ok = descent_counts_a(m) == list(EULERIAN_A.row(m))
        checks.append(make_check(SUITE, "brute_force_descents", ok, n=m, family="A"))
    for m in range(EULERIAN_CONFIG["brute_force_b_max_m"] + 1):
        ok = descent_counts_b(m) == list(EULERIAN_B.row(m))
        checks.append(make_check(SUITE, "brute_force_descents", ok, n=m, family="B"))

    for m in range(EULERIAN_CONFIG["worpitzky_max_m"] + 1):
        failures = [k for k in range(EULERIAN_CONFIG["worpitzky_max_k"] + 1) if not worpitzky_b_check(m, k)]
        detail = f"falhas em k={failures}" if failures else None
        checks.append(make_check(SUITE, "worpitzky_b", not failures, n=m, family="B", detail=detail))

    for n in range(1, n_max + 1):
        sides = eulerian_sum_sides(n)
        for family in ("B", "A"):
            lhs, rhs = sides[family]
            checks.append(make_check(SUITE, "eulerian_sum", lhs == rhs, n=n, family=family, exact=lhs))

    for n in range(2, EULERIAN_CONFIG["dual_algorithm_max_n"] + 1, 2):
        ok_b = bernoulli(n) == bernoulli_akiyama_tanigawa(n)
        ok_e = euler_number(n) == euler_boustrophedon(n)
        checks.append(make_check(SUITE, "bernoulli_dual_algorithm", ok_b, n=n, exact=bernoulli(n)))
        checks.append(make_check(SUITE, "euler_dual_algorithm", ok_e, n=n, exact=euler_number(n)))

    logger.info("Suíte euleriana: %d verificações", len(checks))
    return checks


def polylog_checks(max_m: int, points: List[Fraction], precision: int) -> List[Check]:
    """Verificações numéricas das identidades de polilogaritmo (tipos B e A)."""
    checks: List[Check] = []
    bound = Fraction(1, 2**precision)
    for m in range(max_m + 1):
        for z in points:
            for family, fn in (("B", polylog_b_identity_residual), ("A", polylog_a_identity_residual)):
                residual = fn(m, z, precision)
                ok = residual <= to_mpf(working_context(precision), bound)
                checks.append(
                    make_check(
                        "properties",
                        f"polylog_{family.lower()}_identity",
                        ok,
                        n=m,
                        family=family,
                        error=str(residual),
                        detail=f"z={z}",
                    )
                )
    return checks
