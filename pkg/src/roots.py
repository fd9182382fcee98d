"""
Módulo de isolamento exato de raízes reais.
Cadeias de Sturm sobre QQ (sympy.polys) com remoção de conteúdo, contagem de
raízes em intervalos, isolamento por bissecção, entrelaçamento entre n e n+1 e
as cotas pela razão normalizada nos extremos.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy.polys.densearith import dup_neg, dup_rem
from sympy.polys.densebasic import dup_degree, dup_LC
from sympy.polys.densetools import dup_diff, dup_eval, dup_primitive, dup_sign_variations
from sympy.polys.domains import QQ
from sympy.polys.rootisolation import dup_cauchy_upper_bound

from src.config import ROOTS_CONFIG
from src.exact_arith import (
    Number,
    Poly,
    UsageError,
    digits_to_bits,
    eval_dense,
    factorial,
    mpf_to_fraction,
    qq,
    rational_str,
    render_decimal,
    to_dup,
    to_fraction,
    to_mpf,
    working_context,
)
from src.polynomials import AdaptedPolynomial, EvenPolynomial, Family, adapted, build, to_dense_x
from src.reports import Check, make_check

logger = logging.getLogger(__name__)

SUITE = "roots"

PolyLike = Union[AdaptedPolynomial, Sequence[Number]]


class RefinementExhaustedError(RuntimeError):
    """Intervalos ainda sobrepostos após a profundidade máxima de refinamento."""


@dataclass(frozen=True)
class SturmChain:
    """Sequência de restos com sinal de p e p' (listas dup em QQ, conteúdo removido)."""

    polys: Tuple[Tuple[object, ...], ...]

    @property
    def squarefree(self) -> bool:
        return dup_degree(self.polys[-1]) == 0

    def variations(self, x: Number) -> int:
        """Número de trocas de sinal da cadeia avaliada em x (zeros descartados)."""
        point = qq(x)
        return dup_sign_variations([dup_eval(q, point, QQ) for q in self.polys], QQ)

    def variations_at_infinity(self, positive: bool) -> int:
        leads = []
        for q in self.polys:
            lead = dup_LC(q, QQ)
            if not positive and dup_degree(q) % 2 == 1:
                lead = -lead
            leads.append(lead)
        return dup_sign_variations(leads, QQ)


@dataclass(frozen=True)
class IsolatingInterval:
    """Intervalo (lo, hi] com exatamente uma raiz; extremos nunca são raízes."""

    lo: Fraction
    hi: Fraction
    sign_change_count_delta: int = 1

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


@dataclass
class RootReport:
    family: Optional[str]
    n: Optional[int]
    intervals: List[IsolatingInterval]
    all_real: bool
    all_simple: bool
    all_in_unit: bool
    largest_root_bound_ok: bool
    coeffs: Tuple[Fraction, ...] = field(default=(), repr=False, compare=False)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def _coeffs(p: PolyLike) -> Poly:
    if isinstance(p, AdaptedPolynomial):
        return list(p.coeffs)
    coeffs = [Fraction(c) for c in p]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def sturm_chain(p: PolyLike) -> SturmChain:
    """
    Cadeia de Sturm de p: p, p', -rem(p_{i-1}, p_i), ..., com cada termo reduzido
    à parte primitiva (conteúdo positivo, sinais preservados).
    """
    f = to_dup(_coeffs(p))
    if not f:
        raise ValueError("Cadeia de Sturm do polinômio nulo")
    polys = [dup_primitive(f, QQ)[1]]
    derivative = dup_diff(f, 1, QQ)
    if derivative:
        polys.append(dup_primitive(derivative, QQ)[1])
        while True:
            remainder = dup_rem(polys[-2], polys[-1], QQ)
            if not remainder:
                break
            polys.append(dup_primitive(dup_neg(remainder, QQ), QQ)[1])
    return SturmChain(polys=tuple(tuple(q) for q in polys))


def _shift_off_root(coeffs: Poly, x: Fraction) -> Fraction:
    shift = ROOTS_CONFIG["endpoint_shift"]
    for _ in range(ROOTS_CONFIG["max_endpoint_retries"]):
        if eval_dense(coeffs, x) != 0:
            return x
        x += shift
    if eval_dense(coeffs, x) != 0:
        return x
    raise ValueError(f"endpoint-on-root: extremo {x} continua raiz após deslocamentos")


def sturm_count(p: PolyLike, a: Number, b: Number, chain: Optional[SturmChain] = None) -> int:
    """
    Número de raízes reais distintas de p em (a, b].

    Um extremo que seja raiz é deslocado em 2^-64 (tentativas limitadas).

    Raises:
        ValueError: Se a >= b ou se o extremo continuar sendo raiz.
    """
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        raise ValueError(f"Intervalo inválido: a={a} >= b={b}")
    coeffs = _coeffs(p)
    if chain is None:
        chain = sturm_chain(coeffs)
    a = _shift_off_root(coeffs, a)
    b = _shift_off_root(coeffs, b)
    return chain.variations(a) - chain.variations(b)


def real_root_count(p: PolyLike, chain: Optional[SturmChain] = None) -> int:
    """Número de raízes reais distintas em toda a reta."""
    if chain is None:
        chain = sturm_chain(p)
    return chain.variations_at_infinity(False) - chain.variations_at_infinity(True)


def cauchy_bound(coeffs: Poly) -> Fraction:
    """Toda raiz satisfaz |r| < 1 + max |a_i / a_n| (nunca menor que 1)."""
    return max(to_fraction(dup_cauchy_upper_bound(to_dup(coeffs), QQ)), Fraction(1))


def _split_point(coeffs: Poly, lo: Fraction, hi: Fraction) -> Fraction:
    mid = (lo + hi) / 2
    j = 3
    while eval_dense(coeffs, mid) == 0:
        mid = lo + (hi - lo) * (Fraction(1, 2) + Fraction(1, 2**j))
        j += 1
    return mid


def refine(coeffs: Poly, chain: SturmChain, interval: IsolatingInterval) -> IsolatingInterval:
    """Uma bissecção: devolve a metade que contém a raiz."""
    mid = _split_point(coeffs, interval.lo, interval.hi)
    if chain.variations(interval.lo) - chain.variations(mid) == 1:
        return IsolatingInterval(interval.lo, mid)
    return IsolatingInterval(mid, interval.hi)


def isolate_all(p: PolyLike, width: Optional[Fraction] = None) -> RootReport:
    """
    Isola todas as raízes reais de p em intervalos de comprimento <= width.

    Args:
        p: Polinômio adaptado (ou coeficientes densos).
        width: Largura máxima dos intervalos (padrão 2^-80).

    Returns:
        RootReport com intervalos ordenados e os indicadores all_real,
        all_simple, all_in_unit e largest_root_bound_ok.
    """
    if width is None:
        width = ROOTS_CONFIG["default_width"]
    width = Fraction(width)
    if width <= 0:
        raise ValueError(f"Largura deve ser positiva: {width}")

    coeffs = _coeffs(p)
    family = p.family.value if isinstance(p, AdaptedPolynomial) else None
    n = p.n if isinstance(p, AdaptedPolynomial) else None
    degree = len(coeffs) - 1
    if degree <= 0:
        return RootReport(family, n, [], True, True, True, True, tuple(coeffs))

    chain = sturm_chain(coeffs)
    bound = cauchy_bound(coeffs)
    intervals: List[IsolatingInterval] = []
    stack = [(-bound, bound, real_root_count(coeffs, chain))]
    while stack:
        lo, hi, count = stack.pop()
        if count == 0:
            continue
        if count == 1 and hi - lo <= width:
            intervals.append(IsolatingInterval(lo, hi))
            continue
        mid = _split_point(coeffs, lo, hi)
        left = chain.variations(lo) - chain.variations(mid)
        stack.append((lo, mid, left))
        stack.append((mid, hi, count - left))
    intervals.sort(key=lambda iv: iv.lo)

    all_real = len(intervals) == degree
    all_simple = chain.squarefree
    in_unit = eval_dense(coeffs, 1) != 0 and sturm_count(coeffs, 0, 1, chain) == degree
    if not all_simple:
        logger.warning("Polinômio %s_%s não é livre de quadrados", family, n)

    report = RootReport(family, n, intervals, all_real, all_simple, in_unit, False, tuple(coeffs))
    if eval_dense(coeffs, 1) != 0 and intervals:
        report.largest_root_bound_ok = check_endpoint_bound(report, Fraction(1), "right")
    return report


def endpoint_ratio_bound(p: PolyLike, a: Number, side: str = "right", precision: int = 128):
    """
    Razão normalizada |p(a)/lc(p)|^(1/grau) como BigFloat.

    Para side="right" limita a - (maior raiz); para side="left", (menor raiz) - a,
    quando todas as raízes ficam do lado correspondente de a.

    Raises:
        ValueError: Se grau < 1, p(a) = 0 ou side inválido.
    """
    if side not in ("left", "right"):
        raise ValueError(f"Lado inválido: {side!r} (use left ou right)")
    coeffs = _coeffs(p)
    degree = len(coeffs) - 1
    if degree < 1:
        raise ValueError("Razão nos extremos exige grau >= 1")
    value = eval_dense(coeffs, Fraction(a))
    if value == 0:
        raise ValueError(f"p({a}) = 0: razão nos extremos indefinida")
    ratio = abs(value / coeffs[-1])
    wide = working_context(precision + 16)
    root = wide.root(to_mpf(wide, ratio), degree)
    ctx = working_context(precision)
    return ctx.mpf(root)


def check_endpoint_bound(report: RootReport, a: Fraction, side: str, precision: int = 128) -> bool:
    """
    Verifica a cota quantitativa com o extremo conservador do intervalo isolante:
    a - lo(último) <= cota (lado direito) ou hi(primeiro) - a <= cota (lado esquerdo).
    """
    if not report.intervals:
        return True
    bound = mpf_to_fraction(endpoint_ratio_bound(list(report.coeffs), a, side, precision))
    if side == "right":
        distance = a - report.intervals[-1].lo
    else:
        distance = report.intervals[0].hi - a
    return distance <= bound


def _overlap(first: IsolatingInterval, second: IsolatingInterval) -> bool:
    return first.lo < second.hi and second.lo < first.hi


def check_interlacing(p: RootReport, q: RootReport) -> bool:
    """
    Entrelaçamento estrito: entre raízes consecutivas de q há exatamente uma raiz de p
    (p com n-1 raízes, q com n raízes). Intervalos sobrepostos são refinados até 2^-512.

    Raises:
        RefinementExhaustedError: Se a ordem continuar indecidível ("refinement-exhausted").
    """
    if len(q.intervals) != len(p.intervals) + 1:
        return False
    if not p.intervals:
        return True

    p_coeffs, q_coeffs = list(p.coeffs), list(q.coeffs)
    p_chain, q_chain = sturm_chain(p_coeffs), sturm_chain(q_coeffs)
    p_ivs, q_ivs = list(p.intervals), list(q.intervals)
    floor = ROOTS_CONFIG["min_refinement_width"]

    while True:
        merged = sorted(
            [(iv, "p", i) for i, iv in enumerate(p_ivs)] + [(iv, "q", i) for i, iv in enumerate(q_ivs)],
            key=lambda item: item[0].lo,
        )
        clashes = set()
        for (a, tag_a, i), (b, tag_b, j) in zip(merged, merged[1:]):
            if _overlap(a, b):
                clashes.add((tag_a, i))
                clashes.add((tag_b, j))
        if not clashes:
            tags = [tag for _, tag, _ in merged]
            return tags == ["q", "p"] * len(p_ivs) + ["q"]
        for tag, i in clashes:
            ivs, coeffs, chain = (p_ivs, p_coeffs, p_chain) if tag == "p" else (q_ivs, q_coeffs, q_chain)
            if ivs[i].width < floor:
                raise RefinementExhaustedError(
                    f"refinement-exhausted: intervalos de {p.family}_{p.n} e {q.family}_{q.n} não se separam"
                )
            ivs[i] = refine(coeffs, chain, ivs[i])


def even_root_count(p: EvenPolynomial) -> int:
    """Raízes distintas do polinômio par em (-1, 1], pela cadeia de Sturm em x."""
    return sturm_count(to_dense_x(p), -1, 1)


def root_report(family: Family, n: int, width: Optional[Fraction] = None) -> RootReport:
    """Constrói o polinômio adaptado e isola suas raízes."""
    return isolate_all(adapted(build(family, n)), width)


def report_to_dict(report: RootReport, digits: int = 30) -> Dict[str, object]:
    """Intervalos com extremos racionais exatos e prévias decimais."""
    ctx = working_context(digits_to_bits(digits) + 8)
    intervals = []
    for iv in report.intervals:
        mid = to_mpf(ctx, (iv.lo + iv.hi) / 2)
        intervals.append(
            {
                "lo": rational_str(iv.lo),
                "hi": rational_str(iv.hi),
                "preview": render_decimal(ctx, mid, digits),
            }
        )
    return {
        "family": report.family,
        "n": report.n,
        "degree": report.degree,
        "intervals": intervals,
        "all_real": report.all_real,
        "all_simple": report.all_simple,
        "all_in_unit": report.all_in_unit,
        "largest_root_bound_ok": report.largest_root_bound_ok,
    }


def factorial_root_sequences(n_max: int, precision: int = 128) -> Dict[str, List[Tuple[int, object]]]:
    """
    Sequências das cotas nos extremos e do lema das raízes de fatoriais, n = 2..n_max:
    "xi": ((2n-1)!)^(-1/(n-1)), "lambda": (2^(2n-1)/(2n)!)^(1/(n-1)),
    "factorial_lemma": 4 / (2 (2n)!)^(1/(n-1)).
    """
    ctx = working_context(precision)
    out: Dict[str, List[Tuple[int, object]]] = {"xi": [], "lambda": [], "factorial_lemma": []}
    for n in range(2, n_max + 1):
        out["xi"].append((n, 1 / ctx.root(ctx.mpf(factorial(2 * n - 1)), n - 1)))
        out["lambda"].append((n, ctx.root(to_mpf(ctx, Fraction(2 ** (2 * n - 1), factorial(2 * n))), n - 1)))
        out["factorial_lemma"].append((n, 4 / ctx.root(ctx.mpf(2 * factorial(2 * n)), n - 1)))
    return out


def decreasing_from(values: List[Tuple[int, object]]) -> Optional[int]:
    """Menor n a partir do qual a sequência é estritamente decrescente até o fim."""
    start = None
    for idx in range(len(values) - 1, 0, -1):
        if values[idx][1] < values[idx - 1][1]:
            start = values[idx - 1][0]
        else:
            break
    return start


def stirling_lower_bound_holds(m_max: int, precision: int = 128) -> bool:
    """m! >= (m/e)^m para 1 <= m <= m_max."""
    ctx = working_context(precision)
    return all(ctx.mpf(factorial(m)) >= (ctx.mpf(m) / ctx.e) ** m for m in range(1, m_max + 1))


def _strictly_before(first: IsolatingInterval, second: IsolatingInterval) -> bool:
    return first.hi <= second.lo


def root_checks(reports: Dict[Tuple[str, int], RootReport], n_max: int) -> List[Check]:
    """
    Verificações por (família, n) a partir de relatórios já isolados: contagem em (0,1),
    livre de quadrados, todas reais, raízes do polinômio par, cota no extremo 1,
    forma fechada da razão, entrelaçamento e tendências dos zeros extremos.

    Args:
        reports: Mapa (família, n) -> RootReport, para n = 2..n_max.
        n_max: Maior n.

    Returns:
        Lista de Checks.
    """
    checks: List[Check] = []
    precision = ROOTS_CONFIG["bound_precision_bits"]
    ctx = working_context(precision)
    for family in Family:
        name = family.value
        for n in range(2, n_max + 1):
            report = reports[(name, n)]
            coeffs = list(report.coeffs)
            count = sturm_count(coeffs, 0, 1)
            checks.append(make_check(SUITE, "count_in_unit", count == n - 1 and report.all_in_unit, n=n, family=name, detail=f"{count} raízes"))
            checks.append(make_check(SUITE, "squarefree", report.all_simple, n=n, family=name))
            checks.append(make_check(SUITE, "all_real", report.all_real, n=n, family=name))
            even_count = even_root_count(build(family, n))
            checks.append(make_check(SUITE, "even_root_count", even_count == 2 * (n - 1), n=n, family=name, detail=f"{even_count} raízes em (-1,1)"))

            bound = endpoint_ratio_bound(coeffs, 1, "right", precision)
            checks.append(
                make_check(
                    SUITE,
                    "largest_root_endpoint_bound",
                    report.largest_root_bound_ok,
                    n=n,
                    family=name,
                    numeric=render_decimal(ctx, bound, 20),
                )
            )
            ratio = abs(eval_dense(coeffs, 1) / coeffs[-1])
            closed = Fraction(1, factorial(2 * n - 1)) if family is Family.XI else Fraction(2 ** (2 * n - 1), factorial(2 * n))
            checks.append(make_check(SUITE, "endpoint_ratio_closed_form", ratio == closed, n=n, family=name, exact=ratio))

        for n in range(2, n_max):
            ok = check_interlacing(reports[(name, n)], reports[(name, n + 1)])
            checks.append(make_check(SUITE, "interlacing", ok, n=n, family=name, detail=f"{name}~_{n} vs {name}~_{n + 1}"))

    if n_max >= 3:
        checks.extend(extremal_zero_checks(n_max, reports))
    return checks


def extremal_zero_checks(n_max: int, reports: Optional[Dict[Tuple[str, int], RootReport]] = None) -> List[Check]:
    """
    (a) 1 - r_max <= razão normalizada em 1; (b) as sequências de cotas decrescem
    estritamente a partir de algum n pequeno; (c) tendências dos menores e maiores
    zeros (relatadas como "info").
    """
    if n_max < 3:
        raise UsageError(f"n-out-of-range: extremal_zero_checks exige n_max >= 3 (recebido {n_max})")
    if reports is None:
        reports = {(f.value, n): root_report(f, n) for f in Family for n in range(2, n_max + 1)}
    checks: List[Check] = []
    precision = ROOTS_CONFIG["bound_precision_bits"]

    for family in Family:
        name = family.value
        ok = all(reports[(name, n)].largest_root_bound_ok for n in range(2, n_max + 1))
        checks.append(make_check(SUITE, "largest_zero_bound_all_n", ok, family=name, detail=f"n=2..{n_max}"))

    b_max = ROOTS_CONFIG["bound_sequence_max_n"]
    sequences = factorial_root_sequences(b_max, precision)
    for key, values in sequences.items():
        start = decreasing_from(values)
        ok = start is not None and start <= b_max // 2
        checks.append(
            make_check(SUITE, "bound_sequence_decreasing", ok, family=key, detail=f"estritamente decrescente a partir de n={start} até {b_max}")
        )
    checks.append(make_check(SUITE, "stirling_lower_bound", stirling_lower_bound_holds(2 * b_max, precision), detail=f"m <= {2 * b_max}"))

    for family in Family:
        name = family.value
        ordered = [reports[(name, n)] for n in range(2, n_max + 1)]
        smallest = [r.intervals[0] for r in ordered]
        largest = [r.intervals[-1] for r in ordered]
        smallest_down = all(_strictly_before(b, a) for a, b in zip(smallest, smallest[1:]))
        largest_up = all(_strictly_before(a, b) for a, b in zip(largest, largest[1:]))
        label = "smallest_zero_trend" if family is Family.LAMBDA else "smallest_zero_trend_conjecture"
        checks.append(
            make_check(SUITE, label, smallest_down, family=name, info=True, detail="decrescente" if smallest_down else "não monotônica")
        )
        checks.append(
            make_check(SUITE, "largest_zero_trend", largest_up, family=name, info=True, detail="crescente" if largest_up else "não monotônica")
        )
    return checks
