"""
Interface de linha de comando: gera polinômios, executa as suítes de verificação
e emite relatórios legíveis por máquina.

Códigos de saída: 0 sucesso, 1 falha de verificação, 2 uso/pré-condição (UsageError),
3 erro interno (demais exceções).
"""

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from src.config import GEN_MAX_N, PIPELINE_CONFIG, QUADRATURE_CONFIG, REPORT_CONFIG, SUITE_CAPS
from src.exact_arith import UsageError, rational_str
from src.polynomials import Family, build, evaluate
from src.reports import coefficients_csv, make_check, new_report, to_json, write_report, write_text
from src.roots import check_interlacing, report_to_dict, root_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def cmd_gen(family: str, n: int, fmt: str = "json", output_path: Optional[Path] = None, with_timestamp: bool = True) -> int:
    """
    Emite os coeficientes {t, num, den} de Xi_n ou Lambda_n e os metadados.

    Raises:
        UsageError: n fora de [1, 64] ou formato desconhecido.
    """
    if not 1 <= n <= GEN_MAX_N:
        raise UsageError(f"n-out-of-range: gen exige 1 <= n <= {GEN_MAX_N} (recebido {n})")
    p = build(Family.parse(family), n)

    if fmt == "csv":
        write_text(coefficients_csv(list(p.coeffs)), output_path)
        return EXIT_OK
    if fmt != "json":
        raise UsageError(f"Formato desconhecido: {fmt!r} (use json ou csv)")

    meta = new_report(with_timestamp=with_timestamp).to_dict()["meta"]
    meta.pop("summary", None)
    data = {
        "meta": meta,
        "family": p.family.value,
        "n": n,
        "degree": p.degree,
        "leading": rational_str(p.leading),
        "value_at_0": rational_str(evaluate(p, 0)),
        "value_at_1": rational_str(evaluate(p, 1)),
        "coefficients": [
            {"t": t, "num": str(Fraction(c).numerator), "den": str(Fraction(c).denominator)}
            for t, c in enumerate(p.coeffs)
        ],
    }
    write_text(to_json(data), output_path)
    return EXIT_OK


def cmd_verify(
    suite: str,
    n_max: int,
    digits: Optional[int] = None,
    force: bool = False,
    workers: Optional[int] = None,
    output_path: Optional[Path] = None,
    with_timestamp: bool = True,
) -> int:
    """Executa o flow de verificação e escreve o relatório; 0 se nenhuma falha."""
    from src.pipeline import check_caps, verification_flow

    check_caps(suite, n_max, force)
    doc = verification_flow(
        suite=suite,
        n_max=n_max,
        digits=digits,
        force=force,
        workers=workers,
        with_timestamp=with_timestamp,
    )
    write_report(doc, output_path)
    return EXIT_FAIL if doc.has_failures else EXIT_OK


def cmd_roots(
    family: str,
    n: int,
    width_bits: int = 80,
    force: bool = False,
    output_path: Optional[Path] = None,
    with_timestamp: bool = True,
) -> int:
    """
    Intervalos isolantes com extremos racionais exatos e prévias decimais, mais
    o entrelaçamento com n-1 quando disponível.
    """
    cap = SUITE_CAPS["roots"]
    if n < 1 or (n > cap and not force):
        raise UsageError(f"n-out-of-range: roots exige 1 <= n <= {cap} (recebido {n}); use --force")
    if width_bits < 1:
        raise UsageError(f"--width-bits deve ser positivo (recebido {width_bits})")
    fam = Family.parse(family)
    width = Fraction(1, 2**width_bits)
    report = root_report(fam, n, width)

    doc = new_report(with_timestamp=with_timestamp, family=fam.value, n=n, width_bits=width_bits)
    checks = []
    if report.degree <= 0:
        checks.append(make_check("roots", "root_count", True, n=n, family=fam.value, info=True, detail="polinômio constante, sem raízes"))
    else:
        ok = len(report.intervals) == n - 1 and report.all_real and report.all_in_unit
        checks.append(make_check("roots", "root_count", ok, n=n, family=fam.value, detail=f"{len(report.intervals)} raízes em (0,1)"))
        checks.append(make_check("roots", "squarefree", report.all_simple, n=n, family=fam.value))
        checks.append(make_check("roots", "largest_root_endpoint_bound", report.largest_root_bound_ok, n=n, family=fam.value))
        previous = root_report(fam, n - 1, width)
        checks.append(
            make_check("roots", "interlacing", check_interlacing(previous, report), n=n, family=fam.value, detail=f"vs n={n - 1}")
        )
    doc.add_suite("roots", checks)

    data: Dict[str, object] = doc.to_dict()
    data["roots"] = report_to_dict(report, REPORT_CONFIG["decimal_digits"])
    write_text(to_json(data), output_path)
    return EXIT_FAIL if doc.has_failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xi-lambda",
        description="Workbench dos polinômios Xi_n e Lambda_n: geração, raízes e verificações.",
    )
    parser.add_argument("--no-timestamp", action="store_true", help="Omite o carimbo de tempo (saída determinística)")
    parser.add_argument("--out", type=Path, default=None, help="Arquivo de saída (padrão: stdout)")
    parser.add_argument(
        "--workers",
        type=int,
        default=PIPELINE_CONFIG["default_workers"],
        help="Processos do joblib (-1 = todos os processadores)",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log detalhado")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="Gera os coeficientes de Xi_n ou Lambda_n")
    gen.add_argument("--family", required=True, type=str.lower, choices=("xi", "lambda"))
    gen.add_argument("--n", required=True, type=int)
    gen.add_argument("--format", default="json", choices=("json", "csv"))

    verify = sub.add_parser("verify", help="Executa suítes de verificação")
    verify.add_argument("--suite", default="all", choices=("structural", "roots", "integral", "all"))
    verify.add_argument("--n-max", required=True, type=int)
    verify.add_argument("--digits", type=int, default=QUADRATURE_CONFIG["target_digits"])
    verify.add_argument("--force", action="store_true", help="Ignora os limites por suíte")

    roots = sub.add_parser("roots", help="Isola as raízes do polinômio adaptado")
    roots.add_argument("--family", required=True, type=str.lower, choices=("xi", "lambda"))
    roots.add_argument("--n", required=True, type=int)
    roots.add_argument("--width-bits", type=int, default=80)
    roots.add_argument("--force", action="store_true", help="Ignora o limite de n")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Ponto de entrada; devolve o código de saída."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    with_timestamp = not args.no_timestamp

    try:
        if args.command == "gen":
            return cmd_gen(args.family, args.n, args.format, args.out, with_timestamp)
        if args.command == "verify":
            return cmd_verify(args.suite, args.n_max, args.digits, args.force, args.workers, args.out, with_timestamp)
        return cmd_roots(args.family, args.n, args.width_bits, args.force, args.out, with_timestamp)
    except UsageError as e:
        print(f"Erro de uso: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logger.exception("Erro interno")
        print(f"Erro interno: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
