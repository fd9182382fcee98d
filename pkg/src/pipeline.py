"""
Pipeline Prefect para as suítes de verificação dos polinômios Xi_n e Lambda_n.
Orquestra todas as etapas: identidades eulerianas, estrutura exata, múltiplos
de pi, propriedades, raízes e integrais.
"""

from typing import Dict, List, Optional

from joblib import Parallel, delayed
from prefect import flow, get_run_logger, task

from src.config import EULERIAN_CONFIG, PIPELINE_CONFIG, PREFECT_CONFIG, PROPERTY_CONFIG, QUADRATURE_CONFIG, SUITE_CAPS
from src.exact_arith import UsageError
from src.polynomials import Family, property_checks, structural_checks
from src.quadrature import integral_checks, pi_ratio_suite, reference_checks
from src.reports import Check, ReportDocument, new_report
from src.roots import root_checks, root_report
from src.special_numbers import eulerian_suite, polylog_checks, prebuild_tables

SUITES = ("structural", "roots", "integral", "all")

# Tarefas executadas por cada suíte da linha de comando
SUITE_TASKS = {
    "structural": ("eulerian", "structural", "pi_ratio", "properties"),
    "roots": ("roots",),
    "integral": ("integral",),
    "all": ("eulerian", "structural", "pi_ratio", "properties", "roots", "integral"),
}


def check_caps(suite: str, n_max: int, force: bool = False) -> None:
    """
    Valida n_max contra os limites por suíte.

    Raises:
        UsageError: Suíte desconhecida, n_max < 1, ou limite excedido sem force.
    """
    if suite not in SUITES:
        raise UsageError(f"Suíte desconhecida: {suite!r} (use {', '.join(SUITES)})")
    if n_max < 1:
        raise UsageError(f"n-out-of-range: n_max deve ser >= 1 (recebido {n_max})")
    if force:
        return
    capped = SUITE_CAPS.keys() if suite == "all" else (suite,)
    for name in capped:
        if n_max > SUITE_CAPS[name]:
            raise UsageError(
                f"n-out-of-range: n_max={n_max} excede o limite da suíte {name} ({SUITE_CAPS[name]}); use --force"
            )


def _flatten(groups: List[List[Check]]) -> List[Check]:
    return [c for group in groups for c in group]


def _tally(checks: List[Check]) -> str:
    statuses = [c.status for c in checks]
    return f"{statuses.count('pass')} pass, {statuses.count('fail')} fail, {statuses.count('info')} info"


@task(name="eulerian_suite", retries=PREFECT_CONFIG["retries"], retry_delay_seconds=PREFECT_CONFIG["retry_delay_seconds"])
def task_eulerian(n_max: int) -> List[Check]:
    """
    Task para as identidades eulerianas e os números de Bernoulli/Euler.

    Args:
        n_max: Maior n das somas eulerianas.

    Returns:
        Lista de Checks.
    """
    logger = get_run_logger()
    logger.info("Verificando identidades eulerianas...")
    checks = eulerian_suite(n_max)
    logger.info(f"Suíte euleriana: {_tally(checks)}")
    return checks


@task(name="structural_suite", retries=PREFECT_CONFIG["retries"], retry_delay_seconds=PREFECT_CONFIG["retry_delay_seconds"])
def task_structural(n_max: int, workers: int) -> List[Check]:
    """Task para as verificações estruturais exatas, um item por n."""
    logger = get_run_logger()
    logger.info(f"Verificações estruturais para n = 1..{n_max}...")
    groups = Parallel(n_jobs=workers)(delayed(structural_checks)(n) for n in range(1, n_max + 1))
    checks = _flatten(groups)
    logger.info(f"Suíte estrutural: {_tally(checks)}")
    return checks


@task(name="pi_ratio_suite", retries=PREFECT_CONFIG["retries"], retry_delay_seconds=PREFECT_CONFIG["retry_delay_seconds"])
def task_pi_ratio(n_max: int) -> List[Check]:
    """Task para os múltiplos racionais de pi."""
    logger = get_run_logger()
    checks = pi_ratio_suite(n_max)
    logger.info(f"Suíte de múltiplos de pi: {_tally(checks)}")
    return checks


@task(name="properties_suite", retries=PREFECT_CONFIG["retries"], retry_delay_seconds=PREFECT_CONFIG["retry_delay_seconds"])
def task_properties(n_max: int, workers: int) -> List[Check]:
    """Task para cota uniforme na grade, paridade e identidades de polilogaritmo."""
    logger = get_run_logger()
    groups = Parallel(n_jobs=workers)(delayed(property_checks)(n) for n in range(1, n_max + 1))
    checks = _flatten(groups)
    checks.extend(
        polylog_checks(
            PROPERTY_CONFIG["polylog_max_m"],
            PROPERTY_CONFIG["polylog_points"],
            PROPERTY_CONFIG["polylog_precision_bits"],
        )
    )
    logger.info(f"Suíte de propriedades: {_tally(checks)}")
    return checks


@task(name="roots_suite", retries=PREFECT_CONFIG["retries"], retry_delay_seconds=PREFECT_CONFIG["retry_delay_seconds"])
def task_roots(n_max: int, workers: int) -> List[Check]:
    """
    Task para isolamento de raízes: isola cada (família, n) em paralelo e monta
    as verificações de contagem, entrelaçamento e cotas.
    """
    logger = get_run_logger()
    items = [(family, n) for family in Family for n in range(2, n_max + 1)]
    if not items:
        logger.info("Suíte de raízes: nada a verificar para n_max < 2")
        return []
    logger.info(f"Isolando raízes de {len(items)} polinômios adaptados...")
    isolated = Parallel(n_jobs=workers)(delayed(root_report)(family, n) for family, n in items)
    reports = {(family.value, n): report for (family, n), report in zip(items, isolated)}
    checks = root_checks(reports, n_max)
    logger.info(f"Suíte de raízes: {_tally(checks)}")
    return checks


@task(name="integral_suite", retries=PREFECT_CONFIG["retries"], retry_delay_seconds=PREFECT_CONFIG["retry_delay_seconds"])
def task_integral(n_max: int, digits: int, workers: int) -> List[Check]:
    """Task para as integrais (referências, duas rotas de quadratura)."""
    logger = get_run_logger()
    logger.info(f"Quadraturas para n = 1..{n_max} com {digits} dígitos...")
    checks = reference_checks(n_max, digits)
    groups = Parallel(n_jobs=workers)(delayed(integral_checks)(n, digits) for n in range(1, n_max + 1))
    checks.extend(_flatten(groups))
    logger.info(f"Suíte de integrais: {_tally(checks)}")
    return checks


@flow(name=PREFECT_CONFIG["flow_name"], log_prints=True)
def verification_flow(
    suite: str = "all",
    n_max: int = 2,
    digits: Optional[int] = None,
    force: bool = False,
    workers: Optional[int] = None,
    with_timestamp: bool = True,
) -> ReportDocument:
    """
    Flow principal: executa as tarefas da suíte escolhida e monta o relatório.

    Args:
        suite: "structural", "roots", "integral" ou "all".
        n_max: Maior n verificado.
        digits: Dígitos decimais alvo da quadratura.
        force: Ignora os limites por suíte.
        workers: Processos do joblib (-1 = todos os processadores).
        with_timestamp: Inclui o carimbo de tempo nos metadados.

    Returns:
        ReportDocument com uma seção por tarefa executada.
    """
    logger = get_run_logger()
    check_caps(suite, n_max, force)
    if digits is None:
        digits = QUADRATURE_CONFIG["target_digits"]
    if workers is None:
        workers = PIPELINE_CONFIG["default_workers"]

    logger.info("=" * 60)
    logger.info("INICIANDO VERIFICAÇÃO XI/LAMBDA")
    logger.info("=" * 60)
    logger.info(f"Suíte: {suite} | n_max: {n_max} | dígitos: {digits} | workers: {workers}")

    prebuild_tables(max(EULERIAN_CONFIG["table_max_m"], 2 * n_max + 2))
    doc = new_report(with_timestamp=with_timestamp, suite=suite, n_max=n_max, digits=digits)

    runners: Dict[str, object] = {
        "eulerian": lambda: task_eulerian(n_max),
        "structural": lambda: task_structural(n_max, workers),
        "pi_ratio": lambda: task_pi_ratio(n_max),
        "properties": lambda: task_properties(n_max, workers),
        "roots": lambda: task_roots(n_max, workers),
        "integral": lambda: task_integral(n_max, digits, workers),
    }
    for name in SUITE_TASKS[suite]:
        doc.add_suite(name, runners[name]())

    tally = doc.tally()
    logger.info("=" * 60)
    logger.info(f"VERIFICAÇÃO CONCLUÍDA: {tally['pass']} pass, {tally['fail']} fail, {tally['info']} info")
    logger.info("=" * 60)
    return doc
