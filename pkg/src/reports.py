"""
Módulo de relatórios das verificações.
Define o registro de cada verificação (Check), o documento de relatório
(ReportDocument) e os escritores JSON/CSV.
"""

import json
import logging
import sys
from dataclasses import dataclass, field
from datetime import datetime
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from src.config import REPORT_CONFIG, TOOL_VERSION
from src.exact_arith import Number, rational_str

logger = logging.getLogger(__name__)

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_INFO = "info"


@dataclass(frozen=True)
class Check:
    """Resultado de uma verificação individual (por nome, n e família)."""

    suite: str
    name: str
    status: str
    n: Optional[int] = None
    family: Optional[str] = None
    exact_value: Optional[str] = None
    numeric_value: Optional[str] = None
    error_estimate: Optional[str] = None
    detail: Optional[str] = None

    def to_dict(self) -> Dict[str, object]:
        data = {"name": self.name, "status": self.status}
        for key in ("n", "family", "exact_value", "numeric_value", "error_estimate", "detail"):
            value = getattr(self, key)
            if value is not None:
                data[key] = value
        return data


def make_check(
    suite: str,
    name: str,
    passed: bool,
    n: Optional[int] = None,
    family: Optional[str] = None,
    exact: Optional[Number] = None,
    numeric: Optional[str] = None,
    error: Optional[str] = None,
    detail: Optional[str] = None,
    info: bool = False,
) -> Check:
    """
    Cria um Check a partir de um booleano.

    Args:
        suite: Nome da suíte.
        name: Nome da verificação.
        passed: Resultado da verificação.
        n: Índice n do polinômio, quando aplicável.
        family: Família ("Xi", "Lambda", "A", "B"), quando aplicável.
        exact: Valor racional exato (renderizado como "p/q").
        numeric: Valor decimal já renderizado.
        error: Estimativa de erro já renderizada.
        detail: Texto livre.
        info: Se True, o status é "info" (tendências assintóticas nunca falham).

    Returns:
        Check correspondente.
    """
    if info:
        status = STATUS_INFO
    else:
        status = STATUS_PASS if passed else STATUS_FAIL
    return Check(
        suite=suite,
        name=name,
        status=status,
        n=n,
        family=family,
        exact_value=rational_str(exact) if exact is not None else None,
        numeric_value=numeric,
        error_estimate=error,
        detail=detail,
    )


@dataclass
class ReportDocument:
    """Documento de relatório: metadados mais grupos nomeados de verificações."""

    tool_version: str = TOOL_VERSION
    timestamp: Optional[str] = None
    suites: Dict[str, List[Check]] = field(default_factory=dict)
    parameters: Dict[str, object] = field(default_factory=dict)

    def add_suite(self, name: str, checks: List[Check]) -> None:
        self.suites.setdefault(name, []).extend(checks)

    @property
    def has_failures(self) -> bool:
        return any(c.status == STATUS_FAIL for checks in self.suites.values() for c in checks)

    def tally(self) -> Dict[str, int]:
        counts = {STATUS_PASS: 0, STATUS_FAIL: 0, STATUS_INFO: 0}
        for checks in self.suites.values():
            for c in checks:
                counts[c.status] += 1
        return counts

    def to_dict(self) -> Dict[str, object]:
        meta: Dict[str, object] = {"tool_version": self.tool_version}
        if self.timestamp is not None:
            meta["timestamp"] = self.timestamp
        if self.parameters:
            meta["parameters"] = self.parameters
        meta["summary"] = self.tally()
        return {
            "meta": meta,
            "suites": [
                {"name": name, "checks": [c.to_dict() for c in checks]}
                for name, checks in self.suites.items()
            ],
        }


def new_report(with_timestamp: bool = True, **parameters) -> ReportDocument:
    """Cria um ReportDocument vazio (com ou sem carimbo de tempo)."""
    timestamp = datetime.now().isoformat(timespec="seconds") if with_timestamp else None
    return ReportDocument(timestamp=timestamp, parameters=dict(parameters))


def to_json(data: Dict[str, object]) -> str:
    """Serialização JSON determinística."""
    return json.dumps(data, indent=REPORT_CONFIG["json_indent"], sort_keys=True, ensure_ascii=False) + "\n"


def write_text(text: str, output_path: Optional[Path] = None, stream=None) -> None:
    """
    Escreve texto em arquivo ou no stream (stdout por padrão).

    Args:
        text: Conteúdo a escrever.
        output_path: Caminho do arquivo. Se None, escreve no stream.
        stream: Stream de saída quando não há arquivo.
    """
    if output_path is None:
        if stream is None:
            stream = sys.stdout
        stream.write(text)
        return

    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    try:
        output_path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise IOError(f"Erro ao salvar arquivo: {e}")
    logger.info("Arquivo salvo: %s", output_path)


def write_report(doc: ReportDocument, output_path: Optional[Path] = None, stream=None) -> None:
    """Escreve o relatório em JSON."""
    write_text(to_json(doc.to_dict()), output_path, stream)


def coefficients_frame(coeffs: List[Number]) -> pd.DataFrame:
    """
    Tabela de coeficientes {t, numerator, denominator} (inteiros como texto decimal).

    Args:
        coeffs: Coeficientes racionais indexados por t.

    Returns:
        DataFrame com uma linha por coeficiente.
    """
    rows = []
    for t, c in enumerate(coeffs):
        c = Fraction(c)
        rows.append({"t": t, "numerator": str(c.numerator), "denominator": str(c.denominator)})
    return pd.DataFrame(rows, columns=["t", "numerator", "denominator"])


def coefficients_csv(coeffs: List[Number]) -> str:
    """CSV dos coeficientes (cabeçalho t,numerator,denominator)."""
    return coefficients_frame(coeffs).to_csv(index=False, lineterminator="\n")
