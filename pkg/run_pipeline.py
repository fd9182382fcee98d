"""
Script principal para executar o pipeline Prefect de verificação.

Sem argumentos, executa todas as suítes com n_max = 2 e salva o relatório em
outputs/reports/. Com argumentos, repassa para a linha de comando (gen, verify, roots).
"""

import sys
from pathlib import Path

# Adicionar raiz do projeto ao path
sys.path.insert(0, str(Path(__file__).parent))

from src.cli import main
from src.config import REPORT_OUTPUT_DIR

if __name__ == "__main__":
    if len(sys.argv) > 1:
        sys.exit(main(sys.argv[1:]))

    report_path = REPORT_OUTPUT_DIR / "verification_report.json"
    print("=" * 60, file=sys.stderr)
    print("PIPELINE PREFECT - Xi/Lambda Workbench", file=sys.stderr)
    print("=" * 60, file=sys.stderr)
    print("Suítes: euleriana, estrutural, múltiplos de pi, propriedades, raízes, integrais", file=sys.stderr)
    print("-" * 60, file=sys.stderr)

    code = main(["--out", str(report_path), "verify", "--suite", "all", "--n-max", "2"])

    print("=" * 60, file=sys.stderr)
    print("PIPELINE CONCLUÍDO" if code == 0 else f"PIPELINE TERMINOU COM CÓDIGO {code}", file=sys.stderr)
    print(f"Relatório: {report_path}", file=sys.stderr)
    print("=" * 60, file=sys.stderr)
    sys.exit(code)
