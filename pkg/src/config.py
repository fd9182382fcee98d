"""
Arquivo de configuração do projeto Xi-Lambda Workbench.
Contém constantes, caminhos e parâmetros utilizados em todas as suítes de verificação.
"""

from fractions import Fraction
from pathlib import Path

# Diretórios do projeto
PROJECT_ROOT = Path(__file__).parent.parent
OUTPUTS_DIR = PROJECT_ROOT / "outputs"
REPORT_OUTPUT_DIR = OUTPUTS_DIR / "reports"

TOOL_VERSION = "1.0.0"

# Limites de n por suíte (ultrapassáveis com --force)
SUITE_CAPS = {
    "structural": 12,
    "roots": 10,
    "integral": 6,
}

# Limite rígido para construção de polinômios
GEN_MAX_N = 64

# Configurações dos números de Euler/Bernoulli/Eulerianos
EULERIAN_CONFIG = {
    "table_max_m": 20,  # simetria e somas de linha
    "worpitzky_max_m": 10,
    "worpitzky_max_k": 20,
    "brute_force_a_max_m": 7,
    "brute_force_b_max_m": 5,
    "dual_algorithm_max_n": 16,
}

# Configurações de isolamento de raízes
ROOTS_CONFIG = {
    "default_width": Fraction(1, 2**80),
    "min_refinement_width": Fraction(1, 2**512),
    "endpoint_shift": Fraction(1, 2**64),
    "max_endpoint_retries": 8,
    "bound_sequence_max_n": 30,
    "bound_precision_bits": 128,
}

# Configurações de quadratura
QUADRATURE_CONFIG = {
    "target_digits": 15,  # precisão relativa interna (~1e-15)
    "guard_bits": 32,
    "initial_step": Fraction(1, 2),
    "max_halvings": 12,
    "acceptance_tolerance": 1e-10,
    "dual_route_max_n": 5,
    "hyperbolic_max_degree": 10,  # tanh-sinh do mpmath na rota hiperbólica
}

# Configurações das verificações de propriedades
PROPERTY_CONFIG = {
    "grid_points": 1024,
    "polylog_max_m": 8,
    "polylog_points": [Fraction(1, 3), Fraction(1, 2)],
    "polylog_precision_bits": 64,
    "random_seed": 42,
    "evenness_samples": 20,
    "sample_points_above_one": [Fraction(3, 2), Fraction(2), Fraction(5)],
}

# Configurações de relatório
REPORT_CONFIG = {
    "decimal_digits": 30,
    "json_indent": 2,
}

# Configurações do Prefect
PREFECT_CONFIG = {
    "flow_name": "xi_lambda_verification",
    "retries": 0,
    "retry_delay_seconds": 10,
}

# Configurações de paralelismo (convenção joblib: -1 = todos os processadores)
PIPELINE_CONFIG = {
    "default_workers": -1,
}
