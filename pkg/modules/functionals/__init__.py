"""
functionals - 엔트로피 범함수 / 변형 LSI 모듈

이 모듈은 Ent, var, 상대 엔트로피와 새 변형 LSI 의 우변들, 최적 상수 추정을 제공합니다.

주요 기능:
- entropy / variance / relative_entropy / size_bias_transform / scaled_fisher
- mlsi_rhs_new / mlsi_rhs_diff / mlsi_rhs_caputo / mlsi_rhs_bl / phi_transform_entropy
- lsi_verify (LsiReport), restated_lsi_sides, poincare_limit_defect
- poincare_constant / lsi_constant_estimate
- 흐름 위 Θ, ψ 와 도함수

사용법:
    from modules.functionals import lsi_verify, poincare_constant

    report = lsi_verify(V, f)
    C = poincare_constant(V)
"""

from modules.functionals.entropy import (
    window_weights,
    entropy,
    variance,
    relative_entropy,
    size_bias_transform,
    scaled_fisher,
)

from modules.functionals.mlsi import (
    LsiReport,
    mlsi_rhs_new,
    mlsi_rhs_diff,
    mlsi_rhs_caputo,
    mlsi_rhs_bl,
    phi_transform_entropy,
    entropy_gradient,
    mlsi_rhs_new_gradient,
    log_ratio_and_gradient,
    restated_lsi_sides,
    lsi_verify,
    poincare_limit_defect,
    LSI_REL_TOL,
)

from modules.functionals.constants import (
    symmetrized_generator,
    poincare_constant,
    lsi_constant_estimate,
    poincare_inequality_check,
)

from modules.functionals.entropy_flow import (
    theta,
    theta_prime,
    psi,
    psi_prime,
    psi_prime_terms,
    flow_derivatives,
    flow_comparison,
)

__all__ = [
    "window_weights",
    "entropy",
    "variance",
    "relative_entropy",
    "size_bias_transform",
    "scaled_fisher",
    "LsiReport",
    "mlsi_rhs_new",
    "mlsi_rhs_diff",
    "mlsi_rhs_caputo",
    "mlsi_rhs_bl",
    "phi_transform_entropy",
    "entropy_gradient",
    "mlsi_rhs_new_gradient",
    "log_ratio_and_gradient",
    "restated_lsi_sides",
    "lsi_verify",
    "poincare_limit_defect",
    "LSI_REL_TOL",
    "symmetrized_generator",
    "poincare_constant",
    "lsi_constant_estimate",
    "poincare_inequality_check",
    "theta",
    "theta_prime",
    "psi",
    "psi_prime",
    "psi_prime_terms",
    "flow_derivatives",
    "flow_comparison",
]
