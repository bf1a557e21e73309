"""
gamma_calculus - Γ 미적분 모듈

Γ₁/Γ₂ 를 점별 정의와 V-평균 닫힌 형태로 계산하고 적분형 BE(c) 를 검증합니다.

주요 기능:
- gamma1_pointwise / gamma2_pointwise / gamma1_mean / gamma2_mean
- one_step_commutation_residual, product_rule_sides, chain_rule_counterexample
- be_ratio_minimum, integrated_be_check

사용법:
    from modules.gamma_calculus import integrated_be_check

    report = integrated_be_check(pmf_poisson(2.0), c=0.5, trials=200, seed=1)
"""

from modules.gamma_calculus.gamma import (
    gamma1_pointwise,
    gamma2_pointwise,
    gamma1_mean,
    gamma2_mean,
    one_step_commutation_residual,
    product_rule_sides,
    chain_rule_counterexample,
    INTERIOR_MARGIN,
)

from modules.gamma_calculus.be_check import (
    random_interior_function,
    be_ratio_minimum,
    integrated_be_check,
    BE_REL_TOL,
)

__all__ = [
    "gamma1_pointwise",
    "gamma2_pointwise",
    "gamma1_mean",
    "gamma2_mean",
    "one_step_commutation_residual",
    "product_rule_sides",
    "chain_rule_counterexample",
    "INTERIOR_MARGIN",
    "random_interior_function",
    "be_ratio_minimum",
    "integrated_be_check",
    "BE_REL_TOL",
]
