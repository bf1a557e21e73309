"""
multidim - Z₊^d 확장 모듈

상자 위 pmf, 혼합 곡률 행렬 E^sym 인증, d차원 Γ 합과 적분형 BE(c) 검증을 제공합니다.

주요 기능:
- GridPmfD / GridFunctionD / product_pmf
- eeij / esym_matrix / esym_field / esym_psd_certify
- apply_L_d / gamma_sums_d / commutation_residual_d / logsob_gap_term
- be_ratio_minimum_d / integrated_be_check_d / logsob_counterexample_probe

사용법:
    from modules.multidim import product_pmf, esym_psd_certify

    V = product_pmf([pmf_poisson(2.0), pmf_poisson(4.0)])
    print(esym_psd_certify(V, 0.25)["certified"])
"""

from modules.multidim.grid import (
    GridPmfD,
    GridFunctionD,
    FunctionLikeD,
    as_values_d,
    require_full_support_d,
    product_pmf,
    shift_down,
    forward_diff,
    backward_diff,
    make_interior_d,
    is_interior_d,
    random_interior_function_d,
    INTERIOR_MARGIN_D,
)

from modules.multidim.curvature_d import (
    eeij,
    esym_matrix,
    esym_field,
    esym_psd_certify,
    PSD_TOL,
)

from modules.multidim.gamma_d import (
    apply_L_d,
    gamma1_pointwise_d,
    gamma_sums_d,
    commutation_residual_d,
    logsob_gap_term,
)

from modules.multidim.be_check_d import (
    be_ratio_minimum_d,
    integrated_be_check_d,
    logsob_counterexample_probe,
    BE_REL_TOL_D,
)

__all__ = [
    "GridPmfD",
    "GridFunctionD",
    "FunctionLikeD",
    "as_values_d",
    "require_full_support_d",
    "product_pmf",
    "shift_down",
    "forward_diff",
    "backward_diff",
    "make_interior_d",
    "is_interior_d",
    "random_interior_function_d",
    "INTERIOR_MARGIN_D",
    "eeij",
    "esym_matrix",
    "esym_field",
    "esym_psd_certify",
    "PSD_TOL",
    "apply_L_d",
    "gamma1_pointwise_d",
    "gamma_sums_d",
    "commutation_residual_d",
    "logsob_gap_term",
    "be_ratio_minimum_d",
    "integrated_be_check_d",
    "logsob_counterexample_probe",
    "BE_REL_TOL_D",
]
