"""
curvature - 곡률 프로파일 모듈

이 모듈은 E(x) 를 계산하고 c-로그-오목성, ULC 등 구조적 성질을 확인합니다.

주요 기능:
- curvature_profile / c_log_concave_constant / curvature_report
- is_ulc / ulc_c_bound / mean_bound_check / curvature_increasing_check
- convolution_conjecture_probe (리포트 전용)

사용법:
    from modules.curvature import curvature_report

    report = curvature_report(pmf_poisson(2.0))
    print(report.c_inf)
"""

# 프로파일
from modules.curvature.profile import (
    CurvatureReport,
    curvature_profile,
    c_log_concave_constant,
    curvature_report,
    telescoping_residual,
    require_full_support,
)

# 구조 검사
from modules.curvature.structure import (
    is_ulc,
    ulc_c_bound,
    mean_bound_check,
    curvature_increasing_check,
    convolution_conjecture_probe,
)


__all__ = [
    "CurvatureReport",
    "curvature_profile",
    "c_log_concave_constant",
    "curvature_report",
    "telescoping_residual",
    "require_full_support",
    "is_ulc",
    "ulc_c_bound",
    "mean_bound_check",
    "curvature_increasing_check",
    "convolution_conjecture_probe",
]
