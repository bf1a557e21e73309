"""
pmf - 절단 확률질량함수 모듈

이 모듈은 Z₊ 위의 확률질량함수를 {0,…,N} 윈도우로 절단해 생성/검증/변환합니다.

주요 기능:
- 포아송, 베르누이 합, 음이항, 기하, 가중치 pmf
- 합성곱과 포아송 섭동
- 무작위 ULC 표본

사용법:
    from modules.pmf import pmf_poisson, pmf_convolve

    V = pmf_convolve(pmf_poisson(1.0), pmf_poisson(2.0))
"""

# 타입 / 생성자
from modules.pmf.distributions import (
    TruncatedPmf,
    pmf_poisson,
    pmf_bernoulli_sum,
    pmf_negative_binomial,
    pmf_geometric,
    pmf_from_weights,
    NORMALIZATION_TOL,
)

# 변환
from modules.pmf.transforms import (
    pmf_convolve,
    pmf_perturb,
    sample_ulc_pmf,
    density_ratio,
)


__all__ = [
    "TruncatedPmf",
    "pmf_poisson",
    "pmf_bernoulli_sum",
    "pmf_negative_binomial",
    "pmf_geometric",
    "pmf_from_weights",
    "pmf_convolve",
    "pmf_perturb",
    "sample_ulc_pmf",
    "density_ratio",
    "NORMALIZATION_TOL",
]
