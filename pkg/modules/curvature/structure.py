"""
structure.py - ULC / 평균 상한 / 단조성 검사 모듈

주요 기능:
- 초로그오목(ULC) 판정 (로그 영역)
- ULC 에서 얻는 곡률 하한 V(0)/V(1)
- 평균 상한 c ≤ 1/E[V]
- 곡률 단조 증가 검사
- 합성곱 상수 추측 탐색 (리포트 전용)

사용법:
    from modules.curvature.structure import is_ulc, ulc_c_bound

    if is_ulc(V):
        c0 = ulc_c_bound(V)
"""

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from exceptions import DegenerateInputError, PreconditionError
from logger import logger

from modules.curvature.profile import c_log_concave_constant, require_full_support
from modules.pmf.distributions import TruncatedPmf
from modules.pmf.transforms import pmf_convolve, sample_ulc_pmf


# ===== 상수 정의 =====
ULC_REL_TOL = 1e-12
MEAN_BOUND_TOL = 1e-10
INCREASING_TOL = 1e-14


def is_ulc(V: TruncatedPmf) -> bool:
    """
    초로그오목 판정: x·V(x)² ≥ (x+1)·V(x−1)·V(x+1) (내부 x)

    로그 영역에서 비교하고 (x+1)/x 인수를 함께 넣어 언더플로를 피합니다.
    """
    v = V.values
    if v.size < 3:
        return True

    x = np.arange(1, v.size - 1, dtype=float)
    left, mid, right = v[:-2], v[1:-1], v[2:]

    # 우변이 0 이면 자명하게 성립, 중앙이 0 인데 우변이 양수면 실패
    rhs_zero = (left == 0.0) | (right == 0.0)
    if np.any((mid == 0.0) & ~rhs_zero):
        return False

    with np.errstate(divide="ignore"):
        lhs = np.log(x) + 2.0 * np.log(mid)
        rhs = np.log(x + 1.0) + np.log(left) + np.log(right)
    slack = np.where(rhs_zero, 0.0, lhs - rhs)
    return bool(np.all(slack >= -ULC_REL_TOL))


def ulc_c_bound(V: TruncatedPmf) -> float:
    """
    ULC pmf 의 곡률 하한 V(0)/V(1)

    Raises:
        PreconditionError: ULC 가 아닐 때
    """
    if not is_ulc(V):
        raise PreconditionError(f"{V.label}: ULC 가 아니므로 V(0)/V(1) 하한을 쓸 수 없습니다")
    require_full_support(V)
    return float(V.values[0] / V.values[1])


def mean_bound_check(V: TruncatedPmf) -> bool:
    """c ≤ 1/mean + 1e-10 여부"""
    mean = V.mean
    if mean <= 0.0:
        raise DegenerateInputError(f"{V.label}: 평균이 0 입니다")
    return c_log_concave_constant(V) <= 1.0 / mean + MEAN_BOUND_TOL


def curvature_increasing_check(V: TruncatedPmf) -> bool:
    """
    E(x) 비감소 여부

    V(x)²V(x−1) − 2V(x−1)²V(x+1) + V(x+1)V(x)V(x−2) ≥ −1e-14 (x = 1..N−1)
    """
    require_full_support(V)
    v = V.values
    if v.size < 3:
        return True
    padded = np.concatenate(([0.0], v))   # padded[k+1] = V(k), V(−1) = 0
    x = np.arange(1, v.size - 1)
    vm2, vm1, v0, vp1 = padded[x - 1], padded[x], padded[x + 1], padded[x + 2]
    expr = v0 * v0 * vm1 - 2.0 * vm1 * vm1 * vp1 + vp1 * v0 * vm2
    return bool(np.all(expr >= -INCREASING_TOL))


def convolution_conjecture_probe(samples: int, seed: int) -> dict:
    """
    합성곱 곡률 상수 탐색 (리포트 전용, 판정 없음)

    무작위 ULC 쌍 (U, V) 에 대해 c_{U⋆V}·(1/c_U + 1/c_V) 를 모읍니다.

    Args:
        samples: 표본 쌍 수
        seed: 난수 시드

    Returns:
        {"samples", "min_ratio", "mean_ratio", "worst_pair", "exploratory"}
    """
    rng = np.random.default_rng(seed)
    ratios = []
    worst = None
    for _ in range(samples):
        U = sample_ulc_pmf(rng)
        V = sample_ulc_pmf(rng)
        c_u = c_log_concave_constant(U)
        c_v = c_log_concave_constant(V)
        c_uv = c_log_concave_constant(pmf_convolve(U, V))
        ratio = c_uv * (1.0 / c_u + 1.0 / c_v)
        ratios.append(ratio)
        if worst is None or ratio < worst["ratio"]:
            worst = {"U": U.label, "V": V.label, "ratio": ratio}

    logger.info(f"🔎 합성곱 탐색 완료: {samples}쌍, 최소 비율 {min(ratios):.6f}")
    return {
        "samples": samples,
        "min_ratio": float(min(ratios)),
        "mean_ratio": float(np.mean(ratios)),
        "worst_pair": worst,
        "exploratory": True,
    }
