"""
transforms.py - pmf 변환 모듈

합성곱, 포아송 섭동(V ⋆ Π_ε), 무작위 ULC pmf 표본을 제공합니다.

사용법:
    from modules.pmf.transforms import pmf_convolve, pmf_perturb

    W = pmf_convolve(pmf_poisson(1.0), pmf_poisson(2.0))
    V_eps = pmf_perturb(pmf_bernoulli_sum([0.5]), 0.01)
"""

import math

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from config import settings
from exceptions import InvalidParameterError, NotFullSupportError, WindowError
from logger import logger

from modules.pmf.distributions import (
    TruncatedPmf,
    pmf_bernoulli_sum,
    pmf_poisson,
)


def pmf_convolve(U: TruncatedPmf, V: TruncatedPmf) -> TruncatedPmf:
    """
    두 pmf 의 합성곱 U ⋆ V (0..N_U+N_V 윈도우)

    해석적 계열은 extend() 로 윈도우 끝까지 정확히 다시 계산하므로
    윈도우 상단 값도 잘린 입력 때문에 작아지지 않습니다.

    Args:
        U, V: 유효한 TruncatedPmf

    Returns:
        TruncatedPmf (tail_mass ≤ tail_U + tail_V)
    """
    M = U.N + V.N

    def _extender(size: int) -> np.ndarray:
        return np.convolve(U.extend(size), V.extend(size))[: size + 1]

    values = _extender(M)

    # 윈도우 밖 질량은 합집합 상한 tail_U + tail_V 로 막힌다
    bound = U.tail_mass + V.tail_mass
    tail = min(max(0.0, 1.0 - math.fsum(values)), bound)

    has_extender = U.extender is not None or V.extender is not None
    return TruncatedPmf(
        values=values,
        tail_mass=tail,
        label=f"{U.label}*{V.label}",
        eps_tail=U.eps_tail + V.eps_tail,
        extender=_extender if has_extender else None,
    )


def pmf_perturb(V: TruncatedPmf, eps: float) -> TruncatedPmf:
    """
    포아송 섭동 V_ε = V ⋆ Π_ε

    유한 지지 V 에도 윈도우 전체에서 양수인 pmf 를 만들어
    완전 지지 가정이 필요한 정리를 적용할 수 있게 합니다.
    달성된 곡률은 curvature 모듈로 직접 확인하세요.
    """
    eps = float(eps)
    if not math.isfinite(eps) or eps <= 0.0:
        raise InvalidParameterError(f"섭동 크기는 양수여야 합니다: {eps}")

    perturbed = pmf_convolve(V, pmf_poisson(eps, eps_tail=settings.EPS_TAIL))
    logger.debug(f"섭동 완료: {V.label} ⋆ Π_{eps:g} → N={perturbed.N}")
    return perturbed


def sample_ulc_pmf(rng: np.random.Generator, max_bernoulli: int = 5) -> TruncatedPmf:
    """
    무작위 ULC pmf 표본: Π_λ ⋆ (베르누이 합)

    ULC 는 합성곱에 닫혀 있으므로 결과도 ULC 이고 완전 지지입니다.

    Args:
        rng: numpy Generator
        max_bernoulli: 베르누이 항 최대 개수

    Returns:
        TruncatedPmf
    """
    lam = float(rng.uniform(0.2, 5.0))
    k = int(rng.integers(0, max_bernoulli + 1))
    base = pmf_poisson(lam)
    if k == 0:
        return base
    probs = rng.uniform(0.05, 0.95, size=k)
    return pmf_convolve(base, pmf_bernoulli_sum(probs))


def density_ratio(p: TruncatedPmf, V: TruncatedPmf) -> np.ndarray:
    """
    f = p / V (V 의 윈도우 위)

    p 윈도우가 더 짧으면 extend() 로 맞춥니다. V 는 완전 지지여야 합니다.

    Example:
        >>> f = density_ratio(pmf_poisson(1.0), pmf_poisson(2.0))
        >>> f[0]    # e^{-1} / e^{-2} ≈ e
    """
    if p.N > V.N:
        raise WindowError(
            f"p 윈도우 {p.N} 가 V 윈도우 {V.N} 보다 큽니다 (V 의 eps_tail 을 줄이세요)",
            {"p_N": p.N, "V_N": V.N},
        )
    if not V.full_support:
        raise NotFullSupportError(f"{V.label}: 밀도비에는 완전 지지 기준이 필요합니다")
    return p.extend(V.N) / V.values
