"""
evolution.py - 반군 진화 모듈

균일화(uniformization)로 p_t = p exp(tQ), f_t = exp(tQ) f 를 계산합니다.
Q 는 유한 윈도우에서 유계이므로 P = I + Q/Λ 의 거듭제곱 급수를
포아송(Λt) 가중치로 합하고, 꼬리 상한으로 항 수를 정합니다.

주요 기능:
- evolve_pmf: dp/dt = L_V* p
- evolve_function: df/dt = L_V f
- entropy_trace: Θ(t) = Σ V f_t log f_t 의 단조 감소 확인

사용법:
    from modules.semigroup.evolution import evolve_pmf

    p_t = evolve_pmf(V, pmf_from_weights([1.0]), t=5.0)
"""

import math
from typing import Optional, Sequence

import numpy as np
from scipy import stats

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from config import settings
from exceptions import AccuracyError, InvalidParameterError, ShapeError
from logger import logger, log_execution_time

from modules.pmf.distributions import TruncatedPmf
from modules.semigroup.generator import GeneratorMatrix, build_generator
from modules.semigroup.grid_function import FunctionLike, GridFunction, as_values, require_positive


# ===== 상수 정의 =====
SERIES_TAIL_FRACTION = 0.1   # 급수 절단 꼬리 ≤ tol × 이 값
STEP_DOUBLING_FACTOR = 2.0   # 반 스텝 두 번 vs 한 스텝 허용 배수


def _series_length(rate_time: float, bound: float) -> int:
    """포아송(rate_time) 꼬리가 bound 이하가 되는 항 수"""
    K = int(stats.poisson.isf(bound, rate_time))
    K = max(K, 0)
    while stats.poisson.sf(K, rate_time) > bound:
        K += 1
    return K


def _uniformized(Q: GeneratorMatrix, vec: np.ndarray, t: float, tol: float, left: bool) -> np.ndarray:
    """Σ_k w_k P^k 를 vec 에 적용 (left=True 면 행벡터)"""
    rate = Q.uniformization_rate
    if t == 0.0 or rate == 0.0:
        return vec.copy()

    rate_time = rate * t
    K = _series_length(rate_time, tol * SERIES_TAIL_FRACTION)
    weights = stats.poisson.pmf(np.arange(K + 1), rate_time)

    step = Q.apply_left if left else Q.apply
    term = vec.astype(float).copy()
    acc = weights[0] * term
    for k in range(1, K + 1):
        term = term + step(term) / rate
        acc += weights[k] * term

    # 잘린 가중치로 정규화하면 질량/상수가 정확히 보존된다
    return acc / math.fsum(weights)


def _evolve(Q: GeneratorMatrix, vec: np.ndarray, t: float, tol: float, left: bool, self_check: bool) -> np.ndarray:
    if not math.isfinite(t) or t < 0.0:
        raise InvalidParameterError(f"시간 t 는 0 이상이어야 합니다: {t}")
    if not tol > 0.0:
        raise InvalidParameterError(f"tol 은 양수여야 합니다: {tol}")

    full = _uniformized(Q, vec, t, tol, left)
    if self_check and t > 0.0:
        half = _uniformized(Q, vec, 0.5 * t, tol, left)
        doubled = _uniformized(Q, half, 0.5 * t, tol, left)
        scale = max(1.0, float(np.max(np.abs(vec))))
        gap = float(np.max(np.abs(full - doubled)))
        if gap > STEP_DOUBLING_FACTOR * tol * scale:
            raise AccuracyError(
                f"반 스텝 검사 실패: |full − half∘half| = {gap:.3e}",
                {"t": t, "tol": tol, "gap": gap, "rate": Q.uniformization_rate},
            )
    return full


@log_execution_time
def evolve_pmf(
    V: TruncatedPmf,
    p0: TruncatedPmf,
    t: float,
    tol: Optional[float] = None,
    self_check: bool = True,
) -> TruncatedPmf:
    """
    pmf 진화 p_t = p0 exp(tQ)

    Args:
        V: 기준 pmf (생성자 결정)
        p0: 초기 pmf (윈도우 ≤ V 윈도우, 짧으면 extend() 로 넓히고 꼬리 질량을 다시 잡음)
        t: 시간 ≥ 0
        tol: 허용오차 (기본 settings.INTEGRATOR_TOL)
        self_check: 반 스텝 두 번과 비교

    Returns:
        TruncatedPmf
    """
    tol = settings.INTEGRATOR_TOL if tol is None else tol
    if p0.N > V.N:
        raise ShapeError(f"p0 윈도우 {p0.N} 가 V 윈도우 {V.N} 보다 큽니다")
    Q = build_generator(V)
    start = p0.extend(V.N)
    # 확장으로 윈도우에 들어온 질량만큼 꼬리가 줄어듦
    tail = min(max(0.0, 1.0 - math.fsum(start)), p0.tail_mass)
    values = _evolve(Q, start, float(t), tol, left=True, self_check=self_check)
    values = np.clip(values, 0.0, None)

    return TruncatedPmf(
        values=values,
        tail_mass=tail,
        label=f"{p0.label}@t={t:g}",
        eps_tail=p0.eps_tail,
    )


@log_execution_time
def evolve_function(
    V: TruncatedPmf,
    f0: FunctionLike,
    t: float,
    tol: Optional[float] = None,
    self_check: bool = True,
) -> GridFunction:
    """
    함수 진화 f_t = exp(tQ) f0 (장시간 극한은 상수 Σ V f0 / Σ V)
    """
    tol = settings.INTEGRATOR_TOL if tol is None else tol
    values = as_values(f0, V.N + 1, "f0")
    Q = build_generator(V)
    return GridFunction(_evolve(Q, values, float(t), tol, left=False, self_check=self_check))


def entropy_trace(
    V: TruncatedPmf,
    f0: FunctionLike,
    t_grid: Sequence[float],
    tol: Optional[float] = None,
) -> dict:
    """
    Θ(t) = Σ V f_t log f_t 추적

    Returns:
        {"t": [...], "theta": [...], "nonincreasing": bool, "max_increase": float}
    """
    tol = settings.INTEGRATOR_TOL if tol is None else tol
    f = require_positive(f0, V.N + 1, "f0")
    times = sorted(float(t) for t in t_grid)

    thetas = []
    current, last_t = f, 0.0
    for t in times:
        current = evolve_function(V, current, t - last_t, tol, self_check=False).values
        last_t = t
        thetas.append(math.fsum(V.values * current * np.log(current)))

    increases = np.diff(thetas) if len(thetas) > 1 else np.zeros(0)
    max_increase = float(np.max(increases)) if increases.size else 0.0
    scale = max(1.0, max(abs(x) for x in thetas))
    nonincreasing = max_increase <= 10.0 * tol * scale
    if not nonincreasing:
        logger.warning(f"⚠️ Θ(t) 증가 감지: {max_increase:.3e}")

    return {
        "t": times,
        "theta": thetas,
        "nonincreasing": nonincreasing,
        "max_increase": max_increase,
    }
