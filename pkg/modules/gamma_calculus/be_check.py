"""
be_check.py - 적분형 BE(c) 검증 모듈

Σ V Γ₂(f,f) ≥ c Σ V Γ₁(f,f) 를 무작위 내부 지지 함수들과
비율 최소화 후보로 검사합니다.

주요 기능:
- random_interior_function: 유계 무작위 보행의 지수 (상단 평탄화)
- be_ratio_minimum: 내부 지지 f 위 ΣVΓ₂/ΣVΓ₁ 최솟값과 최소화 함수
- integrated_be_check: 시행별 여유(margin) 보고서

사용법:
    from modules.gamma_calculus.be_check import integrated_be_check

    report = integrated_be_check(pmf_poisson(2.0), c=0.5, trials=200, seed=7)
    print(report["passed"], report["worst_margin"])
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from config import settings
from exceptions import NumericError, ShapeError
from logger import log_execution_time, logger

from modules.curvature.profile import require_full_support
from modules.gamma_calculus.gamma import INTERIOR_MARGIN, gamma1_mean, gamma2_mean
from modules.pmf.distributions import TruncatedPmf
from modules.semigroup.grid_function import make_interior, random_walk_values


BE_REL_TOL = 1e-10


def random_interior_function(rng: np.random.Generator, size: int) -> np.ndarray:
    """exp(유계 무작위 보행), 상단 두 사이트에서 평탄"""
    walk = make_interior(random_walk_values(rng, size), INTERIOR_MARGIN)
    return np.exp(walk)


def be_ratio_minimum(V: TruncatedPmf) -> dict:
    """
    내부 지지 f 에 대한 min ΣVΓ₂(f,f) / ΣVΓ₁(f,f)

    차분 좌표 δ(k) = Δf(k) (k = 0..N−3) 를 √V(k) 로 척도화하면
    L_V f = G δ 이고 문제는 삼중대각 행렬
        M[k,k] = 1 + V(k)/V(k+1),  M[k,k+1] = −√(V(k)/V(k+1))
    의 최소 고윳값이 됩니다.

    Returns:
        dict: ratio (최소 비율), f (정규화된 최소화 함수, ΣVΓ₁ = 1)

    Raises:
        ShapeError: N < 3
        NumericError: 고윳값 계산 실패
    """
    require_full_support(V)
    if V.N < 3:
        raise ShapeError(f"내부 지지 함수 공간이 비어 있습니다: N={V.N}")

    v = V.values
    k = V.N - 2
    head = v[:k]
    diag = 1.0 + head / v[1:k + 1]
    off = -np.sqrt(head[:-1] / v[1:k])

    try:
        w, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, 0))
    except LinAlgError as e:
        raise NumericError(f"{V.label}: BE 비율 고윳값 계산 실패 ({e})") from e

    delta = vecs[:, 0] / np.sqrt(head)
    f = np.concatenate(([0.0], np.cumsum(delta)))
    f = np.concatenate((f, np.full(INTERIOR_MARGIN, f[-1])))
    return {"ratio": float(w[0]), "f": f}


def _trial_margin(V: TruncatedPmf, c: float, f: np.ndarray) -> tuple[float, float, float]:
    """(margin, tolerance, Γ₁ 합)"""
    g2 = gamma2_mean(V, f, f)
    g1 = gamma1_mean(V, f, f)
    margin = g2 - c * g1
    tol = BE_REL_TOL * max(1.0, abs(g2), abs(c * g1))
    return margin, tol, g1


@log_execution_time
def integrated_be_check(
    V: TruncatedPmf,
    c: float,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
) -> dict:
    """
    적분형 BE(c) 무작위 검증

    시행: 상수 함수 1개, 무작위 내부 지지 함수 trials 개, 비율 최소화 함수 1개.
    시행별 RNG 는 SeedSequence(seed).spawn 으로 독립 생성합니다.

    Args:
        V: 완전 지지 pmf
        c: 검사할 곡률 상수
        trials: 무작위 시행 수 (기본 settings.BE_TRIALS)
        seed: 시드 (기본 settings.DEFAULT_SEED)

    Returns:
        dict: tag, c, trials, violations, worst_margin, worst_trial,
              extremal_ratio, passed
    """
    require_full_support(V)
    trials = settings.BE_TRIALS if trials is None else trials
    seed = settings.DEFAULT_SEED if seed is None else seed
    size = V.N + 1

    streams = np.random.SeedSequence(seed).spawn(trials)

    def _run(ss: np.random.SeedSequence):
        f = random_interior_function(np.random.default_rng(ss), size)
        return _trial_margin(V, c, f)

    with ThreadPoolExecutor(max_workers=settings.MAX_WORKERS) as executor:
        results = list(executor.map(_run, streams))

    # 상수 시행: 0 ≥ 0
    results.insert(0, _trial_margin(V, c, np.ones(size)))

    extremal = be_ratio_minimum(V)
    results.append(_trial_margin(V, c, extremal["f"]))

    violations = []
    worst_margin, worst_trial = np.inf, -1
    for i, (margin, tol, g1) in enumerate(results):
        # Γ₁ 합으로 나눈 여유로 비교 (함수 척도 무관)
        scaled = margin / g1 if g1 > 0 else margin
        if scaled < worst_margin:
            worst_margin, worst_trial = scaled, i
        if margin < -tol:
            violations.append({"trial": i, "margin": margin, "tolerance": tol})

    passed = not violations
    if passed:
        logger.info(f"✅ BE({c:.6g}) {V.label}: 위반 없음 ({len(results)}회 시행)")
    else:
        logger.warning(f"⚠️ BE({c:.6g}) {V.label}: 위반 {len(violations)}건")

    return {
        "tag": "eq:dbec",
        "label": V.label,
        "c": float(c),
        "trials": len(results),
        "violations": violations,
        "worst_margin": float(worst_margin),
        "worst_trial": int(worst_trial),
        "extremal_ratio": extremal["ratio"],
        "passed": passed,
    }
