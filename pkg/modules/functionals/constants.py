"""
constants.py - 최적 상수 추정 모듈

푸앵카레 상수(스펙트럼 갭의 역수)와 변형 LSI 상수의 하한을 구합니다.

주요 기능:
- poincare_constant: D^{1/2}(−Q)D^{−1/2} 삼중대각 고윳값
- lsi_constant_estimate: f = e^u 위 Ent/rhs_new 다중 시작 최대화 (L-BFGS-B)
- poincare_inequality_check: 무작위 f 로 var ≤ (1/c)·디리클레 형식 검사

사용법:
    from modules.functionals.constants import poincare_constant, lsi_constant_estimate

    poincare_constant(pmf_poisson(2.0))          # ≈ 2
    lsi_constant_estimate(pmf_poisson(2.0))      # ≥ 2 − 1e-6
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal
from scipy.optimize import minimize

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from config import settings
from exceptions import NumericError, PreconditionError, ShapeError
from logger import log_execution_time, logger

from modules.curvature.profile import c_log_concave_constant, require_full_support
from modules.functionals.entropy import variance, window_weights
from modules.functionals.mlsi import U_CLIP, log_ratio_and_gradient
from modules.pmf.distributions import TruncatedPmf
from modules.semigroup.generator import build_generator
from modules.semigroup.grid_function import random_walk_values


SYMMETRY_TOL = 1e-10
EXP_FAMILY_SLOPES = (-0.5, -0.1, 0.1, 0.5)
POINCARE_REL_TOL = 1e-10


def symmetrized_generator(V: TruncatedPmf) -> tuple[np.ndarray, np.ndarray]:
    """
    −L_V 의 대칭화 삼중대각 (대각, 비대각)

    상세균형으로 위/아래 비대각이 같아야 하며, 어긋나면 NumericError.
    """
    Q = build_generator(V)
    v = V.values
    diag = Q.up + Q.down
    upper = -Q.up[:-1] * np.sqrt(v[:-1] / v[1:])
    lower = -Q.down[1:] * np.sqrt(v[1:] / v[:-1])
    asym = float(np.max(np.abs(upper - lower) / np.maximum(1.0, np.abs(upper))))
    if asym > SYMMETRY_TOL:
        raise NumericError(f"{V.label}: 대칭화 생성자 비대칭 {asym:.3e}")
    return diag, 0.5 * (upper + lower)


def poincare_constant(V: TruncatedPmf) -> float:
    """
    최적 푸앵카레 상수 sup var_V(f) / Σ V (Δf)² = 1/갭

    Raises:
        ShapeError: N < 1
        NumericError: 고윳값 계산 실패 또는 갭 ≤ 0
    """
    require_full_support(V)
    if V.N < 1:
        raise ShapeError(f"윈도우가 너무 작습니다: N={V.N}")

    diag, off = symmetrized_generator(V)
    try:
        w = eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, 1))
    except LinAlgError as e:
        raise NumericError(f"{V.label}: 고윳값 계산 실패 ({e})") from e

    gap = float(w[1])
    if not gap > 0.0:
        raise NumericError(f"{V.label}: 스펙트럼 갭이 양수가 아닙니다 ({gap})")
    logger.debug(f"📐 {V.label}: 갭 {gap:.10g}, 최솟값 {w[0]:.2e}")
    return 1.0 / gap


def _optimize_from(V: TruncatedPmf, u0: np.ndarray) -> float:
    """한 시작점에서 최대화, 평가된 비율 중 최댓값 반환"""
    best = {"ratio": 0.0}

    def objective(u: np.ndarray):
        log_ratio, grad, ratio = log_ratio_and_gradient(V, u)
        if not math.isfinite(log_ratio):
            return 1e10, np.zeros_like(u)
        best["ratio"] = max(best["ratio"], ratio)
        return -log_ratio, -grad

    bounds = [(-U_CLIP, U_CLIP)] * u0.size
    try:
        minimize(objective, np.clip(u0, -U_CLIP, U_CLIP), jac=True, method="L-BFGS-B",
                 bounds=bounds, options={"maxiter": 500})
    except (ValueError, FloatingPointError) as e:
        # 평가된 비율은 여전히 유효한 하한
        logger.debug(f"L-BFGS-B 중단: {e}")
    return best["ratio"]


@log_execution_time
def lsi_constant_estimate(
    V: TruncatedPmf,
    restarts: Optional[int] = None,
    seed: Optional[int] = None,
) -> float:
    """
    sup_f Ent_V(f) / rhs_new(V,f) 의 하한

    시작점: 지수족 a·x (a ∈ EXP_FAMILY_SLOPES) + 무작위 보행 restarts 개.
    각 재시작은 SeedSequence.spawn 으로 독립 시드를 받아 병렬 실행하고 max 로 합칩니다.
    상수 시작점은 0/0 이라 제외됩니다.
    """
    require_full_support(V)
    restarts = settings.LSI_RESTARTS if restarts is None else restarts
    seed = settings.DEFAULT_SEED if seed is None else seed
    size = V.N + 1
    x = np.arange(size, dtype=float)

    starts = [a * x for a in EXP_FAMILY_SLOPES]
    for ss in np.random.SeedSequence(seed).spawn(restarts):
        starts.append(random_walk_values(np.random.default_rng(ss), size))

    with ThreadPoolExecutor(max_workers=settings.MAX_WORKERS) as executor:
        ratios = list(executor.map(lambda u0: _optimize_from(V, u0), starts))

    estimate = max(ratios)
    logger.info(f"📈 {V.label}: LSI 상수 하한 {estimate:.10g} ({len(starts)}개 시작점)")
    return estimate


def poincare_inequality_check(
    V: TruncatedPmf,
    c: Optional[float] = None,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
) -> dict:
    """
    var_V(f) ≤ (1/c) Σ_x V(x)(Δf(x))² 무작위 검증 (V 는 윈도우 정규화 가중치)

    c 가 없으면 c_inf 를 씁니다. 최적 상수 poincare_constant 와 1/c 도 비교합니다.

    Returns:
        dict: tag, c, constant, inverse_c, trials, violations, worst_ratio, passed
    """
    require_full_support(V)
    c_used = c_log_concave_constant(V) if c is None else float(c)
    if not c_used > 0.0:
        raise PreconditionError(f"{V.label}: 양의 곡률 상수가 필요합니다 (c={c_used:.6g})")
    trials = settings.BE_TRIALS if trials is None else trials
    seed = settings.DEFAULT_SEED if seed is None else seed

    w = window_weights(V)
    constant = poincare_constant(V)
    violations = []
    worst_ratio = 0.0
    for i, ss in enumerate(np.random.SeedSequence(seed).spawn(trials)):
        f = random_walk_values(np.random.default_rng(ss), V.N + 1)
        var = variance(V, f)
        dirichlet = math.fsum(w[:-1] * np.diff(f) ** 2)
        if dirichlet > 0.0:
            worst_ratio = max(worst_ratio, var / dirichlet)
        if var > dirichlet / c_used + POINCARE_REL_TOL * max(1.0, var):
            violations.append({"trial": i, "variance": var, "bound": dirichlet / c_used})

    constant_ok = constant <= 1.0 / c_used + 1e-8 * max(1.0, constant)
    passed = constant_ok and not violations
    if passed:
        logger.info(f"✅ {V.label}: 푸앵카레 검증 통과 (상수 {constant:.10g} ≤ 1/c = {1.0 / c_used:.10g})")
    else:
        logger.warning(f"⚠️ {V.label}: 푸앵카레 위반 {len(violations)}건, 상수 비교 {constant_ok}")

    return {
        "tag": "eq:poincare",
        "label": V.label,
        "c": c_used,
        "constant": constant,
        "inverse_c": 1.0 / c_used,
        "trials": trials,
        "violations": violations,
        "worst_ratio": worst_ratio,
        "passed": passed,
    }
