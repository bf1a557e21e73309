"""
hypercontractivity.py - 초수축성 추적 모듈

포아송 족 V_t = Π_{λe^{−t}} 위에서 함수 g_t 를
    ∂g_t(x) = α_t V_t(x−1)/V_t(x) (g_t(x) − g_t(x−1)) = x (g_t(x) − g_t(x−1))
로 함께 적분하고 u(t) = log Λ(q(t), t) / q(t), Λ(q,t) = Σ V_t e^{q g_t},
q(t) = p e^{−t} 가 감소하지 않는지 확인합니다.

g_t 방정식은 thinning 의 역방향이라 차수 k 성분을 e^{kt} 로 키웁니다.
의미 있는 g0 는 저차 샤를리에 조합, 또는 앞 몇 칸 뒤로 평탄한 유계 함수
(t < log 2 에서 g_t 가 유계) 입니다. 윈도우 안의 g_t 는 왼쪽 이웃만 쓰므로 정확하고,
잘린 Λ 꼬리는 윈도우를 두 배씩 늘려 u(t) 가 수렴하는지로 확인합니다.

사용법:
    from modules.tail_decay.hypercontractivity import charlier_g0, converged_hypercontractivity_trace

    N = hypercontractivity_window(2.0, 2.0)
    trace = converged_hypercontractivity_trace(2.0, lambda n: charlier_g0(2.0, n), 2.0, [0.1, 0.2], N)
"""

import math
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import stats
from scipy.integrate import solve_ivp
from scipy.special import logsumexp

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from config import settings
from exceptions import AccuracyError, DomainError, InvalidParameterError, NumericError, ShapeError
from logger import log_execution_time, logger

from modules.pmf.distributions import first_index_below
from modules.semigroup.grid_function import FunctionLike, as_values, random_walk_values


MONOTONE_REL_TOL = 1e-8
# 윈도우 N 과 2N 의 u(t) 상대 차이 허용치
WINDOW_REL_TOL = 1e-9
MAX_WINDOW = 256
# 무작위 g0 가 변하는 칸 수 (이후 평탄)
RANDOM_G0_SUPPORT = 6


def charlier_g0(lam: float, N: int, degree: int = 1) -> np.ndarray:
    """
    포아송-샤를리에 다항식 (x = 0..N)

    degree 0: 1, degree 1: (x − λ)/λ, degree 2: ((x − λ)² − x)/λ²
    """
    x = np.arange(N + 1, dtype=float)
    if degree == 0:
        return np.ones_like(x)
    if degree == 1:
        return (x - lam) / lam
    if degree == 2:
        return ((x - lam) ** 2 - x) / lam ** 2
    raise InvalidParameterError(f"지원하지 않는 샤를리에 차수: {degree}")


def random_g0(seed: int, N: int, support: int = RANDOM_G0_SUPPORT) -> np.ndarray:
    """
    유계 무작위 보행 g0 (x = 0..N, |g0| ≤ 1.5, x ≥ support 에서 평탄)

    값은 seed 와 support 로만 정해지므로 N 을 늘려도 앞부분이 같습니다.
    """
    walk = random_walk_values(np.random.default_rng(seed), support + 1, max_step=0.5, bound=1.5)
    g0 = np.full(N + 1, walk[-1])
    m = min(N + 1, walk.size)
    g0[:m] = walk[:m]
    return g0


def charlier_constant(lam: float, p: float) -> float:
    """C = 1 + λ/p − (λ/p) e^{p/λ}, 1차 샤를리에에서 u(t) ≡ −C"""
    r = lam / p
    return 1.0 + r - r * math.exp(p / lam)


def hypercontractivity_window(
    lam: float,
    p: float,
    eps: Optional[float] = None,
    slope: float = 0.0,
    bound: Optional[float] = None,
) -> int:
    """
    t = 0 에서 Λ 꼬리가 eps 이하인 시작 윈도우 N

    bound 가 있으면 (sup|g0| ≤ bound) Σ_{x>N} Π_λ(x) e^{p g0(x)} ≤ e^{p·bound} sf(N; λ) 이므로
    Π_λ 를 eps·e^{−p·bound} 에서 자릅니다.
    없으면 기울기 slope 이하로 자라는 g0 로 보고 틸트 Π_{λ e^{p·max(slope, 1/λ)}} 꼬리로 정합니다.

    Raises:
        ShapeError: 윈도우가 MAX_WINDOW 를 넘을 때
    """
    if not (lam > 0.0 and p > 1.0):
        raise DomainError(f"λ > 0, p > 1 이어야 합니다: λ={lam}, p={p}")
    eps = settings.EPS_TAIL if eps is None else eps

    if bound is not None:
        target = eps * math.exp(-p * abs(bound))
        N = first_index_below(lambda n: stats.poisson.sf(n, lam), int(lam) + 10, target)
    else:
        exponent = p * max(slope, 1.0 / lam)
        if exponent > math.log(MAX_WINDOW / lam):
            raise ShapeError(
                f"g0 기울기 {slope:.3g} 에 필요한 틸트 평균이 윈도우 상한 {MAX_WINDOW} 을 넘습니다"
            )
        tilted = lam * math.exp(exponent)
        N = first_index_below(lambda n: stats.poisson.sf(n, tilted), int(tilted) + 10, eps)

    if N > MAX_WINDOW:
        raise ShapeError(f"초수축성 윈도우 {N} > 상한 {MAX_WINDOW}")
    return max(N, 1)


def _integrate(g0: np.ndarray, times: list, rtol: float, atol: float) -> np.ndarray:
    x = np.arange(g0.size, dtype=float)

    def rhs(t, g):
        out = np.zeros_like(g)
        out[1:] = x[1:] * np.diff(g)
        return out

    sol = solve_ivp(rhs, (0.0, times[-1]), g0, method="DOP853",
                    t_eval=times, rtol=rtol, atol=atol)
    if not sol.success:
        raise NumericError(f"g_t 적분 실패: {sol.message}")
    return sol.y.T


def _log_lambda(lam_t: float, q: float, g: np.ndarray) -> float:
    """log Σ V_t e^{q g} (최댓값 빼기 안정화)"""
    logv = stats.poisson.logpmf(np.arange(g.size), lam_t)
    return float(logsumexp(q * g + logv))


def _u_values(lam: float, p: float, times: list, states: np.ndarray) -> tuple[list, list]:
    qs, us = [], []
    for t, g_t in zip(times, states):
        q = p * math.exp(-t)
        qs.append(q)
        us.append(_log_lambda(lam * math.exp(-t), q, g_t) / q)
    return qs, us


@log_execution_time
def hypercontractivity_trace(
    lam: float,
    g0: FunctionLike,
    p: float,
    t_grid: Sequence[float],
    tol: Optional[float] = None,
) -> dict:
    """
    고정 윈도우에서 u(t) = log Λ(q(t), t)/q(t) 추적

    Args:
        lam: 초기 포아송 평균 λ
        g0: 윈도우 0..N 위 초기 함수 (윈도우는 hypercontractivity_window 참고)
        p: 초기 지수 (> 1)
        t_grid: 시간 격자 (0 이 없으면 앞에 추가)
        tol: 적분 허용오차 (두 허용오차로 구한 u 의 상대 차이 상한)

    Returns:
        dict: tag, t, q, u, window, max_decrease, passed
    """
    tol = settings.INTEGRATOR_TOL if tol is None else tol
    if not (lam > 0.0 and p > 1.0):
        raise DomainError(f"λ > 0, p > 1 이어야 합니다: λ={lam}, p={p}")
    gv = np.array(as_values(g0, None, "g0"), dtype=float)
    if not np.all(np.isfinite(gv)):
        raise DomainError("g0 에 유한하지 않은 값이 있습니다")

    times = sorted({0.0, *(float(t) for t in t_grid)})
    if times[0] < 0.0:
        raise DomainError("시간 격자는 0 이상이어야 합니다")

    if len(times) > 1:
        qs, us = _u_values(lam, p, times, _integrate(gv, times, rtol=tol * 1e-2, atol=tol * 1e-4))
        _, fine = _u_values(lam, p, times, _integrate(gv, times, rtol=tol * 1e-3, atol=tol * 1e-5))
        drift = max(abs(a - b) / (1.0 + abs(b)) for a, b in zip(us, fine))
        if not math.isfinite(drift) or drift > tol:
            raise AccuracyError(f"u(t) 적분 오차 {drift:.3e} > tol {tol:.1e}", {"drift": drift})
    else:
        qs, us = _u_values(lam, p, times, gv[None, :])

    steps = np.diff(us)
    allowance = MONOTONE_REL_TOL * (1.0 + np.abs(np.asarray(us[:-1])))
    max_decrease = float(np.max(-steps)) if steps.size else 0.0
    passed = bool(np.all(steps >= -allowance)) if steps.size else True

    if passed:
        logger.debug(f"초수축성 λ={lam:g}, p={p:g}, N={gv.size - 1}: u(t) 비감소 ({len(times)}개 시점)")
    else:
        logger.warning(f"⚠️ 초수축성 λ={lam:g}, p={p:g}: u(t) 감소 {max_decrease:.3e}")

    return {
        "tag": "eq:hyper",
        "lambda": float(lam),
        "p": float(p),
        "t": times,
        "q": qs,
        "u": us,
        "window": int(gv.size - 1),
        "max_decrease": max_decrease,
        "passed": passed,
    }


def converged_hypercontractivity_trace(
    lam: float,
    make_g0: Callable[[int], np.ndarray],
    p: float,
    t_grid: Sequence[float],
    N: int,
    tol: Optional[float] = None,
) -> dict:
    """
    윈도우를 두 배씩 늘리며 u(t) 가 수렴할 때까지 추적

    Args:
        make_g0: 윈도우 N ↦ 0..N 위 g0 값 (N 이 달라도 앞부분이 같아야 함)
        N: 시작 윈도우 (hypercontractivity_window)

    Returns:
        hypercontractivity_trace 결과 + window_change (마지막 두 윈도우의 u 상대 차이)

    Raises:
        AccuracyError: MAX_WINDOW 까지 수렴하지 않을 때 (예: t ≥ log 2 의 평탄 g0, 2차 이상으로 자라는 g0)
    """
    trace = hypercontractivity_trace(lam, make_g0(N), p, t_grid, tol)
    change = math.inf
    while 2 * N <= MAX_WINDOW:
        wider = hypercontractivity_trace(lam, make_g0(2 * N), p, t_grid, tol)
        change = max(abs(a - b) / (1.0 + abs(b)) for a, b in zip(trace["u"], wider["u"]))
        N, trace = 2 * N, wider
        if change <= WINDOW_REL_TOL:
            trace["window_change"] = change
            status = "✅" if trace["passed"] else "❌"
            logger.info(f"{status} 초수축성 λ={lam:g}, p={p:g}: 윈도우 N={N} 에서 수렴 (변화 {change:.1e})")
            return trace
    raise AccuracyError(
        f"윈도우 {N} 까지 u(t) 가 수렴하지 않았습니다 (변화 {change:.3e})",
        {"window": N, "change": change},
    )
