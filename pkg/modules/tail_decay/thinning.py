"""
thinning.py - 솎아내기(thinning) 엔트로피 감쇠 모듈

출생-사망 과정의 '사망' 부분만으로 움직이는 pmf 족
    ∂V_t(x) = α_t (V_t(x) − V_t(x−1))
    ∂p_t(x) = α_t (V_t(x)/V_t(x+1) p_t(x+1) − V_t(x−1)/V_t(x) p_t(x))
를 적분하고 D(p_t‖V_t) ≤ D(p‖V) exp(−∫ α_s c_s ds) 를 검사합니다.

기본 제공 족은 포아송 Π_{λe^{−t}} (α_t = λe^{−t}, c_t = e^t/λ) 뿐이며,
다른 족은 ThinningFamily 로 넘깁니다.

사용법:
    from modules.tail_decay.thinning import thinning_decay_trace

    trace = thinning_decay_trace(pmf_poisson(1.0), lam=2.0, t_grid=[0.1, 0.5, 1.0])
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import stats
from scipy.integrate import quad, solve_ivp

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from config import settings
from exceptions import AccuracyError, DomainError, NumericError
from logger import log_execution_time, logger

from modules.pmf.distributions import TruncatedPmf


DECAY_ABS_TOL = 1e-8
FAMILY_FD_STEP = 1e-5


@dataclass(frozen=True)
class ThinningFamily:
    """
    시간에 따라 움직이는 기준 pmf 족

    log_pmf_at(t, N): log V_t(0..N)
    alpha(t): α_t
    curvature_lower(t): c_t (E_t(x) ≥ c_t 로 가정하는 값)
    """
    label: str
    log_pmf_at: Callable[[float, int], np.ndarray]
    alpha: Callable[[float], float]
    curvature_lower: Callable[[float], float]

    def death_rates(self, t: float, N: int) -> np.ndarray:
        """α_t V_t(x−1)/V_t(x) (x = 0..N, x = 0 은 0)"""
        logv = self.log_pmf_at(t, N)
        rates = np.zeros(N + 1)
        rates[1:] = self.alpha(t) * np.exp(logv[:-1] - logv[1:])
        return rates

    def rate_integral(self, t: float) -> float:
        """∫_0^t α_s c_s ds"""
        value, _ = quad(lambda s: self.alpha(s) * self.curvature_lower(s), 0.0, t)
        return value


def poisson_thinning_family(lam: float) -> ThinningFamily:
    """V_t = Π_{λe^{−t}}, α_t c_t = 1"""
    lam = float(lam)
    if not (math.isfinite(lam) and lam > 0.0):
        raise DomainError(f"λ 는 양수여야 합니다: {lam}")

    def log_pmf_at(t: float, N: int) -> np.ndarray:
        return stats.poisson.logpmf(np.arange(N + 1), lam * math.exp(-t))

    return ThinningFamily(
        label=f"poisson_thinning:{lam:g}",
        log_pmf_at=log_pmf_at,
        alpha=lambda t: lam * math.exp(-t),
        curvature_lower=lambda t: math.exp(t) / lam,
    )


def poisson_thinning_divergence(lam: float, mu: float, t: float) -> float:
    """D(Π_{μe^{−t}} ‖ Π_{λe^{−t}}) = λ_t − μ_t + μ_t log(μ_t/λ_t)"""
    lam_t, mu_t = lam * math.exp(-t), mu * math.exp(-t)
    return lam_t - mu_t + mu_t * math.log(mu_t / lam_t)


def check_family_consistency(family: ThinningFamily, t: float, N: int) -> dict:
    """
    ∂V_t = α_t(V_t(x) − V_t(x−1)) 를 중심 차분으로, E_t ≥ c_t 를 윈도우에서 확인

    Returns:
        dict: dynamics_residual, curvature_min, curvature_lower, curvature_ok
    """
    h = FAMILY_FD_STEP
    v = np.exp(family.log_pmf_at(t, N))
    dv = (np.exp(family.log_pmf_at(t + h, N)) - np.exp(family.log_pmf_at(t - h, N))) / (2.0 * h)
    shifted = np.concatenate(([0.0], v[:-1]))
    residual = float(np.max(np.abs(dv - family.alpha(t) * (v - shifted))))

    logv = family.log_pmf_at(t, N + 1)
    forward = np.exp(logv[:-1] - logv[1:])
    E = forward - np.concatenate(([0.0], forward[:-1]))
    c_t = family.curvature_lower(t)
    curvature_min = float(np.min(E))
    return {
        "dynamics_residual": residual,
        "curvature_min": curvature_min,
        "curvature_lower": c_t,
        "curvature_ok": curvature_min >= c_t - 1e-10 * max(1.0, abs(c_t)),
    }


def _divergence(p: np.ndarray, logv: np.ndarray) -> float:
    """Σ p (log p − log V), p = 0 항은 0"""
    mask = p > 0.0
    return math.fsum(p[mask] * (np.log(p[mask]) - logv[mask]))


def _integrate(family: ThinningFamily, p0: np.ndarray, times: list, rtol: float, atol: float) -> np.ndarray:
    N = p0.size - 1

    def rhs(t, p):
        rates = family.death_rates(t, N)
        out = -rates * p
        out[:-1] += rates[1:] * p[1:]
        return out

    sol = solve_ivp(rhs, (0.0, times[-1]), p0, method="DOP853",
                    t_eval=times, rtol=rtol, atol=atol)
    if not sol.success:
        raise NumericError(f"적분 실패: {sol.message}")
    return sol.y.T


@log_execution_time
def thinning_decay_trace(
    p0: TruncatedPmf,
    lam: float,
    t_grid: Sequence[float],
    tol: Optional[float] = None,
    family: Optional[ThinningFamily] = None,
) -> dict:
    """
    D(p_t‖V_t) 추적과 지수 감쇠 경계 검사

    Args:
        p0: 초기 pmf (윈도우가 적분 윈도우가 됨, 사망만 있으므로 질량이 새지 않음)
        lam: 포아송 족의 초기 평균 (family 가 없을 때)
        t_grid: 양의 시간 격자
        tol: 적분 허용오차 (기본 settings.INTEGRATOR_TOL)
        family: 사용자 족 (기본 poisson_thinning_family(lam))

    Returns:
        dict: tag, t, divergence, bound, margin, passed, d0

    Raises:
        AccuracyError: 허용오차를 10배 조인 재적분과 tol 이상 차이
    """
    tol = settings.INTEGRATOR_TOL if tol is None else tol
    family = poisson_thinning_family(lam) if family is None else family
    times = sorted(float(t) for t in t_grid)
    if not times or times[0] < 0.0:
        raise DomainError("시간 격자는 비어 있지 않은 0 이상 값이어야 합니다")

    p_init = np.array(p0.values, dtype=float)
    N = p_init.size - 1
    d0 = _divergence(p_init, family.log_pmf_at(0.0, N))

    states = _integrate(family, p_init, times, rtol=tol * 1e-2, atol=tol * 1e-4)
    fine = _integrate(family, p_init, times, rtol=tol * 1e-3, atol=tol * 1e-5)
    drift = float(np.max(np.abs(states - fine)))
    if drift > tol:
        raise AccuracyError(
            f"thinning 적분 오차 {drift:.3e} > tol {tol:.1e}",
            {"drift": drift, "tol": tol},
        )

    divergences, bounds, margins = [], [], []
    for t, p_t in zip(times, states):
        p_t = np.clip(p_t, 0.0, None)
        d_t = _divergence(p_t, family.log_pmf_at(t, N))
        bound = d0 * math.exp(-family.rate_integral(t))
        divergences.append(d_t)
        bounds.append(bound)
        margins.append(bound - d_t)

    passed = all(m >= -DECAY_ABS_TOL for m in margins)
    if passed:
        logger.info(f"✅ {p0.label} → {family.label}: 엔트로피 감쇠 경계 통과")
    else:
        logger.warning(f"⚠️ {p0.label} → {family.label}: 감쇠 경계 위반 (최소 여유 {min(margins):.3e})")

    return {
        "tag": "eq:thind",
        "label": f"{p0.label}|{family.label}",
        "d0": d0,
        "t": times,
        "divergence": divergences,
        "bound": bounds,
        "margin": margins,
        "passed": passed,
    }
