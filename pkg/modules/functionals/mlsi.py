"""
mlsi.py - 변형 로그-소볼레프 부등식 모듈

새 변형 LSI 의 우변과 비교용 우변들, 종합 검증 보고서를 계산합니다.

    Ent_V(f) ≤ (1/c) Σ V(x) f(x+1) [log(f(x+1)/f(x)) − 1 + f(x)/f(x+1)]

주요 기능:
- mlsi_rhs_new / mlsi_rhs_diff / mlsi_rhs_caputo / mlsi_rhs_bl
- phi_transform_entropy: Φ(u) = u log u 의 A-변환 형태
- entropy_gradient / mlsi_rhs_new_gradient (f = e^u 매개화)
- restated_lsi_sides: D(p‖V) ≤ (1/cK)(D(p̂‖p) + log(1/K) − 1 + K)
- lsi_verify → LsiReport
- poincare_limit_defect: Ent(1+εg) − (ε²/2) var(g)

사용법:
    from modules.functionals.mlsi import lsi_verify

    report = lsi_verify(pmf_poisson(2.0), np.exp(0.3 * np.arange(N + 1)))
    print(report.passed, report.gaps)
"""

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np
from scipy import special

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from exceptions import DomainError
from logger import logger

from modules.curvature.profile import c_log_concave_constant
from modules.functionals.entropy import (
    entropy,
    relative_entropy,
    size_bias_transform,
    variance,
    window_weights,
)
from modules.pmf.distributions import TruncatedPmf
from modules.pmf.transforms import density_ratio
from modules.semigroup.grid_function import FunctionLike, as_values, require_positive


# ===== 허용오차 =====
LSI_REL_TOL = 1e-10          # Ent ≤ rhs/c 검사
DECOMPOSITION_REL_TOL = 1e-12
U_CLIP = 40.0                # f = e^u 매개화의 u 범위


# ===== 우변 범함수 =====

def _positive(V: TruncatedPmf, f: FunctionLike) -> tuple[np.ndarray, np.ndarray]:
    return window_weights(V), require_positive(f, V.N + 1, "f")


def mlsi_rhs_new(V: TruncatedPmf, f: FunctionLike) -> float:
    """Σ w(x) f(x+1)[log(f(x+1)/f(x)) − 1 + f(x)/f(x+1)] ≥ 0"""
    w, fv = _positive(V, f)
    return math.fsum(w[:-1] * special.kl_div(fv[1:], fv[:-1]))


def mlsi_rhs_diff(V: TruncatedPmf, f: FunctionLike) -> float:
    """Σ w(x) f(x)[log(f(x)/f(x+1)) − 1 + f(x+1)/f(x)] ≥ 0"""
    w, fv = _positive(V, f)
    return math.fsum(w[:-1] * special.kl_div(fv[:-1], fv[1:]))


def mlsi_rhs_caputo(V: TruncatedPmf, f: FunctionLike) -> float:
    """Σ w (f(x+1) − f(x))(log f(x+1) − log f(x)), rhs_new + rhs_diff 와 같음"""
    w, fv = _positive(V, f)
    logf = np.log(fv)
    return math.fsum(w[:-1] * np.diff(fv) * np.diff(logf))


def mlsi_rhs_bl(V: TruncatedPmf, f: FunctionLike) -> float:
    """Σ w (f(x+1) − f(x))² / f(x)"""
    w, fv = _positive(V, f)
    return math.fsum(w[:-1] * np.diff(fv) ** 2 / fv[:-1])


def phi_transform_entropy(V: TruncatedPmf, f: FunctionLike) -> float:
    """
    Σ w A^Φ(f(x), Δf(x)), A^Φ(u,v) = Φ(u+v) − Φ(u) − Φ′(u)v, Φ(u) = u log u

    mlsi_rhs_new 와 같은 값을 다른 경로로 계산합니다.
    """
    w, fv = _positive(V, f)
    u, v = fv[:-1], np.diff(fv)
    a_phi = special.xlogy(u + v, u + v) - special.xlogy(u, u) - (np.log(u) + 1.0) * v
    return math.fsum(w[:-1] * a_phi)


# ===== 기울기 (f = e^u) =====

def _exp_clipped(V: TruncatedPmf, u: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(w, u, f) with f = e^{u − max u}"""
    u = np.clip(as_values(u, V.N + 1, "u"), -U_CLIP, U_CLIP)
    u = u - np.max(u)
    return window_weights(V), u, np.exp(u)


def entropy_gradient(V: TruncatedPmf, u: FunctionLike) -> np.ndarray:
    """
    ∂ Ent_V(e^u) / ∂u_x = w_x f_x (u_x − log μ)

    Ent 은 1차 동차이므로 u 를 평행이동한 점의 값에 e^{max u} 를 곱합니다.
    """
    shift = float(np.max(np.clip(as_values(u, V.N + 1, "u"), -U_CLIP, U_CLIP)))
    w, us, f = _exp_clipped(V, u)
    mu = math.fsum(w * f)
    return math.exp(shift) * w * f * (us - math.log(mu))


def mlsi_rhs_new_gradient(V: TruncatedPmf, u: FunctionLike) -> np.ndarray:
    """
    ∂ rhs_new(e^u) / ∂u_y
        = w_{y−1} f_y (u_y − u_{y−1}) [y ≥ 1] + w_y (f_y − f_{y+1}) [y < N]
    """
    shift = float(np.max(np.clip(as_values(u, V.N + 1, "u"), -U_CLIP, U_CLIP)))
    w, us, f = _exp_clipped(V, u)
    grad = np.zeros_like(f)
    grad[1:] += w[:-1] * f[1:] * np.diff(us)
    grad[:-1] += w[:-1] * (f[:-1] - f[1:])
    return math.exp(shift) * grad


def log_ratio_and_gradient(V: TruncatedPmf, u: np.ndarray) -> tuple[float, np.ndarray, float]:
    """
    log Ent − log rhs_new 와 u 에 대한 기울기 (척도 불변이라 평행이동된 u 로 계산)

    Returns:
        (log 비율, 기울기, 비율). 퇴화(상수) 점이면 (−inf, 0, 0)
    """
    w, us, f = _exp_clipped(V, u)
    mu = math.fsum(w * f)
    ent = math.fsum(w * special.kl_div(f, mu))
    rhs = math.fsum(w[:-1] * special.kl_div(f[1:], f[:-1]))
    if ent <= 0.0 or rhs <= 0.0:
        return -math.inf, np.zeros_like(f), 0.0

    g_ent = w * f * (us - math.log(mu))
    g_rhs = np.zeros_like(f)
    g_rhs[1:] += w[:-1] * f[1:] * np.diff(us)
    g_rhs[:-1] += w[:-1] * (f[:-1] - f[1:])
    return math.log(ent) - math.log(rhs), g_ent / ent - g_rhs / rhs, ent / rhs


# ===== 재서술 형태 =====

def restated_lsi_sides(p: TruncatedPmf, V: TruncatedPmf, c: float) -> dict:
    """
    f = p/V 일 때의 상대 엔트로피 형태

    Returns:
        dict: lhs = D(p‖V), rhs = (1/cK)(D(p̂‖p) + log(1/K) − 1 + K),
              K, hat_divergence
    """
    if c <= 0.0:
        raise DomainError(f"c 는 양수여야 합니다: {c}")
    p_hat, K = size_bias_transform(p, V)
    lhs = relative_entropy(p, V)
    hat_divergence = relative_entropy(p_hat, p)
    rhs = (hat_divergence + (-math.log(K) - 1.0 + K)) / (c * K)
    return {"lhs": lhs, "rhs": rhs, "K": K, "hat_divergence": hat_divergence}


# ===== 검증 보고서 =====

@dataclass
class LsiReport:
    """변형 LSI 검증 결과"""
    label: str
    ent: float
    rhs_new: float
    rhs_caputo: float
    rhs_diff: float
    rhs_bl: float
    c_used: float
    c_inf: float
    hypothesis_ok: bool
    gaps: dict = field(default_factory=dict)
    restated: Optional[dict] = None
    passed: bool = True

    def to_dict(self) -> dict:
        return asdict(self)


def lsi_verify(
    V: TruncatedPmf,
    f: Optional[FunctionLike] = None,
    c: Optional[float] = None,
    p: Optional[TruncatedPmf] = None,
) -> LsiReport:
    """
    변형 LSI 와 비교 형태 종합 검증

    Args:
        V: 완전 지지 pmf
        f: 양수 함수 (None 이면 p/V)
        c: 곡률 상수 (None 이면 윈도우 하한 c_inf)
        p: 주어지면 재서술 형태도 평가

    Returns:
        LsiReport. 가정(c ≤ c_inf, c > 0)이 깨지면 hypothesis_ok=False 이고
        Ent ≤ rhs/c 는 판정하지 않습니다.
    """
    if f is None:
        if p is None:
            raise DomainError("f 또는 p 중 하나는 필요합니다")
        f = density_ratio(p, V)
    fv = require_positive(f, V.N + 1, "f")

    c_inf = c_log_concave_constant(V)
    c_used = c_inf if c is None else float(c)
    hypothesis_ok = 0.0 < c_used <= c_inf + 1e-12 * max(1.0, abs(c_inf))

    ent = entropy(V, fv)
    rhs_new = mlsi_rhs_new(V, fv)
    rhs_diff = mlsi_rhs_diff(V, fv)
    rhs_caputo = mlsi_rhs_caputo(V, fv)
    rhs_bl = mlsi_rhs_bl(V, fv)

    scale = max(abs(ent), rhs_new, 1.0)
    gaps = {
        "decomposition": rhs_caputo - (rhs_new + rhs_diff),
        "bl_minus_new": rhs_bl - rhs_new,
        "lsi": (rhs_new / c_used - ent) if c_used > 0.0 else None,
    }

    passed = True
    if abs(gaps["decomposition"]) > DECOMPOSITION_REL_TOL * max(scale, rhs_caputo):
        passed = False
    if rhs_new < 0.0 or rhs_diff < 0.0:
        passed = False
    if gaps["bl_minus_new"] < -DECOMPOSITION_REL_TOL * max(scale, rhs_bl):
        passed = False
    if hypothesis_ok and gaps["lsi"] < -LSI_REL_TOL * scale:
        passed = False

    restated = None
    if p is not None and c_used > 0.0:
        restated = restated_lsi_sides(p, V, c_used)

    if not hypothesis_ok:
        logger.warning(f"⚠️ {V.label}: c={c_used:.6g} 가 c_inf={c_inf:.6g} 를 넘어 LSI 판정 생략")
    elif not passed:
        logger.warning(f"⚠️ {V.label}: LSI 검증 실패 {gaps}")

    return LsiReport(
        label=V.label,
        ent=ent,
        rhs_new=rhs_new,
        rhs_caputo=rhs_caputo,
        rhs_diff=rhs_diff,
        rhs_bl=rhs_bl,
        c_used=c_used,
        c_inf=c_inf,
        hypothesis_ok=hypothesis_ok,
        gaps=gaps,
        restated=restated,
        passed=passed,
    )


def poincare_limit_defect(V: TruncatedPmf, g: FunctionLike, eps: float) -> float:
    """
    Ent_V(1 + εg) − (ε²/2) var_V(g)

    작은 ε 에서 O(ε³) 입니다.
    """
    gv = as_values(g, V.N + 1, "g")
    return entropy(V, 1.0 + eps * gv) - 0.5 * eps * eps * variance(V, gv)
