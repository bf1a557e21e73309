"""
concentration.py - 측도 집중 경계 모듈

변형 LSI 로부터 얻는 꼬리 경계
    V({g ≥ E_V g + t}) ≤ exp(−h(ct)/c)
와 그 체르노프 형태를 계산하고 정확한 꼬리와 비교합니다.

주요 기능:
- concentration_bound / chernoff_bound / optimal_sigma
- exact_tail: 정확한 윈도우 꼬리 질량
- chernoff_scan: H(σ) − H(0) ≤ (1/c)(e^σ − σ − 1)/σ 검사
- concentration_report → ConcentrationReport

사용법:
    from modules.tail_decay.concentration import concentration_report

    report = concentration_report(pmf_poisson(2.0), np.arange(N + 1), [1, 2, 3])
"""

import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.special import logsumexp

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from exceptions import DomainError, PreconditionError
from logger import logger

from modules.curvature.profile import c_log_concave_constant, require_full_support
from modules.pmf.distributions import TruncatedPmf
from modules.semigroup.grid_function import FunctionLike, as_values
from modules.tail_decay.auxiliary import bennett_h, chernoff_k


LIPSCHITZ_TOL = 1e-12
THRESHOLD_REL_TOL = 1e-12    # g(x) ≥ 문턱값 비교의 반올림 여유
TAIL_ABS_TOL = 1e-12
CHERNOFF_REL_TOL = 1e-10


def _positive(value: float, name: str) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} 는 양수여야 합니다: {value}")
    return value


def concentration_bound(c: float, t: float) -> float:
    """exp(−h(ct)/c)"""
    c, t = _positive(c, "c"), _positive(t, "t")
    return math.exp(-bennett_h(c * t) / c)


def weaker_bound(c: float, t: float) -> float:
    """exp(−k(ct)/c), h ≥ 2k 이므로 concentration_bound 이상"""
    c, t = _positive(c, "c"), _positive(t, "t")
    return math.exp(-chernoff_k(c * t) / c)


def optimal_sigma(c: float, t: float) -> float:
    """체르노프 지수를 최소화하는 σ* = log(1 + ct)"""
    c, t = _positive(c, "c"), _positive(t, "t")
    return math.log1p(c * t)


def chernoff_bound(c: float, t: float, sigma: float) -> float:
    """exp(−σt + (e^σ − σ − 1)/c), σ = σ* 에서 concentration_bound 와 같음"""
    c, t, sigma = _positive(c, "c"), _positive(t, "t"), _positive(sigma, "sigma")
    return math.exp(-sigma * t + (math.expm1(sigma) - sigma) / c)


def exact_tail(V: TruncatedPmf, g: FunctionLike, t: float) -> float:
    """
    Σ_{x: g(x) ≥ E_V g + t} V(x)

    E_V g 는 윈도우 정규화 가중치로 구합니다. 정수값 g 에서 문턱이
    반올림으로 한 칸 밀리지 않도록 상대 1e-12 여유를 둡니다.
    """
    gv = as_values(g, V.N + 1, "g")
    mean = math.fsum(V.normalized() * gv)
    threshold = mean + float(t)
    threshold -= THRESHOLD_REL_TOL * max(1.0, abs(threshold))
    return math.fsum(V.values[gv >= threshold])


def _require_lipschitz(gv: np.ndarray) -> float:
    lip = float(np.max(np.abs(np.diff(gv)))) if gv.size > 1 else 0.0
    if lip > 1.0 + LIPSCHITZ_TOL:
        raise PreconditionError(
            f"sup|Δg| = {lip:.6g} > 1 (1-립시츠 함수가 필요합니다)",
            {"lipschitz": lip},
        )
    return lip


def _resolve_c(V: TruncatedPmf, c: Optional[float]) -> float:
    c_used = c_log_concave_constant(V) if c is None else float(c)
    if not c_used > 0.0:
        raise PreconditionError(f"{V.label}: 양의 곡률 상수가 필요합니다 (c={c_used:.6g})")
    return c_used


def chernoff_scan(
    V: TruncatedPmf,
    g: FunctionLike,
    sigma_grid: Sequence[float],
    c: Optional[float] = None,
) -> dict:
    """
    σ 별 G(σ) = Σ w e^{σg}, H(σ) = log G(σ)/σ 와 경계 비교

    Returns:
        dict: sigma, G, H, H0, bound, margin, passed
    """
    require_full_support(V)
    gv = as_values(g, V.N + 1, "g")
    _require_lipschitz(gv)
    c_used = _resolve_c(V, c)

    w = V.normalized()
    H0 = math.fsum(w * gv)
    rows = {"sigma": [], "G": [], "H": [], "bound": [], "margin": []}
    passed = True
    for sigma in sigma_grid:
        sigma = _positive(sigma, "sigma")
        log_G = float(logsumexp(sigma * gv, b=w))
        H = log_G / sigma
        bound = (math.expm1(sigma) - sigma) / (c_used * sigma)
        margin = bound - (H - H0)
        if margin < -CHERNOFF_REL_TOL * max(1.0, abs(H), bound):
            passed = False
        rows["sigma"].append(sigma)
        rows["G"].append(math.exp(log_G))
        rows["H"].append(H)
        rows["bound"].append(bound)
        rows["margin"].append(margin)

    if not passed:
        logger.warning(f"⚠️ {V.label}: 체르노프 경계 위반")
    return {"tag": "eq:lsicompare", "c": c_used, "H0": H0, **rows, "passed": passed}


@dataclass
class ConcentrationReport:
    """꼬리 질량 vs 두 경계"""
    label: str
    t_grid: list
    exact_tail: list
    bound_h: list
    bound_k: list
    c_used: float
    hypothesis_ok: bool
    passed: bool = True
    violations: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def concentration_report(
    V: TruncatedPmf,
    g: FunctionLike,
    t_grid: Sequence[float],
    c: Optional[float] = None,
) -> ConcentrationReport:
    """
    t 격자 위 exact_tail ≤ bound_h ≤ bound_k 검사

    c 가 c_inf 를 넘거나 g 가 1-립시츠가 아니면 꼬리 경계는 판정하지 않고
    hypothesis_ok=False 로 보고합니다.
    """
    require_full_support(V)
    gv = as_values(g, V.N + 1, "g")
    c_inf = c_log_concave_constant(V)
    c_used = _resolve_c(V, c)

    lip = float(np.max(np.abs(np.diff(gv)))) if gv.size > 1 else 0.0
    hypothesis_ok = lip <= 1.0 + LIPSCHITZ_TOL and c_used <= c_inf + 1e-12 * max(1.0, abs(c_inf))

    times = [_positive(t, "t") for t in t_grid]
    tails = [exact_tail(V, gv, t) for t in times]
    bound_h = [concentration_bound(c_used, t) for t in times]
    bound_k = [weaker_bound(c_used, t) for t in times]

    violations = []
    for t, tail, bh, bk in zip(times, tails, bound_h, bound_k):
        if hypothesis_ok and tail > bh + TAIL_ABS_TOL:
            violations.append({"t": t, "kind": "tail_above_h", "excess": tail - bh})
        if bh > bk + TAIL_ABS_TOL:
            violations.append({"t": t, "kind": "h_above_k", "excess": bh - bk})

    if violations:
        logger.warning(f"⚠️ {V.label}: 집중 경계 위반 {len(violations)}건")
    else:
        logger.info(f"✅ {V.label}: 집중 경계 통과 (t {len(times)}개)")

    return ConcentrationReport(
        label=V.label,
        t_grid=times,
        exact_tail=tails,
        bound_h=bound_h,
        bound_k=bound_k,
        c_used=c_used,
        hypothesis_ok=hypothesis_ok,
        passed=not violations,
        violations=violations,
    )
