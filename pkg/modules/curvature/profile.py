"""
profile.py - 곡률 프로파일 모듈

E(x) = V(x)/V(x+1) − V(x−1)/V(x) (V(−1) = 0) 와 그 하한 c 를 계산합니다.

주요 기능:
- 곡률 프로파일 E(0..N−1)
- c-로그-오목 상수 (윈도우 위 하한)
- 텔레스코핑 항등식 V(x)/V(x+1) = Σ_{y≤x} E(y) 잔차
- CurvatureReport 종합

사용법:
    from modules.curvature.profile import curvature_profile, curvature_report

    E = curvature_profile(pmf_poisson(2.0))      # 모두 0.5
    report = curvature_report(pmf_poisson(2.0))
"""

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from exceptions import NotFullSupportError, ShapeError
from logger import logger

from modules.pmf.distributions import TruncatedPmf


def require_full_support(V: TruncatedPmf) -> None:
    """윈도우 안 0 질량 점이 있으면 NotFullSupportError"""
    if not V.full_support:
        zeros = np.nonzero(V.values == 0.0)[0]
        raise NotFullSupportError(
            f"{V.label}: 윈도우 안에 질량 0 인 점이 있습니다 (x={zeros[:5].tolist()})",
            {"zero_sites": zeros.tolist()},
        )


def forward_ratios(V: TruncatedPmf) -> np.ndarray:
    """r(x) = V(x)/V(x+1), x = 0..N−1"""
    return V.values[:-1] / V.values[1:]


def curvature_profile(V: TruncatedPmf) -> np.ndarray:
    """
    곡률 프로파일 E(x), x = 0..N−1

    Args:
        V: 완전 지지 TruncatedPmf (N ≥ 1)

    Returns:
        길이 N 배열

    Example:
        >>> curvature_profile(pmf_poisson(2.0))[:3]
        array([0.5, 0.5, 0.5])
    """
    require_full_support(V)
    if V.N < 1:
        raise ShapeError(f"{V.label}: 곡률에는 두 점 이상의 윈도우가 필요합니다")
    r = forward_ratios(V)
    return r - np.concatenate(([0.0], r[:-1]))


def c_log_concave_constant(V: TruncatedPmf) -> float:
    """윈도우 위 E(x) 의 하한 c"""
    return float(np.min(curvature_profile(V)))


def telescoping_residual(V: TruncatedPmf) -> float:
    """max_x |V(x)/V(x+1) − Σ_{y≤x} E(y)| / max(1, V(x)/V(x+1))"""
    r = forward_ratios(V)
    partial = np.cumsum(curvature_profile(V))
    return float(np.max(np.abs(r - partial) / np.maximum(1.0, r)))


@dataclass
class CurvatureReport:
    """곡률 종합 리포트"""
    label: str
    N: int
    tail_mass: float
    profile: list[float]
    c_inf: float
    argmin: int
    boundary_flag: bool          # 하한이 x = N−1 에서 달성 (윈도우 인공물 경고)
    ulc: bool
    ulc_c: Optional[float]       # V(0)/V(1), ULC 일 때만
    mean: float
    mean_bound_ok: bool          # c ≤ 1/mean + 1e-10
    increasing: bool             # E 비감소
    telescoping_residual: float

    def to_dict(self) -> dict:
        return asdict(self)


def curvature_report(V: TruncatedPmf) -> CurvatureReport:
    """
    곡률 관련 성질을 한 번에 계산

    Args:
        V: 완전 지지 TruncatedPmf

    Returns:
        CurvatureReport
    """
    from modules.curvature.structure import (
        curvature_increasing_check,
        is_ulc,
        mean_bound_check,
    )

    profile = curvature_profile(V)
    argmin = int(np.argmin(profile))
    c_inf = float(profile[argmin])
    ulc = is_ulc(V)
    boundary = argmin == V.N - 1

    if boundary and V.N > 1:
        logger.warning(f"⚠️ {V.label}: 곡률 하한이 윈도우 끝 x={argmin} 에서 달성됨 (절단 인공물 가능)")

    return CurvatureReport(
        label=V.label,
        N=V.N,
        tail_mass=V.tail_mass,
        profile=profile.tolist(),
        c_inf=c_inf,
        argmin=argmin,
        boundary_flag=boundary,
        ulc=ulc,
        ulc_c=float(V.values[0] / V.values[1]) if ulc else None,
        mean=V.mean,
        mean_bound_ok=mean_bound_check(V),
        increasing=curvature_increasing_check(V),
        telescoping_residual=telescoping_residual(V),
    )
