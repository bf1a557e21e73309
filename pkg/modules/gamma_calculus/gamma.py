"""
gamma.py - Γ₁ / Γ₂ 연산자 모듈

L_V 로부터 유도되는 카레 뒤 샹 Γ₁ 과 반복 카레 뒤 샹 Γ₂ 를
점별 정의와 V-평균 닫힌 형태 두 가지로 계산합니다.

주요 기능:
- gamma1_pointwise / gamma2_pointwise: 정의 그대로 (절단 생성자)
- gamma1_mean: Σ V Δf Δg
- gamma2_mean: Σ V [Lf(x+1) Lg(x+1) + E(x) Δf Δg] (내부 지지 함수 전용)
- one_step_commutation_residual: L_V f(x+1) − L_V f(x) 항등식 잔차
- product_rule_sides / chain_rule_counterexample

사용법:
    from modules.gamma_calculus.gamma import gamma1_mean, gamma2_mean

    V = pmf_poisson(2.0)
    g1 = gamma1_mean(V, f, f)
    g2 = gamma2_mean(V, f, f)     # f 는 상단 두 사이트에서 Δf = 0
"""

import math

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from exceptions import ShapeError, WindowError
from logger import logger

from modules.curvature.profile import curvature_profile
from modules.pmf.distributions import TruncatedPmf
from modules.semigroup.generator import build_generator
from modules.semigroup.grid_function import FunctionLike, GridFunction, as_values, is_interior


# 내부 지지 판정 폭 (상단 사이트 수)
INTERIOR_MARGIN = 2

# 연쇄법칙 반례 판정 상대 차이
CHAIN_RULE_GAP = 1e-6


# ===== 점별 정의 =====

def gamma1_pointwise(V: TruncatedPmf, f: FunctionLike, g: FunctionLike) -> GridFunction:
    """
    Γ₁(f,g) = ½[L_V(fg) − (f L_V g + g L_V f)]

    괄호 안 덧셈 순서 덕분에 (f,g) 교환에 대해 비트 단위로 대칭입니다.
    """
    size = V.N + 1
    fv, gv = as_values(f, size, "f"), as_values(g, size, "g")
    Q = build_generator(V)
    values = 0.5 * (Q.apply(fv * gv) - (fv * Q.apply(gv) + gv * Q.apply(fv)))
    return GridFunction(values)


def gamma2_pointwise(V: TruncatedPmf, f: FunctionLike, g: FunctionLike) -> GridFunction:
    """Γ₂(f,g) = ½[L_V Γ₁(f,g) − (Γ₁(f, L_V g) + Γ₁(g, L_V f))]"""
    size = V.N + 1
    fv, gv = as_values(f, size, "f"), as_values(g, size, "g")
    Q = build_generator(V)
    Lf, Lg = Q.apply(fv), Q.apply(gv)

    g1 = gamma1_pointwise(V, fv, gv).values
    cross = gamma1_pointwise(V, fv, Lg).values + gamma1_pointwise(V, gv, Lf).values
    return GridFunction(0.5 * (Q.apply(g1) - cross))


# ===== 닫힌 형태 =====

def gamma1_mean(V: TruncatedPmf, f: FunctionLike, g: FunctionLike) -> float:
    """Σ_x V(x) Δf(x) Δg(x)"""
    size = V.N + 1
    fv, gv = as_values(f, size, "f"), as_values(g, size, "g")
    return math.fsum(V.values[:-1] * np.diff(fv) * np.diff(gv))


def _require_interior(values: np.ndarray, name: str) -> None:
    if not is_interior(values, INTERIOR_MARGIN):
        raise WindowError(
            f"{name}: 상단 {INTERIOR_MARGIN} 사이트에서 Δ{name} ≠ 0 (내부 지지 아님)",
            {"tail": np.asarray(values)[-INTERIOR_MARGIN - 1:].tolist()},
        )


def gamma2_mean(V: TruncatedPmf, f: FunctionLike, g: FunctionLike) -> float:
    """
    Σ V(x)[Lf(x+1) Lg(x+1) + E(x) Δf(x) Δg(x)]

    Lf(x) = f(x+1) − 2f(x) + f(x−1) 는 이산 라플라시안입니다.
    지표 이동이 윈도우 안에서 정확하려면 f, g 가 상단 두 사이트에서
    평평해야 합니다.

    Raises:
        WindowError: 내부 지지가 아닌 f 또는 g
    """
    size = V.N + 1
    if size < 3:
        raise ShapeError(f"윈도우가 너무 작습니다: N={V.N}")
    fv, gv = as_values(f, size, "f"), as_values(g, size, "g")
    _require_interior(fv, "f")
    _require_interior(gv, "g")

    v = V.values
    d2f = fv[2:] - 2.0 * fv[1:-1] + fv[:-2]
    d2g = gv[2:] - 2.0 * gv[1:-1] + gv[:-2]
    E = curvature_profile(V)

    laplace_part = v[:-2] * d2f * d2g
    curvature_part = v[:-1] * E * np.diff(fv) * np.diff(gv)
    return math.fsum(np.concatenate((laplace_part, curvature_part)))


# ===== 항등식 =====

def one_step_commutation_residual(V: TruncatedPmf, f: FunctionLike) -> GridFunction:
    """
    L_V f(x+1) − L_V f(x) = Lf(x+1) − Lf(x)·V(x−1)/V(x) − E(x)Δf(x) 의 잔차

    x = 0..N−2 에서 평가합니다 (x+1 < N 이라 절단 영향 없음).
    x = 0 의 Lf(0)·V(−1)/V(0) 항은 0 입니다.
    """
    size = V.N + 1
    if size < 3:
        raise ShapeError(f"윈도우가 너무 작습니다: N={V.N}")
    fv = as_values(f, size, "f")
    v = V.values

    LVf = build_generator(V).apply(fv)
    lhs = LVf[1:-1] - LVf[:-2]

    # Lf(x) (x = 1..N−1), Lf(0) 자리는 0 가중이라 0 으로 채움
    lap = np.zeros(size)
    lap[1:-1] = fv[2:] - 2.0 * fv[1:-1] + fv[:-2]
    back_ratio = np.concatenate(([0.0], v[:-1] / v[1:]))

    E = curvature_profile(V)
    rhs = lap[1:-1] - lap[:-2] * back_ratio[:-2] - E[:-1] * np.diff(fv)[:-1]
    return GridFunction(lhs - rhs)


def product_rule_sides(
    V: TruncatedPmf, f: FunctionLike, g: FunctionLike, h: FunctionLike
) -> tuple[float, float]:
    """
    변형 곱 규칙 양변

    Returns:
        (Σ V Γ₁(f, gh), Σ V Δf Δg h(·+1) + Σ V Δf Δh g)
    """
    size = V.N + 1
    fv = as_values(f, size, "f")
    gv = as_values(g, size, "g")
    hv = as_values(h, size, "h")
    v = V.values[:-1]

    lhs = gamma1_mean(V, fv, gv * hv)
    df = np.diff(fv)
    rhs = math.fsum(np.concatenate((
        v * df * np.diff(gv) * hv[1:],
        v * df * np.diff(hv) * gv[:-1],
    )))
    return lhs, rhs


def chain_rule_counterexample(V: TruncatedPmf, seed: int = 0) -> dict:
    """
    Σ V Γ₁(v(f), f) ≠ Σ V v′(f) Γ₁(f,f) 인 (v = exp, f) 탐색

    선형 f = a·x 후보를 먼저 보고, 없으면 무작위 보행을 시도합니다.

    Returns:
        dict: found, a (또는 None), lhs, rhs, relative_gap, f
    """
    size = V.N + 1
    x = np.arange(size, dtype=float)
    rng = np.random.default_rng(seed)

    candidates = [("linear", a, a * x) for a in (1.0, 0.5, 2.0)]
    candidates += [("random", None, np.cumsum(rng.uniform(-1.0, 1.0, size))) for _ in range(10)]

    for kind, a, fv in candidates:
        lhs = gamma1_mean(V, np.exp(fv), fv)
        rhs = math.fsum(V.values * np.exp(fv) * gamma1_pointwise(V, fv, fv).values)
        gap = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)
        if gap > CHAIN_RULE_GAP:
            logger.debug(f"🔗 연쇄법칙 반례 ({kind}, a={a}): 상대차 {gap:.3e}")
            return {
                "found": True,
                "kind": kind,
                "a": a,
                "lhs": lhs,
                "rhs": rhs,
                "relative_gap": gap,
                "f": fv.tolist(),
            }

    logger.warning(f"⚠️ {V.label}: 연쇄법칙 반례를 찾지 못했습니다")
    return {"found": False, "kind": None, "a": None, "lhs": None, "rhs": None,
            "relative_gap": 0.0, "f": None}
