"""
gamma_d.py - Z₊^d 생성자와 Γ 합 모듈

    L_V f(x) = Σ_i (f(x + e_i) − f(x)) − V(x − e_i)/V(x) (f(x) − f(x − e_i))

위쪽 면에서는 e_i 방향 상승률이 0 (반사)입니다.

주요 기능:
- apply_L_d, gamma1_pointwise_d
- gamma_sums_d: Σ V Γ₁, 정확한 Σ V Γ₂, 곡률 하한 항, 혼합 2차 차분 제곱 항
- commutation_residual_d: L_V f(x + e_j) − L_V f(x) 항등식 잔차
- logsob_gap_term: Σ_y Σ_ij E^sym_ij(y) (f(y) − f(y − e_j))(log f(y) − log f(y − e_i))
"""

import math

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from exceptions import DomainError, ShapeError, WindowError

from modules.multidim.curvature_d import esym_field
from modules.multidim.grid import (
    FunctionLikeD,
    GridFunctionD,
    GridPmfD,
    as_values_d,
    backward_diff,
    forward_diff,
    is_interior_d,
    require_full_support_d,
    shift_down,
)


def _down_ratios(V: GridPmfD) -> list:
    """r_i(x) = V(x − e_i)/V(x)"""
    v = V.values
    return [shift_down(v, i) / v for i in range(V.d)]


def apply_L_d(V: GridPmfD, f: FunctionLikeD) -> GridFunctionD:
    """L_V f (상자 위, 반사 경계)"""
    require_full_support_d(V)
    fv = as_values_d(f, V.shape)
    out = np.zeros(V.shape)
    for i, r in enumerate(_down_ratios(V)):
        out += forward_diff(fv, i) - r * backward_diff(fv, i)
    return GridFunctionD(out)


def gamma1_pointwise_d(V: GridPmfD, f: FunctionLikeD, g: FunctionLikeD) -> GridFunctionD:
    """Γ₁(f,g) = ½[L(fg) − (f Lg + g Lf)]"""
    fv, gv = as_values_d(f, V.shape, "f"), as_values_d(g, V.shape, "g")
    L = lambda h: apply_L_d(V, h).values
    return GridFunctionD(0.5 * (L(fv * gv) - (fv * L(gv) + gv * L(fv))))


def _require_interior(values: np.ndarray, name: str) -> None:
    if not is_interior_d(values):
        raise WindowError(f"{name}: 위쪽 면 2칸에서 증분이 0 이 아닙니다 (내부 지지 아님)")


def gamma_sums_d(V: GridPmfD, f: FunctionLikeD, g: FunctionLikeD) -> dict:
    """
    d차원 Γ 합

    Returns:
        dict:
            gamma1: Σ_x V Σ_j Δ_j f Δ_j g
            gamma2: 정점별 정의로 계산한 Σ V Γ₂(f,g)
            gamma2_lower: Σ_y Σ_ij V(y−e_j)E_ij(y−e_j)(f(y) − f(y−e_i))(g(y) − g(y−e_j))
            mixed_square: Σ_x V Σ_ij Δ_iΔ_j f Δ_iΔ_j g
        내부 지지 f, g 에서 gamma2 = mixed_square + gamma2_lower 입니다.

    Raises:
        WindowError: 내부 지지가 아닌 f 또는 g
    """
    require_full_support_d(V)
    fv, gv = as_values_d(f, V.shape, "f"), as_values_d(g, V.shape, "g")
    _require_interior(fv, "f")
    _require_interior(gv, "g")
    v = V.values
    d = V.d

    fwd_f = [forward_diff(fv, j) for j in range(d)]
    fwd_g = [forward_diff(gv, j) for j in range(d)]
    gamma1 = math.fsum(np.concatenate([(v * fwd_f[j] * fwd_g[j]).ravel() for j in range(d)]))

    # 정점별 Γ₂
    L = lambda h: apply_L_d(V, h).values
    G1 = lambda a, b: gamma1_pointwise_d(V, a, b).values
    g2_point = 0.5 * (L(G1(fv, gv)) - (G1(fv, L(gv)) + G1(gv, L(fv))))
    gamma2 = math.fsum((v * g2_point).ravel())

    # 곡률 하한 항 (c = 0 의 E^sym 과 후방 차분)
    E0 = esym_field(V, 0.0)
    back_f = np.stack([backward_diff(fv, i) for i in range(d)], axis=-1)
    back_g = np.stack([backward_diff(gv, j) for j in range(d)], axis=-1)
    lower_terms = np.einsum("...ij,...i,...j->...", E0, back_f, back_g)
    gamma2_lower = math.fsum(lower_terms.ravel())

    mixed = []
    for i in range(d):
        for j in range(d):
            mixed.append((v * forward_diff(fwd_f[j], i) * forward_diff(fwd_g[j], i)).ravel())
    mixed_square = math.fsum(np.concatenate(mixed))

    return {
        "gamma1": gamma1,
        "gamma2": gamma2,
        "gamma2_lower": gamma2_lower,
        "mixed_square": mixed_square,
    }


def commutation_residual_d(V: GridPmfD, f: FunctionLikeD) -> dict:
    """
    L_V f(x + e_j) − L_V f(x)
        = Σ_i [L_ij f(x + e_i) − L_ij f(x) V(x − e_i)/V(x) − E_ij(x)(f(x + e_j) − f(x + e_j − e_i))]

    모든 좌표 x_k ≤ N_k − 2 인 x 에서 평가합니다.
    L_ij f(x) = f(x + e_j) − f(x + e_j − e_i) − f(x) + f(x − e_i).

    Returns:
        dict: max_residual, scale (양변 항의 최대 크기)
    """
    require_full_support_d(V)
    fv = as_values_d(f, V.shape)
    if any(n < 3 for n in V.shape):
        raise ShapeError(f"상자가 너무 작습니다: {V.shape}")
    d = V.d
    sub = tuple(n - 2 for n in V.shape)

    # 아래쪽 1칸 0 패딩: padded[x + o + 1] = a[x + o]
    pad = [(1, 0)] * d
    Pf = np.pad(fv, pad)
    Pv = np.pad(V.values, pad)
    PL = np.pad(apply_L_d(V, fv).values, pad)

    def at(P: np.ndarray, offset: np.ndarray) -> np.ndarray:
        return P[tuple(slice(o + 1, o + 1 + s) for o, s in zip(offset, sub))]

    zero = np.zeros(d, dtype=int)
    units = [np.eye(d, dtype=int)[k] for k in range(d)]
    vx = at(Pv, zero)

    def L_ij(base: np.ndarray, i: int, j: int) -> np.ndarray:
        ei, ej = units[i], units[j]
        return at(Pf, base + ej) - at(Pf, base + ej - ei) - at(Pf, base) + at(Pf, base - ei)

    max_residual, scale = 0.0, 1.0
    for j in range(d):
        ej = units[j]
        lhs = at(PL, ej) - at(PL, zero)
        rhs = np.zeros(sub)
        for i in range(d):
            ei = units[i]
            r_i = at(Pv, -ei) / vx
            E_ij = at(Pv, ej - ei) / at(Pv, ej) - r_i
            terms = (
                L_ij(ei, i, j),
                L_ij(zero, i, j) * r_i,
                E_ij * (at(Pf, ej) - at(Pf, ej - ei)),
            )
            rhs += terms[0] - terms[1] - terms[2]
            scale = max(scale, *(float(np.max(np.abs(t))) for t in terms))
        max_residual = max(max_residual, float(np.max(np.abs(lhs - rhs))))
        scale = max(scale, float(np.max(np.abs(lhs))))

    return {"max_residual": max_residual, "scale": scale}


def logsob_gap_term(V: GridPmfD, f: FunctionLikeD, c: float) -> float:
    """
    Σ_y Σ_ij E^sym_ij(y) (f(y) − f(y − e_j)) (log f(y) − log f(y − e_i))

    곱측도에서는 E^sym 이 대각이고 log 가 단조라 0 이상입니다.

    Raises:
        DomainError: 양수가 아닌 f
        WindowError: 내부 지지가 아닌 f
    """
    require_full_support_d(V)
    fv = as_values_d(f, V.shape)
    if not np.all(fv > 0.0):
        raise DomainError("f 는 양수여야 합니다")
    _require_interior(fv, "f")

    E = esym_field(V, c)
    logf = np.log(fv)
    back_f = np.stack([backward_diff(fv, j) for j in range(V.d)], axis=-1)
    back_log = np.stack([backward_diff(logf, i) for i in range(V.d)], axis=-1)
    terms = np.einsum("...ij,...i,...j->...", E, back_log, back_f)
    return math.fsum(terms.ravel())
