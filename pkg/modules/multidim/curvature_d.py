"""
curvature_d.py - 혼합 곡률 행렬 모듈

    E_ij(x) = V(x + e_j − e_i)/V(x + e_j) − V(x − e_i)/V(x)
    E^sym_ij(y) = V(y − e_i)V(y − e_j)/V(y) − V(y − e_i − e_j) − c·1{i=j}·V(y − e_j)

와 모든 y 에서의 양의 준정부호 인증을 계산합니다.

사용법:
    from modules.multidim.curvature_d import esym_psd_certify

    report = esym_psd_certify(product_pmf([pmf_poisson(2.0), pmf_poisson(4.0)]), c=0.25)
"""

from typing import Sequence

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from exceptions import WindowError
from logger import logger

from modules.multidim.grid import GridPmfD, require_full_support_d, shift_down


PSD_TOL = 1e-12


def _lookup(V: GridPmfD, point: Sequence[int]) -> float:
    """V(point), 음수 좌표면 0, 상자 밖이면 WindowError"""
    point = tuple(int(p) for p in point)
    if any(p < 0 for p in point):
        return 0.0
    if any(p >= n for p, n in zip(point, V.shape)):
        raise WindowError(f"{point} 가 상자 {V.shape} 밖입니다")
    return float(V.values[point])


def _unit(d: int, axis: int) -> np.ndarray:
    e = np.zeros(d, dtype=int)
    e[axis] = 1
    return e


def eeij(V: GridPmfD, x: Sequence[int], i: int, j: int) -> float:
    """
    E_ij(x) (x + e_j 가 상자 안이어야 함)

    d = 1 이면 curvature_profile 의 E(x) 와 같습니다.
    """
    require_full_support_d(V)
    x = np.asarray(x, dtype=int)
    ei, ej = _unit(V.d, i), _unit(V.d, j)
    top = _lookup(V, x + ej)
    return _lookup(V, x + ej - ei) / top - _lookup(V, x - ei) / _lookup(V, x)


def esym_matrix(V: GridPmfD, y: Sequence[int], c: float) -> np.ndarray:
    """d×d 대칭 행렬 E^sym(y)"""
    require_full_support_d(V)
    y = np.asarray(y, dtype=int)
    d = V.d
    units = [_unit(d, k) for k in range(d)]
    vy = _lookup(V, y)
    down = [_lookup(V, y - units[k]) for k in range(d)]

    M = np.empty((d, d))
    for i in range(d):
        for j in range(d):
            M[i, j] = down[i] * down[j] / vy - _lookup(V, y - units[i] - units[j])
        M[i, i] -= c * down[i]
    return M


def esym_field(V: GridPmfD, c: float) -> np.ndarray:
    """모든 y 에서의 E^sym(y), shape = (*상자, d, d)"""
    require_full_support_d(V)
    v = V.values
    d = V.d
    down = [shift_down(v, k) for k in range(d)]

    field = np.empty(v.shape + (d, d))
    for i in range(d):
        for j in range(i, d):
            both = shift_down(down[i], j)
            entry = down[i] * down[j] / v - both
            if i == j:
                entry = entry - c * down[j]
            field[..., i, j] = entry
            field[..., j, i] = entry
    return field


def esym_psd_certify(V: GridPmfD, c: float) -> dict:
    """
    모든 y 에서 λ_min(E^sym(y)) ≥ −1e-12 인지

    Returns:
        dict: tag, c, min_eigenvalue, worst_site, certified
    """
    eigs = np.linalg.eigvalsh(esym_field(V, c))
    mins = eigs[..., 0]
    flat = int(np.argmin(mins))
    worst = np.unravel_index(flat, mins.shape)
    min_eig = float(mins[worst])
    certified = min_eig >= -PSD_TOL

    if certified:
        logger.info(f"✅ {V.label}: E^sym PSD 인증 (c={c:.6g}, 최소 고윳값 {min_eig:.3e})")
    else:
        logger.warning(f"⚠️ {V.label}: E^sym 인증 실패 (c={c:.6g}, y={tuple(int(k) for k in worst)})")

    return {
        "tag": "eq:Edef",
        "label": V.label,
        "c": float(c),
        "min_eigenvalue": min_eig,
        "worst_site": [int(k) for k in worst],
        "certified": certified,
    }
