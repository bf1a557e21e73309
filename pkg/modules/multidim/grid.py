"""
grid.py - Z₊^d 격자 타입 모듈

상자 {0..N₁}×…×{0..N_d} 위의 pmf 와 함수, 축 이동/차분 헬퍼를 제공합니다.
V(y) 는 좌표 하나라도 −1 이면 0 으로 봅니다.

주요 기능:
- GridPmfD / GridFunctionD
- product_pmf: V(x) = Π_k V_k(x_k)
- shift_down / forward_diff / backward_diff (축별)
- make_interior_d / is_interior_d / random_interior_function_d

사용법:
    from modules.multidim.grid import product_pmf

    V = product_pmf([pmf_poisson(2.0), pmf_poisson(4.0)])
    print(V.d, V.shape)
"""

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence, Union

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from config import settings
from exceptions import DomainError, InvalidParameterError, NotFullSupportError, ShapeError

from modules.pmf.distributions import NORMALIZATION_TOL, TruncatedPmf


# 위쪽 면 평탄 폭 (셀 수)
INTERIOR_MARGIN_D = settings.BOX_MARGIN


def _check_box(shape: tuple) -> None:
    if len(shape) == 0 or len(shape) > settings.MAX_DIM:
        raise ShapeError(f"차원 d={len(shape)} 는 1..{settings.MAX_DIM} 범위여야 합니다")
    if any(n - 1 > settings.MAX_AXIS_N for n in shape):
        raise ShapeError(f"축 길이 {shape} 가 MAX_AXIS_N={settings.MAX_AXIS_N} 를 넘습니다")


@dataclass(frozen=True)
class GridPmfD:
    """상자 위 pmf (축별 꼬리 질량 포함)"""
    values: np.ndarray
    tails: tuple = ()
    label: str = "pmf_d"
    full_support: bool = field(init=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        _check_box(values.shape)
        if not np.all(np.isfinite(values)) or np.any(values < 0.0):
            raise InvalidParameterError(f"{self.label}: 음수 또는 유한하지 않은 확률")

        tails = tuple(float(t) for t in self.tails) or (0.0,) * values.ndim
        if len(tails) != values.ndim:
            raise ShapeError(f"꼬리 개수 {len(tails)} ≠ 차원 {values.ndim}")

        # 곱측도의 상자 밖 질량 1 − Π(1 − t_k)
        outside = 1.0 - math.prod(1.0 - t for t in tails)
        total = math.fsum(values.ravel()) + outside
        if abs(total - 1.0) > NORMALIZATION_TOL * max(1, values.ndim):
            raise InvalidParameterError(f"{self.label}: 정규화 실패 (합 + 꼬리 = {total!r})")

        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "tails", tails)
        object.__setattr__(self, "full_support", bool(np.all(values > 0.0)))

    @property
    def d(self) -> int:
        return self.values.ndim

    @property
    def shape(self) -> tuple:
        return self.values.shape

    def marginal(self, axis: int) -> np.ndarray:
        """axis 방향 주변분포 (상자 안)"""
        others = tuple(k for k in range(self.d) if k != axis)
        return self.values.sum(axis=others) if others else np.array(self.values)


@dataclass(frozen=True)
class GridFunctionD:
    """상자 위 함수값 (읽기 전용)"""
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if not np.all(np.isfinite(values)):
            raise DomainError("격자 함수값에 유한하지 않은 항목이 있습니다")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


FunctionLikeD = Union[GridFunctionD, np.ndarray]


def as_values_d(f: FunctionLikeD, shape: tuple, name: str = "f") -> np.ndarray:
    values = f.values if isinstance(f, GridFunctionD) else np.asarray(f, dtype=float)
    if values.shape != tuple(shape):
        raise ShapeError(f"{name}: shape {values.shape} ≠ 상자 {tuple(shape)}")
    return values


def require_full_support_d(V: GridPmfD) -> None:
    if not V.full_support:
        raise NotFullSupportError(f"{V.label}: 상자 안에 질량 0 인 점이 있습니다")


def product_pmf(factors: Sequence[TruncatedPmf]) -> GridPmfD:
    """
    곱측도 V(x) = Π_k V_k(x_k)

    Raises:
        NotFullSupportError: 완전 지지가 아닌 인자
        ShapeError: d 또는 축 길이 한도 초과
    """
    if not factors:
        raise ShapeError("인자가 하나 이상 필요합니다")
    for V in factors:
        if not V.full_support:
            raise NotFullSupportError(f"{V.label}: 완전 지지가 아닙니다")
    _check_box(tuple(V.N + 1 for V in factors))

    values = reduce(np.multiply.outer, [V.values for V in factors])
    return GridPmfD(
        values=values,
        tails=tuple(V.tail_mass for V in factors),
        label="x".join(V.label for V in factors),
    )


# ===== 축 연산 =====

def shift_down(a: np.ndarray, axis: int, steps: int = 1) -> np.ndarray:
    """b(x) = a(x − steps·e_axis), 좌표가 음수면 0"""
    out = np.zeros_like(a, dtype=float)
    n = a.shape[axis]
    if steps < n:
        dst = [slice(None)] * a.ndim
        src = [slice(None)] * a.ndim
        dst[axis] = slice(steps, None)
        src[axis] = slice(0, n - steps)
        out[tuple(dst)] = a[tuple(src)]
    return out


def forward_diff(a: np.ndarray, axis: int) -> np.ndarray:
    """a(x + e_axis) − a(x), 위쪽 면에서 0 (반사)"""
    pad = [(0, 0)] * a.ndim
    pad[axis] = (0, 1)
    return np.pad(np.diff(a, axis=axis), pad)


def backward_diff(a: np.ndarray, axis: int) -> np.ndarray:
    """a(x) − a(x − e_axis), x_axis = 0 에서 0"""
    pad = [(0, 0)] * a.ndim
    pad[axis] = (1, 0)
    return np.pad(np.diff(a, axis=axis), pad)


def _interior_index(shape: tuple) -> tuple:
    return np.ix_(*[np.minimum(np.arange(n), max(n - 1 - INTERIOR_MARGIN_D, 0)) for n in shape])


def make_interior_d(values: np.ndarray) -> np.ndarray:
    """f(x) ← f(min(x, N − 2)) (모든 위쪽 면에서 2칸 평탄)"""
    values = np.asarray(values, dtype=float)
    return np.array(values[_interior_index(values.shape)])


def is_interior_d(values: np.ndarray) -> bool:
    values = np.asarray(values)
    return bool(np.array_equal(values, values[_interior_index(values.shape)]))


def random_interior_function_d(rng: np.random.Generator, shape: tuple, bound: float = 3.0) -> np.ndarray:
    """exp(축별 누적 무작위 보행의 합, [−bound, bound] 절단), 위쪽 면 평탄"""
    d = len(shape)
    walk = rng.uniform(-1.0, 1.0, size=shape) / d
    for axis in range(d):
        walk = np.cumsum(walk, axis=axis)
    walk = np.clip(walk, -bound, bound)
    return np.exp(make_interior_d(walk))
