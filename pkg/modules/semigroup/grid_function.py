"""
grid_function.py - 격자 함수 타입

{0,…,N} 위의 실수값 함수 f, g, f_t 를 표현합니다.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from exceptions import DomainError, ShapeError


# 엔트로피 계열 함수값 하한
POSITIVITY_FLOOR = 1e-300


@dataclass(frozen=True)
class GridFunction:
    """윈도우 위 함수값 (읽기 전용)"""
    values: np.ndarray
    positive: bool = field(init=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise ShapeError(f"격자 함수는 1차원이어야 합니다: shape={values.shape}")
        if not np.all(np.isfinite(values)):
            raise DomainError("격자 함수값에 유한하지 않은 항목이 있습니다")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "positive", bool(np.all(values > POSITIVITY_FLOOR)))

    @property
    def N(self) -> int:
        return self.values.size - 1


FunctionLike = Union[GridFunction, np.ndarray, Sequence[float]]


def as_values(f: FunctionLike, size: Optional[int] = None, name: str = "f") -> np.ndarray:
    """GridFunction 또는 배열을 float 배열로 (크기 검사 포함)"""
    values = f.values if isinstance(f, GridFunction) else np.asarray(f, dtype=float)
    if values.ndim != 1:
        raise ShapeError(f"{name}: 1차원 배열이 필요합니다")
    if size is not None and values.size != size:
        raise ShapeError(f"{name}: 길이 {values.size} ≠ 윈도우 {size}")
    return values


def require_positive(f: FunctionLike, size: Optional[int] = None, name: str = "f") -> np.ndarray:
    """양수 함수값 검사 (항목 > 1e-300)"""
    values = as_values(f, size, name)
    if not np.all(values > POSITIVITY_FLOOR):
        bad = np.nonzero(~(values > POSITIVITY_FLOOR))[0]
        raise DomainError(
            f"{name}: 양수가 아닌 함수값 (x={bad[:5].tolist()})",
            {"sites": bad.tolist()},
        )
    return values


# ===== 무작위 시험 함수 =====

def random_walk_values(
    rng: np.random.Generator,
    size: int,
    max_step: float = 1.0,
    bound: float = 3.0,
) -> np.ndarray:
    """
    유계 무작위 보행 w (|Δw| ≤ max_step, w ∈ [−bound, bound])

    절단은 1-립시츠이므로 보행의 립시츠 상수가 유지됩니다.
    exp(w) 는 e^{[−3,3]} 범위의 양수 시험 함수가 됩니다.
    """
    steps = rng.uniform(-max_step, max_step, size=size - 1)
    start = rng.uniform(-1.0, 1.0)
    walk = np.concatenate(([start], start + np.cumsum(steps)))
    return np.clip(walk, -bound, bound)


def make_interior(values: np.ndarray, margin: int = 2) -> np.ndarray:
    """상단 margin 개 사이트에서 Δf = 0 이 되도록 값 고정"""
    out = np.array(values, dtype=float)
    if out.size > margin:
        out[-margin:] = out[-margin - 1]
    return out


def is_interior(values: np.ndarray, margin: int = 2) -> bool:
    """상단 margin 개 사이트의 Δf 가 정확히 0 인지"""
    tail = np.asarray(values)[-margin - 1:]
    return bool(np.all(tail == tail[0]))
