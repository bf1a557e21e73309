"""
auxiliary.py - 꼬리 경계 보조 함수

h(s) = (1+s) log(1+s) − s, k(u) = u log(1+u)/4,
φ(u) = u e^u − e^u + 1, w(U; s) 를 배열 단위로 계산합니다.
"""

from typing import Union

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from exceptions import DomainError


ArrayLike = Union[float, np.ndarray]


def _nonnegative(value: ArrayLike, name: str) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if np.any(arr < 0.0) or not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} 는 유한한 0 이상 값이어야 합니다")
    return arr


def _unwrap(arr: np.ndarray) -> ArrayLike:
    return float(arr) if arr.ndim == 0 else arr


def bennett_h(s: ArrayLike) -> ArrayLike:
    """h(s) = (1+s) log(1+s) − s, h(0) = 0"""
    s = _nonnegative(s, "s")
    return _unwrap((1.0 + s) * np.log1p(s) - s)


def chernoff_k(u: ArrayLike) -> ArrayLike:
    """k(u) = u log(1+u) / 4"""
    u = _nonnegative(u, "u")
    return _unwrap(u * np.log1p(u) / 4.0)


def chernoff_phi(u: ArrayLike) -> ArrayLike:
    """φ(u) = u e^u − e^u + 1 ≥ 0 (모든 실수 u)"""
    u = np.asarray(u, dtype=float)
    # (u − 1)e^u + 1 = u·expm1(u) − expm1(u) + u, 0 근처 상쇄 완화
    em1 = np.expm1(u)
    return _unwrap(u * em1 - em1 + u)


def lemma_w(U: ArrayLike, s: ArrayLike) -> ArrayLike:
    """
    w(U; s) = −(U/s − 1) log U + (1 − U)(1 − 1/s)

    U, s > 0 에서 w ≤ 0, 등호는 U = 1 에서만.
    """
    U = np.asarray(U, dtype=float)
    s = np.asarray(s, dtype=float)
    if np.any(U <= 0.0) or np.any(s <= 0.0):
        raise DomainError("lemma_w: U, s 는 양수여야 합니다")
    return _unwrap(-(U / s - 1.0) * np.log(U) + (1.0 - U) * (1.0 - 1.0 / s))

