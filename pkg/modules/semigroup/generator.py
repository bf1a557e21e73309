"""
generator.py - 출생-사망 생성자 모듈

절단 Q-행렬(상단 N 에서 출생률 0, 반사)과 L_V, L_V* 작용, 자기수반성 검사를 제공합니다.

주요 기능:
- GeneratorMatrix: 하향률 V(x−1)/V(x), 상향률 1 (x=N 에서 0)
- apply_L: L_V f(x) = Δf(x) − V(x−1)/V(x)·(f(x) − f(x−1))
- apply_L_adjoint: L_V* p = p·Q
- verify_self_adjoint: Σ V f L g = Σ V (L f) g = −Σ V Δf Δg

사용법:
    from modules.semigroup.generator import build_generator, apply_L

    Q = build_generator(pmf_poisson(2.0))
    Lf = apply_L(V, GridFunction(np.arange(V.N + 1)))
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from exceptions import ShapeError

from modules.curvature.profile import require_full_support
from modules.pmf.distributions import TruncatedPmf
from modules.semigroup.grid_function import FunctionLike, GridFunction, as_values


@dataclass(frozen=True)
class GeneratorMatrix:
    """
    삼중대각 Q-행렬 (띠 저장)

    down[x] = Q[x, x−1] (down[0] = 0), up[x] = Q[x, x+1] (up[N] = 0),
    대각은 행 합이 0 이 되도록 −(up + down).
    """
    down: np.ndarray
    up: np.ndarray

    @property
    def size(self) -> int:
        return self.up.size

    @property
    def diag(self) -> np.ndarray:
        return -(self.up + self.down)

    @property
    def uniformization_rate(self) -> float:
        return float(np.max(self.up + self.down))

    def dense(self) -> np.ndarray:
        """조밀 행렬"""
        return (
            np.diag(self.diag)
            + np.diag(self.up[:-1], 1)
            + np.diag(self.down[1:], -1)
        )

    def apply(self, f: np.ndarray) -> np.ndarray:
        """Q f (함수에 작용)"""
        df = np.diff(f)
        out = np.zeros_like(f, dtype=float)
        out[:-1] += self.up[:-1] * df
        out[1:] -= self.down[1:] * df
        return out

    def apply_left(self, p: np.ndarray) -> np.ndarray:
        """p Q (측도에 작용), 인접 쌍 사이 순흐름으로 계산"""
        net = p[1:] * self.down[1:] - p[:-1] * self.up[:-1]
        out = np.zeros_like(p, dtype=float)
        out[:-1] += net
        out[1:] -= net
        return out


def build_generator(V: TruncatedPmf) -> GeneratorMatrix:
    """
    V 에 대한 절단 생성자

    Args:
        V: 완전 지지 TruncatedPmf

    Returns:
        GeneratorMatrix (상세균형 V(x)·1 = V(x+1)·V(x)/V(x+1))
    """
    require_full_support(V)
    v = V.values
    down = np.concatenate(([0.0], v[:-1] / v[1:]))
    up = np.ones_like(v)
    up[-1] = 0.0
    return GeneratorMatrix(down=down, up=up)


def apply_L(V: TruncatedPmf, f: FunctionLike) -> GridFunction:
    """
    L_V f

    x = N 에서는 전방 차분 항이 빠집니다 (절단).

    Example:
        >>> V = pmf_poisson(2.0)
        >>> apply_L(V, np.arange(V.N + 1)).values[3]    # 1 − 3/2
        -0.5
    """
    values = as_values(f, V.N + 1)
    return GridFunction(build_generator(V).apply(values))


def apply_L_adjoint(V: TruncatedPmf, p: Union[TruncatedPmf, np.ndarray]) -> np.ndarray:
    """
    L_V* p = p·Q

    p 의 윈도우가 V 보다 짧으면 extend() 로 맞춥니다.
    """
    if isinstance(p, TruncatedPmf):
        if p.N > V.N:
            raise ShapeError(f"p 윈도우 {p.N} 가 V 윈도우 {V.N} 보다 큽니다")
        values = p.extend(V.N)
    else:
        values = as_values(p, V.N + 1, "p")
    return build_generator(V).apply_left(values)


def verify_self_adjoint(V: TruncatedPmf, f: FunctionLike, g: FunctionLike) -> tuple[float, float, float]:
    """
    자기수반성 세 값

    Returns:
        (Σ V f L g, Σ V (L f) g, −Σ V Δf Δg)
    """
    size = V.N + 1
    fv, gv = as_values(f, size, "f"), as_values(g, size, "g")
    Q = build_generator(V)
    v = V.values
    first = math.fsum(v * fv * Q.apply(gv))
    second = math.fsum(v * Q.apply(fv) * gv)
    third = -math.fsum(v[:-1] * np.diff(fv) * np.diff(gv))
    return first, second, third
