"""
distributions.py - 절단 확률질량함수 모듈

이 파일은 {0,…,N} 위의 확률질량함수(TruncatedPmf)와 기본 생성자를 제공합니다.
N 은 해석적 꼬리 질량이 eps_tail 이하가 되는 가장 작은 인덱스입니다.

주요 기능:
- TruncatedPmf (불변, 꼬리 질량 추적, 완전 지지 플래그)
- 포아송 / 음이항 / 기하 분포 (로그 영역 계산)
- 베르누이 합 (포아송-이항, 반복 합성곱)
- 가중치 정규화

사용법:
    from modules.pmf.distributions import pmf_poisson, pmf_bernoulli_sum

    V = pmf_poisson(2.0, eps_tail=1e-12)
    print(V.N, V.tail_mass, V.full_support)
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import special, stats

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from config import settings
from exceptions import InvalidParameterError, ShapeError
from logger import logger


# ===== 상수 정의 =====
NORMALIZATION_TOL = 1e-12   # sum + tail 이 1 과 다를 수 있는 허용폭
MAX_EPS_TAIL = 1e-3         # 꼬리 허용치 상한


@dataclass(frozen=True)
class TruncatedPmf:
    """
    {0,…,N} 위의 절단 확률질량함수

    values 는 읽기 전용 배열로 고정되며, full_support 는 생성 시 한 번 계산됩니다.
    extender 가 있으면 더 큰 윈도우에서 같은 분포를 정확히 다시 계산할 수 있습니다.
    """
    values: np.ndarray
    tail_mass: float = 0.0                 # N 너머 질량의 해석적 상한
    label: str = "pmf"
    eps_tail: float = 1e-12                # 생성 시 설정한 꼬리 허용치
    extender: Optional[Callable[[int], np.ndarray]] = field(
        default=None, repr=False, compare=False
    )
    full_support: bool = field(init=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise ShapeError(f"pmf 값은 비어있지 않은 1차원 배열이어야 합니다: shape={values.shape}")
        if not np.all(np.isfinite(values)) or np.any(values < 0.0):
            raise InvalidParameterError(f"{self.label}: 음수 또는 유한하지 않은 확률")

        tail = float(self.tail_mass)
        if not math.isfinite(tail) or tail < 0.0:
            raise InvalidParameterError(f"{self.label}: 꼬리 질량이 음수입니다 ({tail})")
        if tail > self.eps_tail:
            raise InvalidParameterError(
                f"{self.label}: 꼬리 질량 {tail:.3e} > eps_tail {self.eps_tail:.3e}"
            )

        total = math.fsum(values) + tail
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise InvalidParameterError(
                f"{self.label}: 정규화 실패 (sum + tail = {total!r})",
                {"sum": total - tail, "tail_mass": tail},
            )

        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "tail_mass", tail)
        object.__setattr__(self, "full_support", bool(np.all(values > 0.0)))

    # ===== 기본 속성 =====

    @property
    def N(self) -> int:
        """윈도우 상단 인덱스"""
        return self.values.size - 1

    @property
    def mass(self) -> float:
        """윈도우 안 질량"""
        return math.fsum(self.values)

    @property
    def mean(self) -> float:
        """윈도우 위 평균 Σ x V(x)"""
        return math.fsum(np.arange(self.values.size) * self.values)

    def normalized(self) -> np.ndarray:
        """윈도우로 재정규화한 가중치 V/ΣV"""
        return self.values / self.mass

    def extend(self, M: int) -> np.ndarray:
        """
        0..M 윈도우의 값 반환

        M ≤ N 이면 잘라서, 해석적 계열이면 다시 계산해서,
        유한 지지면 0 으로 채워서 돌려줍니다.
        """
        if M <= self.N:
            return np.array(self.values[: M + 1])
        if self.extender is not None:
            return np.asarray(self.extender(M), dtype=float)
        if self.tail_mass > 0.0:
            logger.debug(f"{self.label}: extender 없이 0 채움 (꼬리 {self.tail_mass:.1e})")
        return np.concatenate([self.values, np.zeros(M - self.N)])


# ===== 검증 헬퍼 =====

def _resolve_eps(eps_tail: Optional[float]) -> float:
    eps = settings.EPS_TAIL if eps_tail is None else float(eps_tail)
    if not (0.0 < eps <= MAX_EPS_TAIL):
        raise InvalidParameterError(f"eps_tail 은 (0, {MAX_EPS_TAIL}] 범위여야 합니다: {eps}")
    return eps


def first_index_below(sf: Callable[[np.ndarray], np.ndarray], guess: int, eps: float) -> int:
    """sf(N) ≤ eps 인 가장 작은 N (sf 는 단조 감소)"""
    upper = max(int(guess), 8)
    while True:
        grid = np.arange(upper + 1)
        hits = np.nonzero(sf(grid) <= eps)[0]
        if hits.size:
            return int(hits[0])
        upper *= 2


# ===== 포아송 =====

def _poisson_values(lam: float, M: int) -> np.ndarray:
    x = np.arange(M + 1, dtype=float)
    return np.exp(special.xlogy(x, lam) - lam - special.gammaln(x + 1.0))


def pmf_poisson(lam: float, eps_tail: Optional[float] = None) -> TruncatedPmf:
    """
    포아송 분포 Π_λ

    Args:
        lam: 평균 λ > 0
        eps_tail: 꼬리 질량 허용치 (기본 settings.EPS_TAIL)

    Returns:
        TruncatedPmf (값은 로그 영역에서 계산 후 지수화)

    Example:
        >>> V = pmf_poisson(1.0)
        >>> round(V.values[0], 6)
        0.367879
    """
    eps = _resolve_eps(eps_tail)
    lam = float(lam)
    if not math.isfinite(lam) or lam <= 0.0:
        raise InvalidParameterError(f"포아송 평균은 양의 유한값이어야 합니다: {lam}")

    guess = math.ceil(lam + 12.0 * math.sqrt(lam) + 40.0)
    N = first_index_below(lambda k: stats.poisson.sf(k, lam), guess, eps)

    return TruncatedPmf(
        values=_poisson_values(lam, N),
        tail_mass=float(stats.poisson.sf(N, lam)),
        label=f"poisson({lam:g})",
        eps_tail=eps,
        extender=lambda M: _poisson_values(lam, M),
    )


# ===== 음이항 / 기하 =====

def _negbin_values(n: float, p: float, M: int) -> np.ndarray:
    x = np.arange(M + 1, dtype=float)
    log_values = (
        special.gammaln(n + x) - special.gammaln(n) - special.gammaln(x + 1.0)
        + x * math.log(p) + n * math.log1p(-p)
    )
    return np.exp(log_values)


def pmf_negative_binomial(n: float, p: float, eps_tail: Optional[float] = None) -> TruncatedPmf:
    """
    음이항 분포: V(x) ∝ C(n+x−1, x) p^x (1−p)^n

    Args:
        n: 형태 파라미터 > 0 (실수 허용)
        p: 성공 확률 ∈ (0,1)
        eps_tail: 꼬리 질량 허용치

    Returns:
        TruncatedPmf (평균 np/(1−p))
    """
    eps = _resolve_eps(eps_tail)
    n, p = float(n), float(p)
    if not math.isfinite(n) or n <= 0.0:
        raise InvalidParameterError(f"음이항 n 은 양수여야 합니다: {n}")
    if not (0.0 < p < 1.0):
        raise InvalidParameterError(f"음이항 p 는 (0,1) 범위여야 합니다: {p}")

    # scipy 의 nbinom 은 (1−p) 를 성공 확률로 쓴다
    mean = n * p / (1.0 - p)
    sd = math.sqrt(n * p) / (1.0 - p)
    guess = math.ceil(mean + 12.0 * sd + 40.0)
    N = first_index_below(lambda k: stats.nbinom.sf(k, n, 1.0 - p), guess, eps)

    return TruncatedPmf(
        values=_negbin_values(n, p, N),
        tail_mass=float(stats.nbinom.sf(N, n, 1.0 - p)),
        label=f"negbin({n:g},{p:g})",
        eps_tail=eps,
        extender=lambda M: _negbin_values(n, p, M),
    )


def pmf_geometric(p: float, eps_tail: Optional[float] = None) -> TruncatedPmf:
    """기하 분포 V(x) = p^x (1−p) (음이항 n=1)"""
    return pmf_negative_binomial(1.0, p, eps_tail)


# ===== 유한 지지 =====

def pmf_bernoulli_sum(probs: Sequence[float]) -> TruncatedPmf:
    """
    독립 베르누이 합(포아송-이항) 분포

    Args:
        probs: 각 시행의 성공 확률 리스트, 모두 (0,1)

    Returns:
        0..n 위의 정확한 pmf (tail_mass = 0)

    Example:
        >>> pmf_bernoulli_sum([0.5, 0.5]).values
        array([0.25, 0.5 , 0.25])
    """
    probs = [float(q) for q in probs]
    if not probs:
        raise InvalidParameterError("베르누이 확률 리스트가 비어 있습니다")
    for q in probs:
        if not (0.0 < q < 1.0):
            raise InvalidParameterError(f"베르누이 확률은 (0,1) 범위여야 합니다: {q}")

    values = np.array([1.0])
    for q in probs:
        values = np.convolve(values, [1.0 - q, q])

    return TruncatedPmf(
        values=values,
        tail_mass=0.0,
        label=f"bernoullisum({','.join(f'{q:g}' for q in probs)})",
        eps_tail=settings.EPS_TAIL,
    )


def pmf_from_weights(weights: Sequence[float], label: str = "weights") -> TruncatedPmf:
    """
    음이 아닌 가중치를 정규화한 pmf

    0 인 항목이 있으면 full_support 가 False 로 표시됩니다.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise InvalidParameterError("가중치는 비어있지 않은 1차원 리스트여야 합니다")
    if not np.all(np.isfinite(w)) or np.any(w < 0.0):
        raise InvalidParameterError("가중치는 유한한 비음수여야 합니다")
    total = math.fsum(w)
    if total <= 0.0:
        raise InvalidParameterError("양수 가중치가 하나 이상 필요합니다")

    return TruncatedPmf(
        values=w / total,
        tail_mass=0.0,
        label=label,
        eps_tail=settings.EPS_TAIL,
    )
