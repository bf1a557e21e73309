"""
entropy.py - 엔트로피 / 분산 / 상대 엔트로피 모듈

V-가중 범함수와 크기 편향 변환을 계산합니다.
가중치는 윈도우로 재정규화한 V/ΣV 를 씁니다.

주요 기능:
- entropy: Ent_V(f) = Σ w f log f − μ log μ (μ = Σ w f)
- variance: var_V(f)
- relative_entropy: D(p‖q) (윈도우 정렬 후)
- size_bias_transform: p̂(x) = K p(x+1) V(x)/V(x+1)
- scaled_fisher: Σ p(x)(p(x+1)V(x)/(p(x)V(x+1)) − 1)²

사용법:
    from modules.functionals.entropy import entropy, relative_entropy

    Ent = entropy(V, f)
    D = relative_entropy(pmf_poisson(1.0), pmf_poisson(2.0))
"""

import math
from typing import Union

import numpy as np
from scipy import special

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from exceptions import DegenerateInputError, DomainError, WindowError

from modules.curvature.profile import require_full_support
from modules.pmf.distributions import TruncatedPmf
from modules.semigroup.grid_function import FunctionLike, as_values, require_positive


PmfLike = Union[TruncatedPmf, np.ndarray]


def window_weights(V: TruncatedPmf) -> np.ndarray:
    """V/ΣV"""
    require_full_support(V)
    return V.normalized()


def entropy(V: TruncatedPmf, f: FunctionLike) -> float:
    """
    Ent_V(f)

    항별로 kl_div(f, μ) = f log(f/μ) − f + μ ≥ 0 을 더하므로
    합이 음수가 되지 않습니다.

    Raises:
        DomainError: f 에 양수가 아닌 값
    """
    w = window_weights(V)
    fv = require_positive(f, V.N + 1, "f")
    mu = math.fsum(w * fv)
    return math.fsum(w * special.kl_div(fv, mu))


def variance(V: TruncatedPmf, f: FunctionLike) -> float:
    """var_V(f) = Σ w (f − μ)²"""
    w = window_weights(V)
    fv = as_values(f, V.N + 1, "f")
    mu = math.fsum(w * fv)
    return math.fsum(w * (fv - mu) ** 2)


def _aligned(p: PmfLike, q: PmfLike) -> tuple[np.ndarray, np.ndarray]:
    """두 pmf 를 같은 윈도우 0..M 으로"""
    if isinstance(p, TruncatedPmf) and isinstance(q, TruncatedPmf):
        M = max(p.N, q.N)
        return p.extend(M), q.extend(M)
    pv = p.values if isinstance(p, TruncatedPmf) else np.asarray(p, dtype=float)
    qv = q.values if isinstance(q, TruncatedPmf) else np.asarray(q, dtype=float)
    if pv.size != qv.size:
        raise WindowError(f"윈도우 길이 불일치: {pv.size} ≠ {qv.size}")
    return pv, qv


def relative_entropy(p: PmfLike, q: PmfLike) -> float:
    """
    D(p‖q) = Σ p log(p/q)

    Raises:
        DomainError: p > 0 인데 q = 0 인 점이 있을 때
    """
    pv, qv = _aligned(p, q)
    bad = (pv > 0.0) & (qv <= 0.0)
    if np.any(bad):
        raise DomainError(
            "절대연속 위반: p > 0, q = 0 인 점이 있습니다",
            {"sites": np.nonzero(bad)[0][:10].tolist()},
        )
    return math.fsum(special.rel_entr(pv, qv))


def size_bias_transform(p: TruncatedPmf, V: TruncatedPmf) -> tuple[TruncatedPmf, float]:
    """
    가중 크기 편향 변환

    K = (Σ p(x+1)V(x)/V(x+1))^{-1}, p̂(x) = K p(x+1)V(x)/V(x+1)

    Returns:
        (p̂, K): p̂ 는 0..N−1 위에서 합이 1

    Raises:
        DegenerateInputError: 모든 질량이 0 에 있을 때 (K 정의 불가)
    """
    require_full_support(V)
    M = max(p.N, V.N)
    pv, vv = p.extend(M), V.extend(M)
    if not np.all(vv > 0.0):
        raise WindowError(f"{V.label}: 윈도우 {M} 까지 확장할 수 없습니다")

    shifted = pv[1:] * vv[:-1] / vv[1:]
    total = math.fsum(shifted)
    if total <= 0.0:
        raise DegenerateInputError(f"{p.label}: 질량이 모두 0 에 있어 K 가 정의되지 않습니다")

    K = 1.0 / total
    hat = shifted / total
    return TruncatedPmf(values=hat, label=f"hat({p.label})", eps_tail=p.eps_tail), K


def scaled_fisher(p: TruncatedPmf, V: TruncatedPmf) -> float:
    """
    Σ_x p(x) (p(x+1)V(x) / (p(x)V(x+1)) − 1)²

    f = p/V 일 때 Σ V (Δf)²/f 와 같습니다 (x < N).
    """
    require_full_support(V)
    if p.N > V.N:
        raise WindowError(f"p 윈도우 {p.N} 가 V 윈도우 {V.N} 보다 큽니다")
    pv = require_positive(p.extend(V.N), V.N + 1, "p")
    v = V.values
    score = pv[1:] * v[:-1] / (pv[:-1] * v[1:])
    return math.fsum(pv[:-1] * (score - 1.0) ** 2)
