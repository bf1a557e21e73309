"""
entropy_flow.py - 반군 흐름 위 엔트로피 양

f_t = e^{tL_V} f 를 따라
    Θ(t) = Σ V f_t log f_t,  ψ(t) = Σ V (f_t(x+1) log(f_t(x+1)/f_t(x)) − f_t(x+1) + f_t(x))
와 그 도함수를 계산하고 ψ′ ≤ c Θ′ 를 확인합니다.

Θ′, ψ′ 는 닫힌 형태와 중심 유한차분 두 가지로 제공합니다.
"""

import math
from typing import Optional

import numpy as np
from scipy import special

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from config import settings
from exceptions import DomainError

from modules.curvature.profile import curvature_profile, require_full_support
from modules.pmf.distributions import TruncatedPmf
from modules.semigroup.evolution import evolve_function
from modules.semigroup.generator import build_generator
from modules.semigroup.grid_function import FunctionLike, require_positive
from modules.tail_decay.auxiliary import lemma_w


def theta(V: TruncatedPmf, f: FunctionLike) -> float:
    """Σ V f log f"""
    require_full_support(V)
    fv = require_positive(f, V.N + 1, "f")
    return math.fsum(V.values * special.xlogy(fv, fv))


def theta_prime(V: TruncatedPmf, f: FunctionLike) -> float:
    """Θ′ = −Σ V Δf Δlog f ≤ 0"""
    require_full_support(V)
    fv = require_positive(f, V.N + 1, "f")
    return -math.fsum(V.values[:-1] * np.diff(fv) * np.diff(np.log(fv)))


def psi(V: TruncatedPmf, f: FunctionLike) -> float:
    """ψ = Σ V kl_div(f(x+1), f(x)) (원래 가중치)"""
    require_full_support(V)
    fv = require_positive(f, V.N + 1, "f")
    return math.fsum(V.values[:-1] * special.kl_div(fv[1:], fv[:-1]))


def psi_prime_terms(V: TruncatedPmf, f: FunctionLike) -> dict:
    """
    ψ′ 의 두 항

        curvature: −Σ V E(x) Δf(x) log(f(x+1)/f(x))
        w_term:    Σ V f(x+1) w(f(x)f(x+2)/f(x+1)²; f(x)/f(x+1)) ≤ 0

    w_term 은 x ≤ N−2 에서 합하고, psi_prime 과의 차이는 boundary 로 돌려줍니다.
    """
    require_full_support(V)
    fv = require_positive(f, V.N + 1, "f")
    if fv.size < 3:
        raise DomainError(f"윈도우가 너무 작습니다: N={V.N}")
    v = V.values
    E = curvature_profile(V)
    dlog = np.diff(np.log(fv))

    curvature = -math.fsum(v[:-1] * E * np.diff(fv) * dlog)
    U = fv[:-2] * fv[2:] / fv[1:-1] ** 2
    s = fv[:-2] / fv[1:-1]
    w_term = math.fsum(v[:-2] * fv[1:-1] * lemma_w(U, s))
    boundary = psi_prime(V, fv) - curvature - w_term
    return {"curvature": curvature, "w_term": w_term, "boundary": boundary}


def flow_derivatives(
    V: TruncatedPmf,
    f0: FunctionLike,
    t: float,
    h: float = 1e-3,
    tol: Optional[float] = None,
) -> dict:
    """
    t 에서 Θ′, ψ′ 의 중심 유한차분

    Returns:
        dict: theta, psi, theta_prime_fd, psi_prime_fd, theta_prime_closed, psi_prime_closed
    """
    tol = settings.INTEGRATOR_TOL if tol is None else tol
    if t < h:
        raise DomainError(f"t={t} 는 차분 간격 h={h} 이상이어야 합니다")

    f_mid = evolve_function(V, f0, t, tol).values
    f_lo = evolve_function(V, f0, t - h, tol).values
    f_hi = evolve_function(V, f_mid, h, tol).values

    return {
        "theta": theta(V, f_mid),
        "psi": psi(V, f_mid),
        "theta_prime_fd": (theta(V, f_hi) - theta(V, f_lo)) / (2.0 * h),
        "psi_prime_fd": (psi(V, f_hi) - psi(V, f_lo)) / (2.0 * h),
        "theta_prime_closed": theta_prime(V, f_mid),
        "psi_prime_closed": psi_prime(V, f_mid),
    }


def psi_prime(V: TruncatedPmf, f: FunctionLike) -> float:
    """
    ψ′ = Σ V [L_V f(x+1) log(f(x+1)/f(x)) + L_V f(x)(1 − f(x+1)/f(x))]

    d/dt kl_div(f(x+1), f(x)) 를 그대로 합한 값입니다.
    """
    require_full_support(V)
    fv = require_positive(f, V.N + 1, "f")
    Lf = build_generator(V).apply(fv)
    ratio = fv[1:] / fv[:-1]
    return math.fsum(V.values[:-1] * (Lf[1:] * np.log(ratio) + Lf[:-1] * (1.0 - ratio)))


def flow_comparison(V: TruncatedPmf, f: FunctionLike, c: float) -> float:
    """c Θ′ − ψ′. c ≤ c_inf 이면 0 이상입니다."""
    return c * theta_prime(V, f) - psi_prime(V, f)
