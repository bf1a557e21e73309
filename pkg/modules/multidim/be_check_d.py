"""
be_check_d.py - d차원 적분형 BE(c) / 푸앵카레 검증 모듈

주요 기능:
- be_ratio_minimum_d: 램프 min(x_k, N_k − 2) 와 무작위 함수 기저 위 레일리-리츠 최소 비율
- integrated_be_check_d: 무작위 시행 + 최소화 후보, 푸앵카레 따름정리 동시 검사
- logsob_counterexample_probe: 비곱측도에서 E^sym PSD 인데 로그-소볼레프 차이 항이 음수인 예 탐색

사용법:
    from modules.multidim.be_check_d import integrated_be_check_d

    report = integrated_be_check_d(V, c=0.25, trials=100, seed=3)
"""

import math
from typing import Optional

import numpy as np
from scipy import linalg, stats

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from config import settings
from exceptions import NumericError
from logger import log_execution_time, logger

from modules.multidim.curvature_d import esym_psd_certify
from modules.multidim.gamma_d import gamma_sums_d, logsob_gap_term
from modules.multidim.grid import (
    GridPmfD,
    make_interior_d,
    random_interior_function_d,
    require_full_support_d,
)


BE_REL_TOL_D = 1e-10
RITZ_RANDOM_BASIS = 4


def _ramps(shape: tuple) -> list:
    """축별 램프 min(x_k, N_k − 2)"""
    grids = np.meshgrid(*[np.arange(n, dtype=float) for n in shape], indexing="ij")
    return [make_interior_d(g) for g in grids]


def be_ratio_minimum_d(V: GridPmfD, seed: Optional[int] = None) -> dict:
    """
    기저 {램프} ∪ {무작위 내부 함수} 위 min ΣVΓ₂/ΣVΓ₁ (일반화 고윳값)

    Returns:
        dict: ratio, f (ΣVΓ₁ = 1 로 정규화)
    """
    require_full_support_d(V)
    seed = settings.DEFAULT_SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    basis = _ramps(V.shape)
    basis += [random_interior_function_d(rng, V.shape) for _ in range(RITZ_RANDOM_BASIS)]

    k = len(basis)
    A, B = np.empty((k, k)), np.empty((k, k))
    for a in range(k):
        for b in range(a, k):
            sums = gamma_sums_d(V, basis[a], basis[b])
            A[a, b] = A[b, a] = sums["gamma2"]
            B[a, b] = B[b, a] = sums["gamma1"]

    try:
        w, vecs = linalg.eigh(A, B, subset_by_index=[0, 0])
    except linalg.LinAlgError as e:
        raise NumericError(f"{V.label}: 레일리-리츠 고윳값 계산 실패 ({e})") from e

    f = np.tensordot(vecs[:, 0], np.stack(basis), axes=1)
    return {"ratio": float(w[0]), "f": f}


def _weighted_variance(V: GridPmfD, f: np.ndarray) -> float:
    w = (V.values / math.fsum(V.values.ravel())).ravel()
    fv = f.ravel()
    mu = math.fsum(w * fv)
    return math.fsum(w * (fv - mu) ** 2)


@log_execution_time
def integrated_be_check_d(
    V: GridPmfD,
    c: float,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
) -> dict:
    """
    Σ V Γ₂(f,f) ≥ c Σ V Γ₁(f,f) 와 var_V(f) ≤ (1/c) Σ V Γ₁(f,f)/ΣV 무작위 검증

    시행: 상수 함수, 무작위 내부 함수 trials 개, 레일리-리츠 최소화 함수.

    Returns:
        dict: tag, c, certified, trials, violations, worst_margin,
              poincare_violations, extremal_ratio, passed
    """
    require_full_support_d(V)
    trials = settings.BE_TRIALS if trials is None else trials
    seed = settings.DEFAULT_SEED if seed is None else seed
    psd = esym_psd_certify(V, c)
    mass = math.fsum(V.values.ravel())

    candidates = [np.ones(V.shape)]
    for ss in np.random.SeedSequence(seed).spawn(trials):
        candidates.append(random_interior_function_d(np.random.default_rng(ss), V.shape))
    extremal = be_ratio_minimum_d(V, seed)
    candidates.append(extremal["f"])

    violations, poincare_violations = [], []
    worst_margin = math.inf
    for idx, f in enumerate(candidates):
        sums = gamma_sums_d(V, f, f)
        g1, g2 = sums["gamma1"], sums["gamma2"]
        margin = g2 - c * g1
        tol = BE_REL_TOL_D * max(1.0, abs(g2), abs(c * g1))
        worst_margin = min(worst_margin, margin / g1 if g1 > 0 else margin)
        if margin < -tol:
            violations.append({"trial": idx, "margin": margin, "tolerance": tol})

        if c > 0.0:
            var = _weighted_variance(V, f)
            dirichlet = g1 / mass / c
            if var > dirichlet + BE_REL_TOL_D * max(1.0, var):
                poincare_violations.append({"trial": idx, "variance": var, "bound": dirichlet})

    passed = not violations and not poincare_violations
    if passed:
        logger.info(f"✅ BE_d({c:.6g}) {V.label}: 위반 없음 ({len(candidates)}회)")
    else:
        logger.warning(
            f"⚠️ BE_d({c:.6g}) {V.label}: BE 위반 {len(violations)}건, "
            f"푸앵카레 위반 {len(poincare_violations)}건"
        )

    return {
        "tag": "eq:dbecd",
        "label": V.label,
        "c": float(c),
        "certified": psd["certified"],
        "trials": len(candidates),
        "violations": violations,
        "worst_margin": float(worst_margin),
        "poincare_violations": poincare_violations,
        "extremal_ratio": extremal["ratio"],
        "passed": passed,
    }


def _tilted_pmf(lams: tuple, rho: float, n: int) -> GridPmfD:
    """V(x) ∝ Π_{λ1}(x1) Π_{λ2}(x2) e^{ρ x1 x2} (상자 위 정규화)"""
    x = np.arange(n)
    logv = (stats.poisson.logpmf(x, lams[0])[:, None]
            + stats.poisson.logpmf(x, lams[1])[None, :]
            + rho * np.multiply.outer(x, x))
    values = np.exp(logv - np.max(logv))
    values /= math.fsum(values.ravel())
    return GridPmfD(values=values, label=f"tilt(rho={rho:g})")


def _best_certified_c(V: GridPmfD, upper: float, steps: int = 40) -> float:
    """PSD 인증이 유지되는 가장 큰 c (이분법)"""
    lo, hi = 0.0, upper
    if not esym_psd_certify(V, lo)["certified"]:
        return -math.inf
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if esym_psd_certify(V, mid)["certified"]:
            lo = mid
        else:
            hi = mid
    return lo


def logsob_counterexample_probe(samples: int, seed: int, box: int = 8) -> dict:
    """
    비곱측도에서 E^sym 이 PSD 인 최대 c 를 찾고 무작위 양수 f 로
    로그-소볼레프 차이 항의 최솟값을 찾는 탐색 (보고 전용)

    Returns:
        dict: exploratory, cases (rho 별 c, min_gap, negative_found)
    """
    rng = np.random.default_rng(seed)
    cases = []
    for rho in (-0.3, -0.1, 0.05):
        V = _tilted_pmf((2.0, 3.0), rho, box)
        c = _best_certified_c(V, upper=2.0)
        if not math.isfinite(c) or c <= 0.0:
            cases.append({"rho": rho, "c": None, "min_gap": None, "negative_found": False})
            continue
        gaps = [logsob_gap_term(V, random_interior_function_d(rng, V.shape), c) for _ in range(samples)]
        min_gap = float(min(gaps))
        cases.append({"rho": rho, "c": c, "min_gap": min_gap, "negative_found": min_gap < 0.0})
        logger.debug(f"🔍 rho={rho}: c={c:.6g}, 최소 차이 항 {min_gap:.3e}")

    return {"tag": "eq:logsobdiff", "exploratory": True, "samples": samples, "cases": cases}
