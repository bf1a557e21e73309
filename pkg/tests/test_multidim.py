"""
test_multidim.py - Z₊^d 곱측도 곡률 / Γ 합 / BE 테스트
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest
from scipy import stats

sys.path.insert(0, str(Path(__file__).parent.parent))

from exceptions import InvalidParameterError, ShapeError, WindowError
from modules.pmf import pmf_bernoulli_sum, pmf_poisson
from modules.curvature import c_log_concave_constant, curvature_profile
from modules.gamma_calculus import gamma1_mean, gamma2_mean, random_interior_function
from modules.multidim import (
    GridPmfD,
    commutation_residual_d,
    eeij,
    esym_matrix,
    esym_psd_certify,
    gamma_sums_d,
    integrated_be_check_d,
    is_interior_d,
    logsob_counterexample_probe,
    logsob_gap_term,
    make_interior_d,
    product_pmf,
    random_interior_function_d,
)


def _tilted(rho: float, n: int = 8) -> GridPmfD:
    """곱이 아닌 상자 pmf: Π₂(x₁)Π₃(x₂)e^{ρx₁x₂} 정규화"""
    x = np.arange(n)
    logv = stats.poisson.logpmf(x, 2.0)[:, None] + stats.poisson.logpmf(x, 3.0)[None, :]
    logv = logv + rho * np.multiply.outer(x, x)
    values = np.exp(logv - np.max(logv))
    return GridPmfD(values=values / math.fsum(values.ravel()), label=f"tilt({rho})")


# ===== 기본 구조 =====

def test_product_box_and_limits():
    """곱측도 상자 모양, 꼬리 기록, 차원 한도"""
    V = product_pmf([pmf_poisson(1.0, 1e-6), pmf_bernoulli_sum([0.3, 0.6])])
    assert V.d == 2
    assert V.shape[1] == 3
    assert V.full_support
    with pytest.raises(ShapeError):
        product_pmf([pmf_bernoulli_sum([0.5])] * 5)


def test_unnormalized_grid_rejected():
    """합 + 상자 밖 질량 ≠ 1 이면 InvalidParameterError"""
    with pytest.raises(InvalidParameterError):
        GridPmfD(values=np.ones((2, 2)))


def test_one_dimensional_eeij_matches_profile():
    """d = 1 에서 E_00(x) = E(x)"""
    V1 = pmf_poisson(2.5)
    V = product_pmf([V1])
    profile = curvature_profile(V1)
    for x in range(V1.N):
        assert eeij(V, (x,), 0, 0) == pytest.approx(profile[x], rel=1e-12)


@pytest.mark.parametrize("lam", [0.7, 2.0, 4.5])
def test_one_dimensional_esym_vanishes_on_poisson(lam):
    """d = 1, Π_λ, c = 1/λ 에서 E^sym(y) = 0 (모든 y)"""
    V = product_pmf([pmf_poisson(lam, 1e-10)])
    for y in range(V.shape[0]):
        M = esym_matrix(V, (y,), 1.0 / lam)
        assert M.shape == (1, 1)
        assert abs(M[0, 0]) <= 1e-13


def test_make_interior_d():
    """위쪽 면 두 칸 평탄화"""
    f = np.arange(25, dtype=float).reshape(5, 5)
    g = make_interior_d(f)
    assert is_interior_d(g)
    assert not is_interior_d(f)
    assert g[4, 4] == f[2, 2]


# ===== E^sym 인증 =====

@pytest.mark.parametrize("lams", [(1.0, 2.0), (0.5, 1.5, 3.0)])
def test_product_poisson_psd_certificate(lams):
    """곱 포아송: c = min 1/λ 에서 인증, 1.2배에서 실패"""
    V = product_pmf([pmf_poisson(lam, 1e-8) for lam in lams])
    c = min(1.0 / lam for lam in lams)
    assert esym_psd_certify(V, c)["certified"]
    failed = esym_psd_certify(V, 1.2 * c)
    assert not failed["certified"]
    assert failed["tag"] == "eq:Edef"


# ===== Γ 합 =====

@pytest.mark.parametrize("seed", range(4))
def test_gamma2_identity(seed):
    """내부 지지 f 에서 Σ V Γ₂ = 혼합 제곱 + 곡률 하한 항 (곱/비곱 모두)"""
    rng = np.random.default_rng(seed)
    for V in (product_pmf([pmf_poisson(2.0, 1e-8), pmf_poisson(1.0, 1e-8)]), _tilted(-0.1)):
        f = random_interior_function_d(rng, V.shape)
        sums = gamma_sums_d(V, f, f)
        rhs = sums["mixed_square"] + sums["gamma2_lower"]
        assert abs(sums["gamma2"] - rhs) <= 1e-9 * max(1.0, abs(sums["gamma2"]))


@pytest.mark.parametrize("seed", range(4))
def test_gamma_sums_tensorize_on_products(seed):
    """곱 포아송 + 분리형 f = a(x₁) + b(x₂): d차원 Γ 합 = 1차원 Γ 합의 질량 가중 합"""
    rng = np.random.default_rng(seed)
    V1, V2 = pmf_poisson(2.0, 1e-10), pmf_poisson(0.8, 1e-10)
    V = product_pmf([V1, V2])
    a = random_interior_function(rng, V1.N + 1)
    b = random_interior_function(rng, V2.N + 1)
    f = a[:, None] + b[None, :]
    m1, m2 = math.fsum(V1.values), math.fsum(V2.values)

    sums = gamma_sums_d(V, f, f)
    g1 = m2 * gamma1_mean(V1, a, a) + m1 * gamma1_mean(V2, b, b)
    g2 = m2 * gamma2_mean(V1, a, a) + m1 * gamma2_mean(V2, b, b)
    assert sums["gamma1"] == pytest.approx(g1, rel=1e-10)
    assert abs(sums["gamma2"] - g2) <= 1e-9 * max(1.0, abs(g2))


def test_gamma_sums_require_interior():
    """평탄하지 않은 f 는 WindowError"""
    V = product_pmf([pmf_poisson(1.0, 1e-6), pmf_poisson(1.0, 1e-6)])
    f = np.arange(V.values.size, dtype=float).reshape(V.shape)
    with pytest.raises(WindowError):
        gamma_sums_d(V, f, f)


@pytest.mark.parametrize("seed", range(3))
def test_commutation_residual_d(seed):
    """d차원 한 걸음 교환 항등식 잔차 ≤ 1e-12·척도"""
    rng = np.random.default_rng(seed)
    for V in (product_pmf([pmf_poisson(1.5, 1e-8), pmf_poisson(2.5, 1e-8)]), _tilted(0.05)):
        f = np.log(random_interior_function_d(rng, V.shape))
        result = commutation_residual_d(V, f)
        assert result["max_residual"] <= 1e-12 * result["scale"]


@pytest.mark.parametrize("seed", range(5))
def test_logsob_gap_nonnegative_for_products(seed):
    """곱측도에서 로그-소볼레프 차이 항 ≥ 0"""
    rng = np.random.default_rng(seed)
    factors = [pmf_poisson(2.0, 1e-8), pmf_bernoulli_sum([0.2, 0.5, 0.7])]
    V = product_pmf(factors)
    c = min(c_log_concave_constant(F) for F in factors)
    for _ in range(10):
        f = random_interior_function_d(rng, V.shape)
        gap = logsob_gap_term(V, f, c)
        assert gap >= -1e-12 * max(1.0, abs(gap))


# ===== 적분형 BE =====

def test_integrated_be_d2_and_d3():
    """d = 2, 3 곱측도에서 c = min c_inf 의 BE / 푸앵카레 위반 없음"""
    boxes = [
        [pmf_poisson(2.0, 1e-8), pmf_poisson(1.0, 1e-8)],
        [pmf_poisson(1.0, 1e-6), pmf_bernoulli_sum([0.3, 0.6, 0.5]), pmf_poisson(0.5, 1e-6)],
    ]
    for factors in boxes:
        V = product_pmf(factors)
        c = min(c_log_concave_constant(F) for F in factors)
        result = integrated_be_check_d(V, c, trials=10, seed=3)
        assert result["certified"]
        assert result["passed"], (result["violations"][:2], result["poincare_violations"][:2])
        assert result["extremal_ratio"] >= c - 1e-8


def test_integrated_be_d_violated_above_min_inverse_mean():
    """곱 포아송 Π₂⊗Π₁ 에서 c = 1.2·min 1/λ 는 위반 발견"""
    lams = (2.0, 1.0)
    V = product_pmf([pmf_poisson(lam, 1e-12) for lam in lams])
    c = 1.2 * min(1.0 / lam for lam in lams)
    result = integrated_be_check_d(V, c, trials=10, seed=5)
    assert not result["passed"]
    assert result["violations"]
    assert not result["certified"]
    assert result["extremal_ratio"] < c


def test_counterexample_probe_is_exploratory():
    """비곱측도 탐색은 판정 없이 보고"""
    result = logsob_counterexample_probe(samples=5, seed=0)
    assert result["exploratory"] is True
    assert len(result["cases"]) == 3
    for case in result["cases"]:
        assert {"rho", "c", "min_gap", "negative_found"} <= set(case)
