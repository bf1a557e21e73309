"""
test_gamma_calculus.py - Γ₁ / Γ₂ 와 적분형 BE(c) 테스트
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent.parent))

from config import settings
from exceptions import WindowError
from modules.pmf import pmf_bernoulli_sum, pmf_poisson, sample_ulc_pmf
from modules.curvature import c_log_concave_constant
from modules.semigroup import random_walk_values
from modules.gamma_calculus import (
    be_ratio_minimum,
    chain_rule_counterexample,
    gamma1_mean,
    gamma1_pointwise,
    gamma2_mean,
    gamma2_pointwise,
    integrated_be_check,
    one_step_commutation_residual,
    product_rule_sides,
    random_interior_function,
)


# ===== 닫힌 형태 vs 점별 정의 =====

@hyp_settings(max_examples=60, deadline=None)
@given(seed=st.integers(min_value=0, max_value=100_000))
def test_closed_forms_match_pointwise_sums(seed):
    """Σ V Γ₁ 과 Σ V Γ₂ 의 점별 합이 닫힌 형태와 일치 (내부 지지 f, g)"""
    rng = np.random.default_rng(seed)
    V = sample_ulc_pmf(rng)
    f = random_interior_function(rng, V.N + 1)
    g = random_interior_function(rng, V.N + 1)

    g1_sum = math.fsum(V.values * gamma1_pointwise(V, f, g).values)
    g1_closed = gamma1_mean(V, f, g)
    assert abs(g1_sum - g1_closed) <= 1e-9 * max(1.0, abs(g1_closed))

    g2_sum = math.fsum(V.values * gamma2_pointwise(V, f, g).values)
    g2_closed = gamma2_mean(V, f, g)
    assert abs(g2_sum - g2_closed) <= 1e-9 * max(1.0, abs(g2_closed))


def test_gamma1_pointwise_symmetric():
    """Γ₁(f,g) = Γ₁(g,f) 비트 단위"""
    V = pmf_poisson(2.0)
    rng = np.random.default_rng(0)
    f = random_walk_values(rng, V.N + 1)
    g = random_walk_values(rng, V.N + 1)
    np.testing.assert_array_equal(gamma1_pointwise(V, f, g).values, gamma1_pointwise(V, g, f).values)


def test_gamma2_mean_requires_interior():
    """상단이 평평하지 않은 f 는 WindowError"""
    V = pmf_poisson(2.0)
    with pytest.raises(WindowError):
        gamma2_mean(V, np.arange(V.N + 1, dtype=float), np.ones(V.N + 1))


@pytest.mark.parametrize("seed", range(5))
def test_one_step_commutation(seed):
    """L_V f(x+1) − L_V f(x) 항등식 잔차 ≤ 1e-12·척도"""
    rng = np.random.default_rng(seed)
    V = sample_ulc_pmf(rng)
    f = random_walk_values(rng, V.N + 1)
    residual = one_step_commutation_residual(V, f).values
    ratios = V.values[:-1] / V.values[1:]
    scale = (1.0 + np.max(np.abs(f))) * (1.0 + np.max(ratios))
    assert np.max(np.abs(residual)) <= 1e-12 * 10.0 * scale


# ===== 곱 규칙 / 연쇄 규칙 =====

def test_product_rule_sides_agree():
    """Σ V Γ₁(f, gh) 의 변형 곱 규칙"""
    V = pmf_poisson(3.0)
    rng = np.random.default_rng(4)
    f, g, h = (random_walk_values(rng, V.N + 1) for _ in range(3))
    lhs, rhs = product_rule_sides(V, f, g, h)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)


def test_chain_rule_fails_on_poisson():
    """연속 연쇄 규칙이 이산 Γ₁ 에서는 깨지는 예가 존재"""
    result = chain_rule_counterexample(pmf_poisson(2.0))
    assert result["found"]
    assert result["relative_gap"] > 1e-6


# ===== 적분형 BE(c) =====

@pytest.mark.parametrize("seed", range(20))
def test_integrated_be_holds_at_c_inf(seed):
    """ULC 표본에서 c = c_inf 의 BE(c) 위반 없음"""
    V = sample_ulc_pmf(np.random.default_rng(100 + seed))
    result = integrated_be_check(V, c_log_concave_constant(V), trials=settings.BE_TRIALS, seed=seed)
    assert result["passed"], result["violations"][:3]
    assert result["tag"] == "eq:dbec"


def test_integrated_be_violated_above_c_inf_on_poisson():
    """Π₂ 에서 c = 1.2 · c_inf 는 위반 발견"""
    V = pmf_poisson(2.0, 1e-20)
    result = integrated_be_check(V, 1.2 * 0.5, trials=20, seed=1)
    assert not result["passed"]
    assert result["extremal_ratio"] < 0.6


def test_be_ratio_minimum_bounds():
    """최소 비율 ≥ c_inf, 포아송에서는 1/λ 에 근접"""
    V = pmf_poisson(2.0, 1e-20)
    result = be_ratio_minimum(V)
    assert result["ratio"] >= 0.5 - 1e-10
    assert result["ratio"] < 0.6
    f = result["f"]
    assert gamma1_mean(V, f, f) == pytest.approx(1.0, rel=1e-8)
    assert gamma2_mean(V, f, f) == pytest.approx(result["ratio"], rel=1e-8)


def test_be_on_finite_support():
    """베르누이 합에서도 c_inf 의 BE(c) 성립"""
    V = pmf_bernoulli_sum([0.3, 0.5, 0.7, 0.2, 0.6])
    result = integrated_be_check(V, c_log_concave_constant(V), trials=30, seed=2)
    assert result["passed"]
