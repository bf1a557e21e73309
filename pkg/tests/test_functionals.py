"""
test_functionals.py - 엔트로피 범함수 / 변형 LSI / 최적 상수 테스트
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent.parent))

from config import settings
from exceptions import DomainError, PreconditionError
from modules.pmf import pmf_from_weights, pmf_poisson, sample_ulc_pmf
from modules.curvature import c_log_concave_constant
from modules.semigroup import random_walk_values
from modules.functionals import (
    entropy,
    entropy_gradient,
    flow_comparison,
    flow_derivatives,
    lsi_constant_estimate,
    lsi_verify,
    mlsi_rhs_bl,
    mlsi_rhs_caputo,
    mlsi_rhs_diff,
    mlsi_rhs_new,
    mlsi_rhs_new_gradient,
    phi_transform_entropy,
    poincare_constant,
    poincare_inequality_check,
    poincare_limit_defect,
    psi_prime_terms,
    relative_entropy,
    restated_lsi_sides,
    scaled_fisher,
    size_bias_transform,
)


def _positive_walk(rng, size):
    return np.exp(random_walk_values(rng, size))


# ===== 기본 범함수 =====

def test_entropy_of_constant_is_zero():
    """상수 함수의 엔트로피는 0"""
    V = pmf_poisson(2.0)
    assert entropy(V, np.full(V.N + 1, 3.0)) == pytest.approx(0.0, abs=1e-15)


def test_entropy_rejects_nonpositive():
    """양수가 아닌 f 는 DomainError"""
    V = pmf_poisson(2.0)
    f = np.ones(V.N + 1)
    f[3] = 0.0
    with pytest.raises(DomainError):
        entropy(V, f)


def test_relative_entropy_absolute_continuity():
    """q = 0 인 곳에 p 질량이 있으면 DomainError"""
    with pytest.raises(DomainError):
        relative_entropy(pmf_from_weights([1.0, 1.0]), pmf_from_weights([1.0, 0.0]))


def test_scaled_fisher_matches_density_form():
    """scaled_fisher = Σ V (Δf)²/f (f = p/V, x < N)"""
    V = pmf_poisson(2.0, 1e-20)
    p = pmf_poisson(1.0)
    f = p.extend(V.N) / V.values
    expected = math.fsum(V.values[:-1] * np.diff(f) ** 2 / f[:-1])
    assert scaled_fisher(p, V) == pytest.approx(expected, rel=1e-10)


# ===== 분해 / 순서 =====

@hyp_settings(max_examples=50, deadline=None)
@given(seed=st.integers(min_value=0, max_value=100_000))
def test_rhs_decomposition_and_ordering(seed):
    """caputo = new + diff, 0 ≤ new ≤ bl, Φ-변환 형태 = new"""
    rng = np.random.default_rng(seed)
    V = sample_ulc_pmf(rng)
    f = _positive_walk(rng, V.N + 1)

    new, diff = mlsi_rhs_new(V, f), mlsi_rhs_diff(V, f)
    caputo, bl = mlsi_rhs_caputo(V, f), mlsi_rhs_bl(V, f)
    scale = max(1.0, caputo, bl)

    assert abs(caputo - (new + diff)) <= 1e-12 * scale
    assert new >= 0.0 and diff >= 0.0
    assert bl >= new - 1e-12 * scale
    assert phi_transform_entropy(V, f) == pytest.approx(new, rel=1e-9, abs=1e-14)


def test_lsi_holds_on_random_corpus():
    """ULC 표본 LSI_TRIALS 개 × 무작위 f: Ent ≤ rhs_new / c_inf"""
    rng = np.random.default_rng(2024)
    for _ in range(settings.LSI_TRIALS):
        V = sample_ulc_pmf(rng)
        f = _positive_walk(rng, V.N + 1)
        report = lsi_verify(V, f)
        assert report.hypothesis_ok
        assert report.passed, report.gaps


@pytest.mark.parametrize("a", [-1.0, -0.5, 0.3, 1.0])
def test_lsi_sharp_on_exponential_family(a):
    """Π_λ 와 f = e^{ax} 에서 Ent = λ · rhs_new"""
    lam = 2.0
    V = pmf_poisson(lam, 1e-40)
    f = np.exp(a * np.arange(V.N + 1))
    ent = entropy(V, f)
    assert abs(ent - lam * mlsi_rhs_new(V, f)) <= 1e-8 * ent
    print(f"[PASS] a={a}: Ent={ent:.12g}")


def test_lsi_report_flags_large_c():
    """c > c_inf 이면 가정 위반으로 LSI 판정 생략"""
    V = pmf_poisson(2.0)
    f = np.exp(0.3 * np.arange(V.N + 1))
    report = lsi_verify(V, f, c=1.0)
    assert not report.hypothesis_ok
    assert report.passed


# ===== 재서술 형태 =====

@pytest.mark.parametrize("lam, mu", [(2.0, 1.0), (1.0, 2.0), (3.0, 0.5)])
def test_restated_form_equality_for_poissons(lam, mu):
    """p = Π_μ, V = Π_λ 에서 재서술 형태 등호, 좌변은 λ − μ + μ log(μ/λ)"""
    V = pmf_poisson(lam, 1e-40)
    p = pmf_poisson(mu, 1e-20)
    sides = restated_lsi_sides(p, V, 1.0 / lam)
    expected = lam - mu + mu * math.log(mu / lam)
    assert sides["lhs"] == pytest.approx(expected, rel=1e-9, abs=1e-12)
    assert sides["rhs"] == pytest.approx(sides["lhs"], rel=1e-9, abs=1e-12)
    assert sides["K"] == pytest.approx(lam / mu, rel=1e-9)


def test_size_bias_of_poisson_is_itself():
    """Π_μ 의 가중 크기 편향은 다시 Π_μ"""
    V = pmf_poisson(2.0, 1e-40)
    p = pmf_poisson(1.5, 1e-20)
    hat, K = size_bias_transform(p, V)
    np.testing.assert_allclose(hat.values, p.extend(hat.N), atol=1e-13)
    assert K == pytest.approx(2.0 / 1.5, rel=1e-12)


# ===== 최적 상수 =====

@pytest.mark.parametrize("lam", [0.5, 2.0, 10.0])
def test_poincare_constant_of_poisson(lam):
    """Π_λ 의 최적 푸앵카레 상수 = λ"""
    assert poincare_constant(pmf_poisson(lam)) == pytest.approx(lam, abs=1e-6)


def test_poincare_constant_below_inverse_curvature():
    """ULC 표본: 푸앵카레 상수 ≤ 1/c_inf"""
    rng = np.random.default_rng(31)
    for _ in range(30):
        V = sample_ulc_pmf(rng)
        assert poincare_constant(V) <= 1.0 / c_log_concave_constant(V) + 1e-8


def test_poincare_inequality_check():
    """c_inf 에서 무작위 검증 통과, c ≤ 0 은 PreconditionError"""
    V = pmf_poisson(2.0)
    result = poincare_inequality_check(V, trials=50, seed=3)
    assert result["passed"]
    assert result["worst_ratio"] <= 2.0 + 1e-8
    with pytest.raises(PreconditionError):
        poincare_inequality_check(V, c=0.0)


def test_lsi_constant_estimate_bracket():
    """λ − 1e-6 ≤ LSI 상수 하한 ≤ 1/c_inf + 1e-6 (Π₂)"""
    V = pmf_poisson(2.0)
    estimate = lsi_constant_estimate(V, restarts=2, seed=5)
    assert 2.0 - 1e-6 <= estimate <= 2.0 + 1e-6


def test_gradients_match_finite_differences():
    """Ent(e^u), rhs_new(e^u) 기울기 vs 중심 차분"""
    V = pmf_poisson(1.5)
    rng = np.random.default_rng(9)
    u = random_walk_values(rng, V.N + 1)
    h = 1e-6
    g_ent = entropy_gradient(V, u)
    g_rhs = mlsi_rhs_new_gradient(V, u)
    for k in (0, 1, V.N // 2, V.N):
        e = np.zeros_like(u)
        e[k] = h
        fd_ent = (entropy(V, np.exp(u + e)) - entropy(V, np.exp(u - e))) / (2 * h)
        fd_rhs = (mlsi_rhs_new(V, np.exp(u + e)) - mlsi_rhs_new(V, np.exp(u - e))) / (2 * h)
        assert g_ent[k] == pytest.approx(fd_ent, rel=1e-5, abs=1e-9)
        assert g_rhs[k] == pytest.approx(fd_rhs, rel=1e-5, abs=1e-9)


def test_poincare_limit_defect_is_cubic():
    """Ent(1+εg) − (ε²/2) var(g) = O(ε³)"""
    V = pmf_poisson(2.0)
    g = random_walk_values(np.random.default_rng(1), V.N + 1)
    bound = (2.0 * np.max(np.abs(g))) ** 3
    for eps in (1e-2, 1e-3):
        assert abs(poincare_limit_defect(V, g, eps)) <= bound * eps ** 3


# ===== 엔트로피 흐름 =====

def test_flow_derivatives_closed_vs_finite_difference():
    """Θ′, ψ′ 닫힌 형태 = 유한차분"""
    V = pmf_poisson(2.0)
    f0 = _positive_walk(np.random.default_rng(12), V.N + 1)
    d = flow_derivatives(V, f0, t=0.5)
    assert d["theta_prime_closed"] == pytest.approx(d["theta_prime_fd"], rel=1e-4, abs=1e-8)
    assert d["psi_prime_closed"] == pytest.approx(d["psi_prime_fd"], rel=1e-4, abs=1e-8)


@pytest.mark.parametrize("seed", range(10))
def test_flow_comparison_nonnegative(seed):
    """c ≤ c_inf 에서 cΘ′ − ψ′ ≥ 0, w 항 ≤ 0"""
    rng = np.random.default_rng(seed)
    V = sample_ulc_pmf(rng)
    f = _positive_walk(rng, V.N + 1)
    c = c_log_concave_constant(V)
    terms = psi_prime_terms(V, f)
    scale = max(1.0, abs(terms["curvature"]), abs(terms["w_term"]))
    assert terms["w_term"] <= 1e-12 * scale
    assert flow_comparison(V, f, c) >= -1e-10 * scale
