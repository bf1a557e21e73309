"""
test_tail_decay.py - 보조 함수 / 집중 부등식 / thinning 감쇠 / 초수축성 테스트
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from exceptions import AccuracyError, DomainError, PreconditionError, ShapeError
from modules.pmf import pmf_bernoulli_sum, pmf_poisson, sample_ulc_pmf
from modules.curvature import c_log_concave_constant
from modules.tail_decay import (
    bennett_h,
    charlier_constant,
    charlier_g0,
    check_family_consistency,
    chernoff_bound,
    chernoff_k,
    chernoff_phi,
    chernoff_scan,
    converged_hypercontractivity_trace,
    concentration_bound,
    concentration_report,
    exact_tail,
    hypercontractivity_trace,
    hypercontractivity_window,
    lemma_w,
    MAX_WINDOW,
    optimal_sigma,
    poisson_thinning_divergence,
    poisson_thinning_family,
    random_g0,
    RANDOM_G0_SUPPORT,
    thinning_decay_trace,
    weaker_bound,
)


# ===== 보조 함수 =====

def test_bennett_dominates_twice_k():
    """h(s) ≥ 2k(s) (0 < s ≤ 100)"""
    s = np.linspace(1e-4, 100.0, 10_000)
    assert np.all(bennett_h(s) >= 2.0 * chernoff_k(s) - 1e-12)
    assert bennett_h(0.0) == 0.0


def test_chernoff_phi_nonnegative():
    """φ(u) ≥ 0"""
    u = np.linspace(-20.0, 5.0, 2001)
    assert np.all(chernoff_phi(u) >= -1e-15)


def test_lemma_w_nonpositive():
    """w(U; s) ≤ 0, |w| 가 아주 작은 곳은 U ≈ 1 뿐"""
    U, s = np.meshgrid(np.linspace(0.05, 10.0, 200), np.linspace(0.05, 10.0, 200))
    w = lemma_w(U, s)
    assert np.all(w <= 1e-15)
    small = np.abs(w) <= 1e-12
    assert np.all(np.abs(U[small] - 1.0) <= 1e-6)


def test_auxiliary_domain_errors():
    """음수 인자는 DomainError"""
    with pytest.raises(DomainError):
        bennett_h(-1.0)
    with pytest.raises(DomainError):
        lemma_w(0.0, 1.0)


# ===== 집중 부등식 =====

@pytest.mark.parametrize("lam", [0.5, 2.0, 5.0])
def test_poisson_tails_below_bound(lam):
    """Π_λ, g = x: 꼬리 ≤ exp(−λ h(t/λ)) ≤ weaker 경계"""
    V = pmf_poisson(lam, 1e-20)
    x = np.arange(V.N + 1, dtype=float)
    report = concentration_report(V, x, list(range(1, 11)))
    assert report.hypothesis_ok
    assert report.passed, report.violations
    for t, tail, bh in zip(report.t_grid, report.exact_tail, report.bound_h):
        assert bh == pytest.approx(math.exp(-lam * bennett_h(t / lam)), rel=1e-12)
        assert tail <= bh + 1e-12


def test_ulc_corpus_tails():
    """ULC 표본에서 g = x 꼬리 경계 통과"""
    rng = np.random.default_rng(17)
    for _ in range(20):
        V = sample_ulc_pmf(rng)
        x = np.arange(V.N + 1, dtype=float)
        assert concentration_report(V, x, [0.5, 1.0, 2.0, 4.0]).passed


def test_exact_tail_integer_threshold():
    """정수 문턱에서 반올림으로 한 칸 밀리지 않음"""
    V = pmf_bernoulli_sum([0.5, 0.5])
    x = np.arange(3, dtype=float)
    # 평균 1, t = 1 → P(X ≥ 2) = 1/4
    assert exact_tail(V, x, 1.0) == pytest.approx(0.25)


def test_optimal_sigma_recovers_bound():
    """σ* = log(1 + ct) 에서 체르노프 경계 = exp(−h(ct)/c)"""
    for c in (0.2, 0.5, 1.0):
        for t in (0.5, 2.0, 7.0):
            sigma = optimal_sigma(c, t)
            assert chernoff_bound(c, t, sigma) == pytest.approx(concentration_bound(c, t), rel=1e-12)
            assert weaker_bound(c, t) >= concentration_bound(c, t)


def test_chernoff_equality_on_poisson():
    """Π₂, g = x 에서 H(σ) − H₀ = (e^σ − 1 − σ)/(cσ)"""
    V = pmf_poisson(2.0, 1e-40)
    x = np.arange(V.N + 1, dtype=float)
    scan = chernoff_scan(V, x, [0.1, 0.5, 1.0, 1.5], c=0.5)
    assert scan["passed"]
    for margin, bound in zip(scan["margin"], scan["bound"]):
        assert abs(margin) <= 1e-8 * max(1.0, bound)


def test_chernoff_requires_lipschitz():
    """sup|Δg| > 1 이면 PreconditionError"""
    V = pmf_poisson(2.0)
    with pytest.raises(PreconditionError):
        chernoff_scan(V, 2.0 * np.arange(V.N + 1), [0.5])


# ===== thinning 감쇠 =====

@pytest.mark.parametrize("lam, mu", [(2.0, 1.0), (1.0, 3.0)])
def test_thinning_matches_closed_form(lam, mu):
    """포아송 초기값: D(p_t‖V_t) 가 닫힌 형태와 일치하고 e^{−t} 감쇠 경계 통과"""
    p0 = pmf_poisson(mu, 1e-20)
    times = [0.01, 0.1, 0.5, 1.0, 2.0, 4.0]
    trace = thinning_decay_trace(p0, lam, times)
    assert trace["passed"]
    assert trace["tag"] == "eq:thind"
    for t, d in zip(trace["t"], trace["divergence"]):
        assert d == pytest.approx(poisson_thinning_divergence(lam, mu, t), abs=1e-8)


def test_thinning_non_poisson_initial():
    """베르누이 합 초기값도 감쇠 경계 통과"""
    p0 = pmf_bernoulli_sum([0.2, 0.7, 0.5, 0.9])
    trace = thinning_decay_trace(p0, 2.0, [0.05, 0.5, 1.0, 3.0])
    assert trace["passed"]
    assert all(m >= -1e-8 for m in trace["margin"])


def test_poisson_family_consistency():
    """포아송 족: 동역학 잔차 작고 E_t ≥ c_t"""
    family = poisson_thinning_family(2.0)
    check = check_family_consistency(family, 0.5, 25)
    assert check["dynamics_residual"] <= 1e-6
    assert check["curvature_ok"]
    assert family.rate_integral(1.3) == pytest.approx(1.3, rel=1e-10)


# ===== 초수축성 =====

@pytest.mark.parametrize("lam, p", [(2.0, 2.0), (1.0, 3.0)])
def test_charlier_degree_one_constant(lam, p):
    """1차 샤를리에: u(t) ≡ −C"""
    N = hypercontractivity_window(lam, p)
    trace = hypercontractivity_trace(lam, charlier_g0(lam, N), p, [0.05, 0.1, 0.2, 0.3])
    C = charlier_constant(lam, p)
    assert trace["passed"]
    assert trace["t"][0] == 0.0
    for u in trace["u"]:
        assert abs(u + C) <= 1e-8


@pytest.mark.parametrize("seed", range(5))
def test_random_low_degree_monotone(seed):
    """저차 샤를리에 조합 g₀ 에서 u(t) 비감소"""
    rng = np.random.default_rng(seed)
    lam, p = 2.0, 2.0
    a, b, c = rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(0.0, 0.3)

    def g0(n):
        return a + b * charlier_g0(lam, n, 1) - c * charlier_g0(lam, n, 2)

    slope = float(np.max(np.diff(g0(200))))
    N = hypercontractivity_window(lam, p, slope=slope)
    trace = hypercontractivity_trace(lam, g0(N), p, [0.05, 0.1, 0.2, 0.3])
    assert trace["passed"], trace["u"]


def test_hyper_domain_error():
    """p ≤ 1 은 DomainError"""
    with pytest.raises(DomainError):
        hypercontractivity_trace(2.0, np.zeros(5), 1.0, [0.1])


@pytest.mark.parametrize("seed", range(20))
def test_random_bounded_g0_monotone(seed):
    """유계 무작위 보행 g₀ (6칸 뒤 평탄) 에서 u(t) 비감소, 윈도우 수렴"""
    lam, p = 2.0, 2.0
    bound = float(np.max(np.abs(random_g0(seed, RANDOM_G0_SUPPORT))))
    N = hypercontractivity_window(lam, p, bound=bound)
    trace = converged_hypercontractivity_trace(lam, lambda n: random_g0(seed, n), p,
                                               [0.05, 0.1, 0.2, 0.3], N)
    assert trace["passed"], trace["u"]
    assert trace["window"] <= MAX_WINDOW
    assert trace["window_change"] <= 1e-9


def test_random_g0_prefix_and_bound():
    """random_g0 는 N 과 무관하게 앞부분이 같고 |g₀| ≤ 1.5, 이후 평탄"""
    short, long = random_g0(3, 10), random_g0(3, 40)
    np.testing.assert_array_equal(short, long[:11])
    assert np.max(np.abs(long)) <= 1.5
    assert np.all(long[RANDOM_G0_SUPPORT:] == long[-1])


def test_window_from_bound_stays_small():
    """sup|g₀| 로 잡은 윈도우는 작고, 가파른 기울기는 ShapeError"""
    assert hypercontractivity_window(2.0, 2.0, bound=1.5) <= 40
    with pytest.raises(ShapeError):
        hypercontractivity_window(2.0, 2.0, slope=5.0)


def test_growing_g0_does_not_converge():
    """2차로 자라는 g₀ 는 Λ 가 발산 → AccuracyError"""
    with pytest.raises(AccuracyError):
        converged_hypercontractivity_trace(2.0, lambda n: charlier_g0(2.0, n, 2), 2.0, [0.1], 16)
