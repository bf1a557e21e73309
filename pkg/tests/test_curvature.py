"""
test_curvature.py - 곡률 프로필 / 구조 판정 테스트
"""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from exceptions import NotFullSupportError, PreconditionError
from modules.pmf import pmf_from_weights, pmf_geometric, pmf_negative_binomial, pmf_poisson, sample_ulc_pmf
from modules.curvature import (
    c_log_concave_constant,
    convolution_conjecture_probe,
    curvature_profile,
    curvature_report,
    is_ulc,
    mean_bound_check,
    telescoping_residual,
    ulc_c_bound,
)


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0, 10.0])
def test_poisson_curvature_constant(lam):
    """포아송은 E(x) ≡ 1/λ"""
    V = pmf_poisson(lam)
    E = curvature_profile(V)
    assert np.max(np.abs(E - 1.0 / lam)) <= 1e-10
    assert c_log_concave_constant(V) == pytest.approx(1.0 / lam, abs=1e-10)
    print(f"[PASS] Poisson({lam}) E ≡ {1.0 / lam:.6f}")


def test_negative_binomial_curvature_decreasing():
    """음이항(n>1) 은 E(x) = (n−1)/(p(n+x)(n+x−1)) 로 감소하고 최솟값이 윈도우 끝"""
    n, p = 3.0, 0.4
    V = pmf_negative_binomial(n, p)
    x = np.arange(V.N, dtype=float)
    expected = (n - 1.0) / (p * (n + x) * (n + x - 1.0))
    np.testing.assert_allclose(curvature_profile(V), expected, rtol=1e-7)

    report = curvature_report(V)
    assert report.argmin == V.N - 1
    assert report.boundary_flag


def test_ulc_mean_bound_on_random_corpus():
    """ULC 표본 100개: c_inf ≤ 1/mean + 1e-10, 망원합 잔차 ≤ 1e-12"""
    rng = np.random.default_rng(7)
    for _ in range(100):
        V = sample_ulc_pmf(rng)
        assert is_ulc(V)
        assert mean_bound_check(V)
        assert telescoping_residual(V) <= 1e-12
        assert c_log_concave_constant(V) <= ulc_c_bound(V) + 1e-12


def test_non_ulc_detection():
    """비 ULC 가중치는 ULC 하한을 거부"""
    V = pmf_from_weights([1.0, 0.1, 1.0])
    assert not is_ulc(V)
    with pytest.raises(PreconditionError):
        ulc_c_bound(V)


def test_negative_binomial_not_ulc():
    """음이항 (기하 포함) 은 (x+1)V(x+1)/V(x) = (x+n)p 가 증가하므로 ULC 아님"""
    assert is_ulc(pmf_negative_binomial(2.0, 0.5)) is False
    assert is_ulc(pmf_geometric(0.5)) is False
    with pytest.raises(PreconditionError):
        ulc_c_bound(pmf_negative_binomial(2.0, 0.5))


def test_partial_support_rejected():
    """중간 0 이 있는 pmf 는 곡률 계산 불가"""
    with pytest.raises(NotFullSupportError):
        curvature_profile(pmf_from_weights([1.0, 0.0, 1.0]))


def test_report_fields_for_poisson():
    """포아송 리포트: ULC, 평균 경계 통과"""
    report = curvature_report(pmf_poisson(2.0))
    assert report.ulc
    assert report.mean_bound_ok
    assert report.c_inf == pytest.approx(0.5, abs=1e-10)
    assert report.to_dict()["label"] == "poisson(2)"


def test_convolution_probe_is_exploratory():
    """합성곱 탐색은 판정 없이 값만 보고"""
    result = convolution_conjecture_probe(samples=5, seed=1)
    assert result["exploratory"] is True
    assert result["samples"] == 5
    assert np.isfinite(result["min_ratio"])
