"""
spec_parser.py - 명령줄 스펙 문자열 파서

문법:
    분포   name:arg1,arg2,...
           poisson:λ | bernoullisum:p1,p2,... | negbin:n,p | geometric:p
           binomial:n,p | weights:w0,w1,...
    함수   exp:a[,b] (e^{a x + b}) | id (x) | charlier1 | charlier2
           randomwalk:seed | const:v | random (실행 시드의 randomwalk)
    시간   t1,t2,... | geom:start,stop,ratio

사용법:
    from modules.cli.spec_parser import parse_dist, parse_function, parse_grid

    V = parse_dist("poisson:2.0")
    f = parse_function("exp:0.3", V.N + 1)
    t = parse_grid("geom:0.01,2,2")
"""

import math
import re
from typing import Callable, Optional

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from exceptions import UsageError

from modules.pmf import (
    TruncatedPmf,
    pmf_bernoulli_sum,
    pmf_from_weights,
    pmf_geometric,
    pmf_negative_binomial,
    pmf_poisson,
)
from modules.semigroup import random_walk_values
from modules.tail_decay import RANDOM_G0_SUPPORT, charlier_g0, random_g0


DIST_GRAMMAR = (
    "poisson:λ | bernoullisum:p1,p2,... | negbin:n,p | geometric:p | "
    "binomial:n,p | weights:w0,w1,..."
)
FUNCTION_GRAMMAR = "exp:a[,b] | id | charlier1 | charlier2 | randomwalk:seed | const:v | random"
GRID_GRAMMAR = "t1,t2,... | geom:start,stop,ratio"

# 분포 목록 구분: 다음 항목이 "이름:" 으로 시작하는 쉼표에서만 자름
_LIST_SPLIT = re.compile(r",(?=\s*[A-Za-z]+:)")


def _split(spec: str, grammar: str) -> tuple[str, list[str]]:
    name, _, rest = spec.strip().partition(":")
    args = [a.strip() for a in rest.split(",")] if rest.strip() else []
    if not name:
        raise UsageError(f"빈 스펙입니다. 문법: {grammar}")
    return name.lower(), args


def _numbers(args: list[str], spec: str, grammar: str, count: Optional[int] = None) -> list[float]:
    try:
        values = [float(a) for a in args]
    except ValueError:
        raise UsageError(f"숫자가 아닌 인자: '{spec}'. 문법: {grammar}") from None
    if count is not None and len(values) != count:
        raise UsageError(f"'{spec}' 인자는 {count}개여야 합니다. 문법: {grammar}")
    if not values:
        raise UsageError(f"'{spec}' 에 인자가 없습니다. 문법: {grammar}")
    return values


def _integer(value: float, spec: str) -> int:
    if not float(value).is_integer():
        raise UsageError(f"'{spec}' 의 정수 인자가 정수가 아닙니다: {value}")
    return int(value)


# ===== 분포 =====

def parse_dist(spec: str, eps_tail: Optional[float] = None) -> TruncatedPmf:
    """
    분포 스펙 → TruncatedPmf

    Raises:
        UsageError: 알 수 없는 이름/인자 (문법 포함)
    """
    name, args = _split(spec, DIST_GRAMMAR)

    if name == "poisson":
        (lam,) = _numbers(args, spec, DIST_GRAMMAR, 1)
        return pmf_poisson(lam, eps_tail)
    if name == "bernoullisum":
        return pmf_bernoulli_sum(_numbers(args, spec, DIST_GRAMMAR))
    if name == "negbin":
        n, p = _numbers(args, spec, DIST_GRAMMAR, 2)
        return pmf_negative_binomial(n, p, eps_tail)
    if name == "geometric":
        (p,) = _numbers(args, spec, DIST_GRAMMAR, 1)
        return pmf_geometric(p, eps_tail)
    if name == "binomial":
        n, p = _numbers(args, spec, DIST_GRAMMAR, 2)
        return pmf_bernoulli_sum([p] * _integer(n, spec))
    if name == "weights":
        return pmf_from_weights(_numbers(args, spec, DIST_GRAMMAR), label=spec)

    raise UsageError(f"알 수 없는 분포 '{name}'. 문법: {DIST_GRAMMAR}")


def split_dist_list(specs: str) -> list[str]:
    """'poisson:2,bernoullisum:0.2,0.4' → ['poisson:2', 'bernoullisum:0.2,0.4']"""
    items = [s.strip() for s in _LIST_SPLIT.split(specs) if s.strip()]
    if not items:
        raise UsageError(f"분포 목록이 비어 있습니다. 문법: {DIST_GRAMMAR}")
    return items


# ===== 함수 =====

def parse_function(
    spec: str,
    size: int,
    seed: Optional[int] = None,
    lam: Optional[float] = None,
) -> np.ndarray:
    """
    함수 스펙 → 0..size−1 위 값

    Args:
        spec: 함수 스펙
        size: 윈도우 크기 N + 1
        seed: 'random' 에 쓸 실행 시드
        lam: charlier 다항식의 λ (포아송 평균)
    """
    name, args = _split(spec, FUNCTION_GRAMMAR)
    x = np.arange(size, dtype=float)

    if name == "exp":
        nums = _numbers(args, spec, FUNCTION_GRAMMAR)
        if len(nums) > 2:
            raise UsageError(f"'{spec}' 인자는 1~2개여야 합니다. 문법: {FUNCTION_GRAMMAR}")
        a, b = nums[0], (nums[1] if len(nums) == 2 else 0.0)
        return np.exp(a * x + b)
    if name == "id":
        return x
    if name == "const":
        (v,) = _numbers(args, spec, FUNCTION_GRAMMAR, 1)
        return np.full(size, v)
    if name in ("charlier1", "charlier2"):
        if lam is None:
            raise UsageError(f"'{spec}' 는 포아송 평균이 있는 명령에서만 쓸 수 있습니다")
        return charlier_g0(lam, size - 1, degree=int(name[-1]))
    if name in ("randomwalk", "random"):
        if name == "randomwalk":
            (s,) = _numbers(args, spec, FUNCTION_GRAMMAR, 1)
            seed = _integer(s, spec)
        if seed is None:
            raise UsageError("'random' 함수에는 --seed 가 필요합니다")
        return np.exp(random_walk_values(np.random.default_rng(seed), size))

    raise UsageError(f"알 수 없는 함수 '{name}'. 문법: {FUNCTION_GRAMMAR}")


def parse_g0(
    spec: str,
    seed: Optional[int] = None,
    lam: Optional[float] = None,
) -> tuple[Callable[[int], np.ndarray], Optional[float]]:
    """
    초수축성용 g0 스펙 → (윈도우 N ↦ 0..N 위 값, sup|g0| 또는 None)

    randomwalk/random 은 지수를 씌우지 않은 유계 보행 (random_g0) 이고
    sup|g0| 를 함께 돌려 윈도우를 그 값으로 잡게 합니다.
    나머지 스펙은 parse_function 과 같은 값이며 상한은 None 입니다.
    """
    name, args = _split(spec, FUNCTION_GRAMMAR)
    if name in ("randomwalk", "random"):
        if name == "randomwalk":
            (s,) = _numbers(args, spec, FUNCTION_GRAMMAR, 1)
            seed = _integer(s, spec)
        if seed is None:
            raise UsageError("'random' 함수에는 --seed 가 필요합니다")
        bound = float(np.max(np.abs(random_g0(seed, RANDOM_G0_SUPPORT))))
        return (lambda N: random_g0(seed, N)), bound

    parse_function(spec, 2, seed=seed, lam=lam)
    return (lambda N: parse_function(spec, N + 1, seed=seed, lam=lam)), None


# ===== 시간 격자 =====

def parse_grid(spec: str) -> list[float]:
    """시간 격자 스펙 → 정렬된 양수 목록"""
    spec = spec.strip()
    if spec.lower().startswith("geom:"):
        start, stop, ratio = _numbers(spec[5:].split(","), spec, GRID_GRAMMAR, 3)
        if not (0.0 < start <= stop and ratio > 1.0):
            raise UsageError(f"geom 격자는 0 < start ≤ stop, ratio > 1 이어야 합니다: '{spec}'")
        count = int(math.floor(math.log(stop / start) / math.log(ratio) + 1e-9)) + 1
        grid = [start * ratio ** k for k in range(count)]
    else:
        grid = _numbers(spec.split(","), spec, GRID_GRAMMAR)

    if any(t < 0.0 for t in grid):
        raise UsageError(f"시간은 0 이상이어야 합니다: '{spec}'")
    return sorted(grid)
