"""
semigroup - 출생-사망 반군 모듈

이 모듈은 절단 생성자를 만들고 pmf 와 함수를 그 아래에서 진화시킵니다.

주요 기능:
- GridFunction, GeneratorMatrix
- apply_L / apply_L_adjoint / verify_self_adjoint
- evolve_pmf / evolve_function (균일화 + 반 스텝 자가검사)
- entropy_trace

사용법:
    from modules.semigroup import build_generator, evolve_function

    f_t = evolve_function(V, f0, t=1.0)
"""

# 타입
from modules.semigroup.grid_function import (
    GridFunction,
    as_values,
    require_positive,
    random_walk_values,
    make_interior,
    is_interior,
    POSITIVITY_FLOOR,
)

# 생성자
from modules.semigroup.generator import (
    GeneratorMatrix,
    build_generator,
    apply_L,
    apply_L_adjoint,
    verify_self_adjoint,
)

# 진화
from modules.semigroup.evolution import (
    evolve_pmf,
    evolve_function,
    entropy_trace,
)


__all__ = [
    "GridFunction",
    "as_values",
    "require_positive",
    "random_walk_values",
    "make_interior",
    "is_interior",
    "POSITIVITY_FLOOR",
    "GeneratorMatrix",
    "build_generator",
    "apply_L",
    "apply_L_adjoint",
    "verify_self_adjoint",
    "evolve_pmf",
    "evolve_function",
    "entropy_trace",
]
