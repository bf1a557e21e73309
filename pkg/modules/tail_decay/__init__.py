"""
tail_decay - 꼬리 경계 / 엔트로피 감쇠 / 초수축성 모듈

주요 기능:
- bennett_h, chernoff_k, chernoff_phi, lemma_w (보조 함수)
- concentration_bound, exact_tail, chernoff_scan, concentration_report
- ThinningFamily, poisson_thinning_family, thinning_decay_trace
- charlier_g0, random_g0, hypercontractivity_window, hypercontractivity_trace, converged_hypercontractivity_trace

사용법:
    from modules.tail_decay import concentration_report, thinning_decay_trace

    report = concentration_report(V, g, t_grid=[1, 2, 3])
"""

from modules.tail_decay.auxiliary import (
    bennett_h,
    chernoff_k,
    chernoff_phi,
    lemma_w,
)

from modules.tail_decay.concentration import (
    ConcentrationReport,
    concentration_bound,
    weaker_bound,
    optimal_sigma,
    chernoff_bound,
    exact_tail,
    chernoff_scan,
    concentration_report,
)

from modules.tail_decay.thinning import (
    ThinningFamily,
    poisson_thinning_family,
    poisson_thinning_divergence,
    check_family_consistency,
    thinning_decay_trace,
)

from modules.tail_decay.hypercontractivity import (
    charlier_g0,
    charlier_constant,
    random_g0,
    RANDOM_G0_SUPPORT,
    hypercontractivity_window,
    hypercontractivity_trace,
    converged_hypercontractivity_trace,
    MAX_WINDOW,
)

__all__ = [
    "bennett_h",
    "chernoff_k",
    "chernoff_phi",
    "lemma_w",
    "ConcentrationReport",
    "concentration_bound",
    "weaker_bound",
    "optimal_sigma",
    "chernoff_bound",
    "exact_tail",
    "chernoff_scan",
    "concentration_report",
    "ThinningFamily",
    "poisson_thinning_family",
    "poisson_thinning_divergence",
    "check_family_consistency",
    "thinning_decay_trace",
    "charlier_g0",
    "charlier_constant",
    "random_g0",
    "RANDOM_G0_SUPPORT",
    "hypercontractivity_window",
    "hypercontractivity_trace",
    "converged_hypercontractivity_trace",
    "MAX_WINDOW",
]
