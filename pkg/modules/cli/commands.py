"""
commands.py - 서브커맨드 실행 모듈

각 명령은 (args, cfg, writer) 를 받아 리포트를 쓰고 모든 검사 통과 여부를 반환합니다.
검사 실패는 예외가 아니라 리포트 항목이며, main 이 종료 코드 2 로 바꿉니다.

사용법:
    from modules.cli.commands import COMMANDS

    passed = COMMANDS["curvature"](args, cfg, writer)
"""

import math
from argparse import Namespace
from typing import Callable, Optional

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from exceptions import UsageError
from logger import log_with_context

from modules.cli.run_config import RunConfig
from modules.cli.spec_parser import parse_dist, parse_function, parse_g0, parse_grid, split_dist_list
from modules.curvature import (
    c_log_concave_constant,
    convolution_conjecture_probe,
    curvature_report,
    require_full_support,
)
from modules.functionals import (
    lsi_constant_estimate,
    lsi_verify,
    poincare_constant,
    poincare_inequality_check,
    relative_entropy,
)
from modules.gamma_calculus import integrated_be_check
from modules.multidim import (
    commutation_residual_d,
    esym_psd_certify,
    gamma_sums_d,
    integrated_be_check_d,
    logsob_counterexample_probe,
    product_pmf,
    random_interior_function_d,
)
from modules.reporter import ReportWriter, all_passed, check_entry, display_summary
from modules.semigroup import evolve_pmf, random_walk_values
from modules.tail_decay import (
    charlier_constant,
    chernoff_scan,
    concentration_report,
    converged_hypercontractivity_trace,
    hypercontractivity_window,
    optimal_sigma,
    thinning_decay_trace,
)


TELESCOPING_TOL = 1e-10
DECAY_ABS_TOL = 1e-8
CHARLIER_ABS_TOL = 1e-8
CONSTANT_REL_TOL = 1e-8
LSI_ESTIMATE_TOL = 1e-6
IDENTITY_REL_TOL = 1e-9
RESIDUAL_REL_TOL = 1e-12

CommandFn = Callable[[Namespace, RunConfig, ReportWriter], bool]


def parse_c(text: Optional[str]) -> Optional[float]:
    """'auto' 또는 None → None, 그 외 실수"""
    if text is None or text.strip().lower() == "auto":
        return None
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"--c 는 auto 또는 실수여야 합니다: '{text}'") from None


def _finish(name: str, title: str, report: dict, checks: list, writer: ReportWriter) -> bool:
    report["checks"] = checks
    report["passed"] = all_passed(checks)
    writer.write_json(name, report)
    display_summary(title, checks)
    return report["passed"]


# ===== curvature =====

def cmd_curvature(args: Namespace, cfg: RunConfig, writer: ReportWriter) -> bool:
    """곡률 프로필 리포트 (+ 선택적 CSV)"""
    V = parse_dist(args.dist, cfg.eps_tail)
    report = curvature_report(V).to_dict()

    checks = [check_entry("eq:EEdef", report["telescoping_residual"] <= TELESCOPING_TOL,
                          value=report["telescoping_residual"], bound=TELESCOPING_TOL,
                          margin=TELESCOPING_TOL - report["telescoping_residual"])]
    if report["ulc"]:
        bound = 1.0 / report["mean"]
        checks.append(check_entry("eq:meanbound", report["mean_bound_ok"],
                                  value=report["c_inf"], bound=bound, margin=bound - report["c_inf"]))

    if args.csv or cfg.output_format == "csv":
        profile = report["profile"]
        writer.write_series(
            "curvature_profile",
            t=list(range(len(profile))),
            value=profile,
            bound=[report["c_inf"]] * len(profile),
            margin=[e - report["c_inf"] for e in profile],
        )
    return _finish("curvature", f"곡률 {V.label}", report, checks, writer)


# ===== evolve =====

def cmd_evolve(args: Namespace, cfg: RunConfig, writer: ReportWriter) -> bool:
    """
    p_t = p0 exp(tQ) 와 D(p_t‖V) ≤ D(p0‖V) e^{−c t} (c = c_inf > 0 일 때)
    """
    V = parse_dist(args.dist, cfg.eps_tail)
    require_full_support(V)
    p0 = parse_dist(args.init, cfg.eps_tail)
    times = parse_grid(args.t)
    c_inf = c_log_concave_constant(V)
    target = V.normalized()

    def divergence(p) -> float:
        pv = p.extend(V.N)
        return relative_entropy(pv / math.fsum(pv), target)

    d0 = divergence(p0)
    values, bounds, margins = [], [], []
    for t in times:
        d_t = divergence(evolve_pmf(V, p0, t, cfg.tol))
        bound = d0 * math.exp(-c_inf * t) if c_inf > 0.0 else d0
        values.append(d_t)
        bounds.append(bound)
        margins.append(bound - d_t)

    worst = min(margins) if margins else 0.0
    checks = [check_entry("eq:lsicap", worst >= -DECAY_ABS_TOL, value=max(values, default=0.0),
                          bound=None, margin=worst)]
    report = {"label": V.label, "init": p0.label, "c_inf": c_inf, "d0": d0,
              "t": times, "divergence": values, "bound": bounds, "margin": margins}
    writer.write_series("evolve", times, values, bounds, margins)
    return _finish("evolve", f"진화 {p0.label} → {V.label}", report, checks, writer)


# ===== verify =====

def _lsi_sweep(V, args: Namespace, cfg: RunConfig, writer: ReportWriter) -> bool:
    """--f, --p 가 없을 때: 무작위 양수 f 를 lsi_trials 개 검사"""
    trials = args.trials or cfg.lsi_trials
    c = parse_c(args.c)
    failures = []
    worst = {"trial": -1, "margin": math.inf}
    first = None
    for i, ss in enumerate(np.random.SeedSequence(cfg.seed).spawn(trials)):
        f = np.exp(random_walk_values(np.random.default_rng(ss), V.N + 1))
        lsi = lsi_verify(V, f=f, c=c)
        if first is None:
            first = lsi
        if not lsi.passed:
            failures.append(i)
        if lsi.gaps["lsi"] is not None:
            margin = lsi.gaps["lsi"] / max(1.0, abs(lsi.ent))
            if margin < worst["margin"]:
                worst = {"trial": i, "margin": margin}

    report = {
        "label": V.label,
        "c_used": first.c_used,
        "c_inf": first.c_inf,
        "hypothesis_ok": first.hypothesis_ok,
        "trials": trials,
        "failures": failures,
        "worst_trial": worst["trial"],
        "worst_margin": worst["margin"],
    }
    tag = "eq:lsi" if first.hypothesis_ok else "eq:bltype"
    checks = [check_entry(tag, not failures, value=float(len(failures)), bound=0.0,
                          margin=worst["margin"])]
    return _finish("verify_lsi", f"변형 LSI {V.label} ({trials}회)", report, checks, writer)


def cmd_verify_lsi(args: Namespace, cfg: RunConfig, writer: ReportWriter) -> bool:
    V = parse_dist(args.dist, cfg.eps_tail)
    require_full_support(V)
    p = parse_dist(args.p, cfg.eps_tail) if args.p else None
    if args.f is None and p is None:
        return _lsi_sweep(V, args, cfg, writer)

    f = parse_function(args.f, V.N + 1, seed=cfg.seed) if args.f is not None else None
    lsi = lsi_verify(V, f=f, c=parse_c(args.c), p=p)
    report = lsi.to_dict()
    scale = max(abs(lsi.ent), lsi.rhs_new, 1.0)

    checks = [
        check_entry("eq:lsidiff", abs(lsi.gaps["decomposition"]) <= 1e-12 * max(scale, lsi.rhs_caputo),
                    value=lsi.rhs_caputo, bound=lsi.rhs_new + lsi.rhs_diff,
                    margin=-abs(lsi.gaps["decomposition"])),
        check_entry("eq:bltype", lsi.gaps["bl_minus_new"] >= -1e-12 * max(scale, lsi.rhs_bl),
                    value=lsi.rhs_new, bound=lsi.rhs_bl, margin=lsi.gaps["bl_minus_new"]),
    ]
    if lsi.hypothesis_ok:
        checks.append(check_entry("eq:lsi", lsi.passed, value=lsi.ent,
                                  bound=lsi.rhs_new / lsi.c_used, margin=lsi.gaps["lsi"]))
    if lsi.restated is not None and lsi.hypothesis_ok:
        r = lsi.restated
        checks.append(check_entry("eq:lsirestated", r["lhs"] <= r["rhs"] + 1e-10 * max(1.0, r["rhs"]),
                                  value=r["lhs"], bound=r["rhs"], margin=r["rhs"] - r["lhs"]))
    return _finish("verify_lsi", f"변형 LSI {V.label}", report, checks, writer)


def cmd_verify_poincare(args: Namespace, cfg: RunConfig, writer: ReportWriter) -> bool:
    V = parse_dist(args.dist, cfg.eps_tail)
    trials = args.trials or cfg.be_trials
    report = poincare_inequality_check(V, c=parse_c(args.c), trials=trials, seed=cfg.seed)
    checks = [check_entry("eq:poincare", report["passed"], value=report["constant"],
                          bound=report["inverse_c"], margin=report["inverse_c"] - report["constant"])]
    return _finish("verify_poincare", f"푸앵카레 {V.label}", report, checks, writer)


def cmd_verify_be(args: Namespace, cfg: RunConfig, writer: ReportWriter) -> bool:
    V = parse_dist(args.dist, cfg.eps_tail)
    c = parse_c(args.c)
    c = c_log_concave_constant(V) if c is None else c
    report = integrated_be_check(V, c, trials=args.trials or cfg.be_trials, seed=cfg.seed)
    checks = [check_entry("eq:dbec", report["passed"], value=report["extremal_ratio"],
                          bound=c, margin=report["worst_margin"])]
    return _finish("verify_be", f"적분형 BE({c:.6g}) {V.label}", report, checks, writer)


# ===== constants =====

def cmd_constants(args: Namespace, cfg: RunConfig, writer: ReportWriter) -> bool:
    """{poincare, lsi_lower_bound, c_inf}"""
    V = parse_dist(args.dist, cfg.eps_tail)
    c_inf = c_log_concave_constant(V)
    poincare = poincare_constant(V)
    lsi_lower = lsi_constant_estimate(V, restarts=args.restarts or cfg.lsi_restarts, seed=cfg.seed)
    report = {"label": V.label, "c_inf": c_inf, "poincare": poincare, "lsi_lower_bound": lsi_lower}

    checks = []
    if c_inf > 0.0:
        inv = 1.0 / c_inf
        checks.append(check_entry("eq:poincare", poincare <= inv + CONSTANT_REL_TOL * max(1.0, inv),
                                  value=poincare, bound=inv, margin=inv - poincare))
        checks.append(check_entry("eq:lsi", lsi_lower <= inv + LSI_ESTIMATE_TOL * max(1.0, inv),
                                  value=lsi_lower, bound=inv, margin=inv - lsi_lower))
    return _finish("constants", f"최적 상수 {V.label}", report, checks, writer)


# ===== tail_decay =====

def cmd_concentration(args: Namespace, cfg: RunConfig, writer: ReportWriter) -> bool:
    V = parse_dist(args.dist, cfg.eps_tail)
    g = parse_function(args.g, V.N + 1, seed=cfg.seed)
    times = parse_grid(args.t)
    conc = concentration_report(V, g, times, c=parse_c(args.c))
    report = conc.to_dict()

    margins = [bh - tail for tail, bh in zip(conc.exact_tail, conc.bound_h)]
    checks = [check_entry("eq:tailboundsbl", conc.passed, value=max(conc.exact_tail, default=0.0),
                          bound=None, margin=min(margins, default=0.0))]
    if conc.hypothesis_ok:
        sigmas = [optimal_sigma(conc.c_used, t) for t in times if t > 0.0]
        if sigmas:
            scan = chernoff_scan(V, g, sigmas, c=conc.c_used)
            report["chernoff"] = scan
            checks.append(check_entry("eq:lsicompare", scan["passed"], value=None, bound=None,
                                      margin=min(scan["margin"])))

    writer.write_series("concentration", conc.t_grid, conc.exact_tail, conc.bound_h, margins)
    return _finish("concentration", f"집중 부등식 {V.label}", report, checks, writer)


def cmd_decay(args: Namespace, cfg: RunConfig, writer: ReportWriter) -> bool:
    p0 = parse_dist(args.init, cfg.eps_tail)
    trace = thinning_decay_trace(p0, args.lam, parse_grid(args.t), tol=cfg.tol)
    checks = [check_entry("eq:thind", trace["passed"], value=max(trace["divergence"]),
                          bound=trace["d0"], margin=min(trace["margin"]))]
    writer.write_series("decay", trace["t"], trace["divergence"], trace["bound"], trace["margin"])
    return _finish("decay", f"thinning 감쇠 λ={args.lam:g}", trace, checks, writer)


def cmd_hyper(args: Namespace, cfg: RunConfig, writer: ReportWriter) -> bool:
    """초수축성 추적, 유계 g0 는 sup|g0| 로, 나머지는 기울기로 시작 윈도우를 잡고 수렴할 때까지 넓힘"""
    lam, p = args.lam, args.p
    make_g0, bound = parse_g0(args.g0, seed=cfg.seed, lam=lam)
    if bound is not None:
        N = hypercontractivity_window(lam, p, cfg.eps_tail, bound=bound)
    else:
        g0 = make_g0(hypercontractivity_window(lam, p, cfg.eps_tail))
        slope = float(np.max(np.diff(g0))) if g0.size > 1 else 0.0
        N = hypercontractivity_window(lam, p, cfg.eps_tail, slope=slope)

    trace = converged_hypercontractivity_trace(lam, make_g0, p, parse_grid(args.t), N, tol=cfg.tol)
    checks = [check_entry("eq:funcevol2", trace["passed"], value=trace["u"][-1],
                          bound=trace["u"][0], margin=-trace["max_decrease"])]
    if args.g0.strip().lower() == "charlier1":
        C = charlier_constant(lam, p)
        dev = max(abs(u + C) for u in trace["u"])
        checks.append(check_entry("eq:hyper", dev <= CHARLIER_ABS_TOL, value=dev,
                                  bound=CHARLIER_ABS_TOL, margin=CHARLIER_ABS_TOL - dev))
        trace["charlier_constant"] = C

    writer.write_series("hyper", trace["t"], trace["u"], [trace["u"][0]] * len(trace["u"]),
                        [u - trace["u"][0] for u in trace["u"]])
    return _finish("hyper", f"초수축성 λ={lam:g}, p={p:g}", trace, checks, writer)


# ===== multidim =====

def _product(args: Namespace, cfg: RunConfig):
    factors = [parse_dist(s, cfg.eps_tail) for s in split_dist_list(args.dists)]
    return product_pmf(factors), factors


def _product_c(text: Optional[str], factors: list) -> float:
    c = parse_c(text)
    return min(c_log_concave_constant(V) for V in factors) if c is None else c


def cmd_multidim_certify(args: Namespace, cfg: RunConfig, writer: ReportWriter) -> bool:
    V, factors = _product(args, cfg)
    report = esym_psd_certify(V, _product_c(args.c, factors))
    checks = [check_entry("eq:Edef", report["certified"], value=report["min_eigenvalue"],
                          bound=0.0, margin=report["min_eigenvalue"])]
    return _finish("multidim_certify", f"E^sym 인증 {V.label}", report, checks, writer)


def cmd_multidim_verify(args: Namespace, cfg: RunConfig, writer: ReportWriter) -> bool:
    """d차원 BE/푸앵카레 무작위 검증 + 항등식/잔차 점검"""
    V, factors = _product(args, cfg)
    c = _product_c(args.c, factors)
    report = integrated_be_check_d(V, c, trials=args.trials or cfg.be_trials, seed=cfg.seed)

    f = random_interior_function_d(np.random.default_rng(cfg.seed), V.shape)
    sums = gamma_sums_d(V, f, f)
    identity_gap = sums["gamma2"] - (sums["mixed_square"] + sums["gamma2_lower"])
    identity_scale = max(1.0, abs(sums["gamma2"]))
    residual = commutation_residual_d(V, f)
    report["identity"] = {**sums, "gap": identity_gap}
    report["commutation"] = residual

    checks = [
        check_entry("eq:dbecd", report["passed"], value=report["extremal_ratio"], bound=c,
                    margin=report["worst_margin"]),
        check_entry("eq:doned", abs(identity_gap) <= IDENTITY_REL_TOL * identity_scale,
                    value=sums["gamma2"], bound=sums["mixed_square"] + sums["gamma2_lower"],
                    margin=-abs(identity_gap)),
        check_entry("eq:diffLVd", residual["max_residual"] <= RESIDUAL_REL_TOL * residual["scale"],
                    value=residual["max_residual"], bound=RESIDUAL_REL_TOL * residual["scale"],
                    margin=RESIDUAL_REL_TOL * residual["scale"] - residual["max_residual"]),
    ]
    return _finish("multidim_verify", f"d차원 BE({c:.6g}) {V.label}", report, checks, writer)


def cmd_multidim_probe(args: Namespace, cfg: RunConfig, writer: ReportWriter) -> bool:
    """탐색 전용, 항상 통과"""
    report = logsob_counterexample_probe(args.samples, cfg.seed, box=args.box)
    writer.write_json("multidim_probe", report)
    return True


# ===== probe-convolution =====

def cmd_probe_convolution(args: Namespace, cfg: RunConfig, writer: ReportWriter) -> bool:
    """탐색 전용, 항상 통과"""
    report = convolution_conjecture_probe(args.samples, cfg.seed)
    writer.write_json("probe_convolution", report)
    return True


COMMANDS: dict[str, CommandFn] = {
    "curvature": cmd_curvature,
    "evolve": cmd_evolve,
    "verify lsi": cmd_verify_lsi,
    "verify poincare": cmd_verify_poincare,
    "verify be": cmd_verify_be,
    "constants": cmd_constants,
    "concentration": cmd_concentration,
    "decay": cmd_decay,
    "hyper": cmd_hyper,
    "multidim certify": cmd_multidim_certify,
    "multidim verify": cmd_multidim_verify,
    "multidim probe": cmd_multidim_probe,
    "probe-convolution": cmd_probe_convolution,
}


def run_command(key: str, args: Namespace, cfg: RunConfig, writer: ReportWriter) -> bool:
    if key not in COMMANDS:
        raise UsageError(f"알 수 없는 명령: '{key}'. 가능한 명령: {', '.join(COMMANDS)}")
    log_with_context(key).info(f"▶️ {key} 실행")
    return COMMANDS[key](args, cfg, writer)
