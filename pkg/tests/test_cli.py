"""
test_cli.py - 명령줄 / 설정 / 리포터 테스트
"""

import json
import math
import sys
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from config import load_settings, settings
from exceptions import UsageError
from main import EXIT_CHECK_FAILED, EXIT_ERROR, EXIT_OK, run
from modules.cli import RunConfig, parse_c, parse_dist, parse_function, parse_g0, parse_grid, split_dist_list
from modules.tail_decay import MAX_WINDOW
from modules.reporter import CSV_COLUMNS, ReportWriter, all_passed, check_entry, dumps_report, to_jsonable


def _load(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


# ===== 종료 코드 =====

def test_curvature_command(tmp_path):
    """curvature poisson:2 → 0, c_inf = 0.5"""
    assert run(["--output-dir", str(tmp_path), "curvature", "poisson:2"]) == EXIT_OK
    report = _load(tmp_path / "curvature.json")
    assert report["c_inf"] == pytest.approx(0.5, abs=1e-10)
    assert report["passed"] is True
    assert {c["tag"] for c in report["checks"]} == {"eq:EEdef", "eq:meanbound"}


def test_verify_lsi_exponential(tmp_path):
    """verify lsi poisson:2 --f exp:0.3 → 0, LSI 여유 ≈ 0"""
    code = run(["--output-dir", str(tmp_path), "--eps-tail", "1e-30",
                "verify", "lsi", "--dist", "poisson:2", "--f", "exp:0.3"])
    assert code == EXIT_OK
    report = _load(tmp_path / "verify_lsi.json")
    assert abs(report["gaps"]["lsi"]) <= 1e-8 * report["ent"]


def test_verify_lsi_random_sweep(tmp_path):
    """--f 없이 verify lsi → 무작위 f 여러 개 검사, 실패 없음"""
    code = run(["--output-dir", str(tmp_path), "verify", "lsi",
                "--dist", "bernoullisum:0.3,0.6,0.5", "--trials", "25"])
    assert code == EXIT_OK
    report = _load(tmp_path / "verify_lsi.json")
    assert report["trials"] == 25
    assert report["failures"] == []


def test_partial_support_is_domain_error(tmp_path):
    """weights:1,0,1 → 1"""
    code = run(["--output-dir", str(tmp_path), "verify", "lsi", "--dist", "weights:1,0,1"])
    assert code == EXIT_ERROR


@pytest.mark.parametrize("argv", [
    ["curvature", "foo:1"],
    ["curvature", "poisson:abc"],
    ["verify"],
    ["nonexistent"],
    ["--config", "/nonexistent/experiment.env", "curvature", "poisson:1"],
])
def test_usage_errors_exit_one(tmp_path, argv):
    """잘못된 스펙/인수/설정 파일 → 1"""
    assert run(["--output-dir", str(tmp_path), *argv]) == EXIT_ERROR


def test_be_above_curvature_fails_with_report(tmp_path):
    """verify be --c 0.6 (Π₂) → 2, 리포트는 기록"""
    code = run(["--output-dir", str(tmp_path), "--eps-tail", "1e-20",
                "verify", "be", "--dist", "poisson:2", "--c", "0.6", "--trials", "10"])
    assert code == EXIT_CHECK_FAILED
    report = _load(tmp_path / "verify_be.json")
    assert report["passed"] is False


def test_identical_runs_are_byte_identical(tmp_path):
    """같은 인수/시드 두 번 → JSON 바이트 동일"""
    argv = ["--seed", "3", "verify", "be", "--dist", "poisson:2", "--trials", "20"]
    assert run(["--output-dir", str(tmp_path / "a"), *argv]) == EXIT_OK
    assert run(["--output-dir", str(tmp_path / "b"), *argv]) == EXIT_OK
    first = (tmp_path / "a" / "verify_be.json").read_bytes()
    second = (tmp_path / "b" / "verify_be.json").read_bytes()
    assert first == second


def test_decay_writes_csv(tmp_path):
    """decay 는 t,value,bound,margin 열의 CSV 를 씀"""
    code = run(["--output-dir", str(tmp_path), "decay", "--lambda", "2",
                "--init", "poisson:1", "--t", "geom:0.01,4,2"])
    assert code == EXIT_OK
    df = pd.read_csv(tmp_path / "decay.csv")
    assert list(df.columns) == CSV_COLUMNS
    assert len(df) == 9
    assert (df["margin"] >= -1e-8).all()


def test_hyper_charlier_command(tmp_path):
    """hyper --lambda 2 --p 2 → 0, 1차 샤를리에 검사 포함"""
    code = run(["--output-dir", str(tmp_path), "hyper", "--lambda", "2", "--p", "2"])
    assert code == EXIT_OK
    report = _load(tmp_path / "hyper.json")
    assert "eq:hyper" in {c["tag"] for c in report["checks"]}


def test_hyper_bounded_random_walk_command(tmp_path):
    """hyper --g0 randomwalk:4 → 0, 윈도우는 sup|g₀| 로 잡혀 상한 이내에서 수렴"""
    code = run(["--output-dir", str(tmp_path), "hyper", "--lambda", "2", "--p", "2",
                "--g0", "randomwalk:4"])
    assert code == EXIT_OK
    report = _load(tmp_path / "hyper.json")
    assert report["window"] <= MAX_WINDOW
    assert report["window_change"] <= 1e-9
    assert report["passed"] is True


def test_hyper_steep_g0_is_error(tmp_path):
    """초기 윈도우가 상한을 넘는 g₀ (exp:3) → 1"""
    code = run(["--output-dir", str(tmp_path), "hyper", "--lambda", "2", "--p", "2", "--g0", "exp:3"])
    assert code == EXIT_ERROR


def test_multidim_certify_command(tmp_path):
    """multidim certify poisson:1,poisson:2 → 0"""
    code = run(["--output-dir", str(tmp_path), "multidim", "certify",
                "--dists", "poisson:1,poisson:2"])
    assert code == EXIT_OK
    assert _load(tmp_path / "multidim_certify.json")["certified"] is True


def test_config_file_overrides(tmp_path):
    """--config 파일 값이 기본값을 덮어씀"""
    env = tmp_path / "experiment.env"
    env.write_text("BE_TRIALS=7\nDEFAULT_SEED=11\n", encoding="utf-8")
    loaded = load_settings(str(env))
    assert loaded.BE_TRIALS == 7
    assert loaded.DEFAULT_SEED == 11
    assert load_settings(None) is settings


# ===== 스펙 파서 =====

def test_parse_dist_variants():
    """분포 스펙 문법"""
    assert parse_dist("poisson:2").label == "poisson(2)"
    binom = parse_dist("binomial:4,0.5")
    np.testing.assert_allclose(binom.values, np.array([1, 4, 6, 4, 1]) / 16.0)
    assert parse_dist("geometric:0.3").N == parse_dist("negbin:1,0.3").N
    with pytest.raises(UsageError):
        parse_dist("negbin:2")
    with pytest.raises(UsageError):
        parse_dist("binomial:2.5,0.3")


def test_split_dist_list():
    """쉼표가 든 분포 목록 분리"""
    assert split_dist_list("poisson:2,bernoullisum:0.2,0.4") == ["poisson:2", "bernoullisum:0.2,0.4"]
    with pytest.raises(UsageError):
        split_dist_list(" ")


def test_parse_function_variants():
    """함수 스펙 문법"""
    np.testing.assert_allclose(parse_function("exp:0.5,1", 3), np.exp([1.0, 1.5, 2.0]))
    np.testing.assert_array_equal(parse_function("id", 4), [0, 1, 2, 3])
    np.testing.assert_allclose(parse_function("charlier1", 3, lam=2.0), [-1.0, -0.5, 0.0])
    np.testing.assert_array_equal(parse_function("randomwalk:5", 6), parse_function("random", 6, seed=5))
    with pytest.raises(UsageError):
        parse_function("charlier2", 3)
    with pytest.raises(UsageError):
        parse_function("sin", 3)


def test_parse_g0_bounded_and_window_functions():
    """randomwalk 는 지수 없는 유계 보행과 상한, 나머지는 parse_function 값"""
    make_g0, bound = parse_g0("randomwalk:4")
    g0 = make_g0(20)
    assert g0.size == 21
    assert bound == pytest.approx(np.max(np.abs(g0)))
    assert bound <= 1.5
    make_g0, bound = parse_g0("charlier1", lam=2.0)
    assert bound is None
    np.testing.assert_allclose(make_g0(2), [-1.0, -0.5, 0.0])
    with pytest.raises(UsageError):
        parse_g0("random")


def test_parse_grid():
    """시간 격자: 목록과 기하 격자"""
    assert parse_grid("0.5,0.1,1") == [0.1, 0.5, 1.0]
    grid = parse_grid("geom:0.01,4,2")
    assert len(grid) == 9
    assert grid[0] == pytest.approx(0.01)
    assert grid[-1] == pytest.approx(2.56)
    with pytest.raises(UsageError):
        parse_grid("geom:1,0.5,2")
    with pytest.raises(UsageError):
        parse_grid("-1,2")


def test_parse_c():
    """auto → None, 숫자 → float"""
    assert parse_c("auto") is None
    assert parse_c("0.25") == 0.25


# ===== 실행 설정 =====

def test_run_config_precedence():
    """None 이 아닌 플래그만 설정값을 덮어씀"""
    cfg = RunConfig.from_sources(settings, {"seed": 99, "tol": None})
    assert cfg.seed == 99
    assert cfg.tol == settings.INTEGRATOR_TOL


def test_run_config_validation():
    """범위 밖 값은 검증 실패"""
    with pytest.raises(ValueError):
        RunConfig.from_sources(settings, {"eps_tail": 0.5})
    with pytest.raises(ValueError):
        RunConfig.from_sources(settings, {"output_format": "xml"})


# ===== 리포터 =====

def test_to_jsonable_handles_numpy_and_infinities():
    """numpy 값과 inf/nan 을 JSON 호환 값으로"""
    data = to_jsonable({"a": np.float64(1.5), "b": np.arange(3), "c": math.inf, "d": (np.int64(2),)})
    assert data == {"a": 1.5, "b": [0, 1, 2], "c": "inf", "d": [2]}
    text = dumps_report({"x": float("nan"), "y": -math.inf})
    assert json.loads(text) == {"x": "nan", "y": "-inf"}


def test_check_entries():
    """검사 항목과 전체 통과 판정"""
    entries = [check_entry("eq:a", True, 1.0, 2.0, 1.0), check_entry("eq:b", False)]
    assert entries[0]["tag"] == "eq:a"
    assert not all_passed(entries)
    assert all_passed(entries[:1])


def test_write_series_columns(tmp_path):
    """CSV 는 t,value,bound,margin 열"""
    writer = ReportWriter(str(tmp_path))
    path = writer.write_series("demo", [0.0, 1.0], [2.0, 3.0], [4.0, 5.0], [2.0, 2.0])
    df = pd.read_csv(path)
    assert list(df.columns) == CSV_COLUMNS
    assert writer.written == [path]
