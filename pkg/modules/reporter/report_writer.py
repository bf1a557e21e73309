"""
report_writer.py - 검증 리포트 출력 모듈

이 파일은 검증 결과를 JSON 문서와 CSV 시계열로 저장합니다.

주요 기능:
- JSON 직렬화 (numpy 스칼라/배열, dataclass 변환, 키 정렬, 타임스탬프 없음)
- CSV 시계열 (고정 컬럼 t, value, bound, margin)
- 검사 항목 {tag, passed, value, bound, margin} 생성과 checks 로그 기록
- 콘솔 요약 출력

사용법:
    from modules.reporter.report_writer import ReportWriter

    writer = ReportWriter("reports")
    path = writer.write_json("curvature_poisson", report)
"""

import json
import math
from dataclasses import asdict, is_dataclass
from typing import Any, Optional, Sequence

import numpy as np
import pandas as pd

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from config import settings
from exceptions import ShapeError
from logger import get_check_logger, logger


CSV_COLUMNS = ["t", "value", "bound", "margin"]


# ===== 직렬화 =====

def _float(value: float) -> Any:
    """JSON 에 없는 inf/nan 은 문자열로 표기"""
    if math.isfinite(value):
        return value
    return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")


def to_jsonable(obj: Any) -> Any:
    """
    리포트 객체를 JSON 호환 구조로 변환

    dataclass → dict, numpy 배열 → list, numpy 스칼라 → 파이썬 스칼라,
    튜플 → list, 비유한 실수 → "inf"/"-inf"/"nan".
    """
    if is_dataclass(obj) and not isinstance(obj, type):
        return to_jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    return obj


def dumps_report(report: Any) -> str:
    """키 정렬 JSON 문자열 (같은 입력이면 바이트 단위로 동일)"""
    return json.dumps(to_jsonable(report), sort_keys=True, ensure_ascii=False, indent=2) + "\n"


# ===== 검사 항목 =====

def check_entry(
    tag: str,
    passed: bool,
    value: Optional[float] = None,
    bound: Optional[float] = None,
    margin: Optional[float] = None,
) -> dict:
    """
    검사 항목 생성 + checks 로그 기록

    Example:
        >>> check_entry("eq:lsi", True, value=0.12, bound=0.13, margin=0.01)
    """
    entry = {
        "tag": tag,
        "passed": bool(passed),
        "value": value,
        "bound": bound,
        "margin": margin,
    }
    status = "PASS" if passed else "FAIL"
    get_check_logger().info(f"{tag} {status} value={value} bound={bound} margin={margin}")
    return entry


def all_passed(entries: Sequence[dict]) -> bool:
    return all(e["passed"] for e in entries)


# ===== 파일 출력 =====

class ReportWriter:
    """
    리포트 파일 작성기

    하나의 실행에서 모든 파일은 이 작성기 하나로 씁니다.

    Example:
        >>> writer = ReportWriter()
        >>> writer.write_json("verify_lsi", report)
        >>> writer.write_series("decay", t, divergence, bound, margin)
    """

    def __init__(self, output_dir: Optional[str] = None):
        self.output_dir = Path(output_dir or settings.OUTPUT_DIR)
        self.written: list[Path] = []

    def _path(self, name: str, suffix: str) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir / f"{name}.{suffix}"

    def write_json(self, name: str, report: Any) -> Path:
        """JSON 리포트 저장"""
        path = self._path(name, "json")
        path.write_text(dumps_report(report), encoding="utf-8")
        self.written.append(path)
        logger.info(f"💾 리포트 저장: {path}")
        return path

    def write_series(
        self,
        name: str,
        t: Sequence[float],
        value: Sequence[float],
        bound: Optional[Sequence[float]] = None,
        margin: Optional[Sequence[float]] = None,
    ) -> Path:
        """
        CSV 시계열 저장 (컬럼 t, value, bound, margin)

        bound/margin 이 없으면 빈 칸으로 둡니다.
        """
        n = len(t)
        columns = {"t": t, "value": value, "bound": bound, "margin": margin}
        for key, col in columns.items():
            if col is not None and len(col) != n:
                raise ShapeError(f"CSV 컬럼 {key} 길이 {len(col)} ≠ t 길이 {n}")

        df = pd.DataFrame({
            key: (list(col) if col is not None else [None] * n)
            for key, col in columns.items()
        }, columns=CSV_COLUMNS)
        path = self._path(name, "csv")
        df.to_csv(path, index=False, float_format="%.17g")
        self.written.append(path)
        logger.info(f"💾 시계열 저장: {path} ({n}행)")
        return path


# ===== 콘솔 출력 =====

def display_summary(title: str, entries: Sequence[dict]) -> None:
    """검사 항목 콘솔 요약"""
    print()
    print("=" * 70)
    print(f"📊 {title}")
    print("=" * 70)
    for e in entries:
        mark = "✅" if e["passed"] else "❌"
        margin = e.get("margin")
        margin_text = f"{margin:.3e}" if isinstance(margin, float) else "-"
        print(f"  {mark} {e['tag']:<18} 여유 {margin_text}")
    print("=" * 70)
