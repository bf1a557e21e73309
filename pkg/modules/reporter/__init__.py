"""
reporter - 리포트 출력 모듈

이 모듈은 검증 결과를 JSON/CSV 파일과 콘솔 요약으로 내보냅니다.

주요 기능:
- JSON 리포트 (키 정렬, UTF-8, 타임스탬프 없음)
- CSV 시계열 (t, value, bound, margin)
- 수식 태그별 검사 항목

사용법:
    from modules.reporter import ReportWriter, check_entry

    entry = check_entry("eq:curv", True, value=0.5, bound=0.5, margin=0.0)
    ReportWriter("reports").write_json("curvature", {"checks": [entry]})
"""

from modules.reporter.report_writer import (
    ReportWriter,
    to_jsonable,
    dumps_report,
    check_entry,
    all_passed,
    display_summary,
    CSV_COLUMNS,
)

__all__ = [
    "ReportWriter",
    "to_jsonable",
    "dumps_report",
    "check_entry",
    "all_passed",
    "display_summary",
    "CSV_COLUMNS",
]
