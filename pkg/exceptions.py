"""
exceptions.py - 워크벤치 예외 정의

모든 모듈이 공유하는 예외 계층입니다.
CLI 는 WorkbenchError 의 exit_code 로 종료 코드를 결정합니다.
검증 실패(부등식 위반)는 예외가 아니라 리포트 항목으로 기록됩니다.

사용법:
    from exceptions import NotFullSupportError

    if not V.full_support:
        raise NotFullSupportError("V(3) = 0")
"""

from typing import Any, Optional


class WorkbenchError(Exception):
    """워크벤치 공통 예외 (종료 코드 1)"""

    exit_code = 1
    kind = "workbench-error"

    def __init__(self, message: str, diagnostics: Optional[dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}

    def to_dict(self) -> dict[str, Any]:
        """리포트용 직렬화"""
        return {
            "error": self.kind,
            "message": str(self),
            "diagnostics": self.diagnostics,
        }


class InvalidParameterError(WorkbenchError):
    """분포 파라미터가 정의역 밖 (λ ≤ 0, p ∉ (0,1) 등)"""
    kind = "invalid-parameter"


class NotFullSupportError(WorkbenchError):
    """윈도우 안에 질량 0 인 점이 있음"""
    kind = "not-full-support"


class DegenerateInputError(WorkbenchError):
    """평균 0, 크기편향 정규화 상수 불능 등 퇴화 입력"""
    kind = "degenerate-input"


class ShapeError(WorkbenchError):
    """윈도우 크기 불일치"""
    kind = "shape"


class WindowError(WorkbenchError):
    """경계 지지 조건 위반 또는 박스 밖 격자점"""
    kind = "window"


class DomainError(WorkbenchError):
    """양수여야 하는 함수값 / 절대연속성 위반 / 음수 인자"""
    kind = "domain"


class PreconditionError(WorkbenchError):
    """정리의 가정 미충족 (ULC 아님, 립시츠 위반 등)"""
    kind = "precondition"


class AccuracyError(WorkbenchError):
    """적분기가 요구 허용오차를 만족하지 못함"""
    kind = "accuracy"


class NumericError(WorkbenchError):
    """고유값 계산 실패, 대칭성 붕괴 등 수치 오류"""
    kind = "numeric"


class UsageError(WorkbenchError):
    """CLI 사용법 / 스펙 문자열 문법 오류"""
    kind = "usage"
