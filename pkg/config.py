"""
config.py - 환경 변수 관리 모듈

이 파일은 워크벤치의 모든 수치 설정을 관리합니다.
.env 파일 또는 환경 변수에서 허용오차, 시드, 출력 경로 등을 로드합니다.

사용법:
    from config import settings
    print(settings.EPS_TAIL)

    # --config 파일 적용
    from config import load_settings
    run_settings = load_settings("experiment.env")
"""

from pathlib import Path
from typing import Optional

from dotenv import dotenv_values
from pydantic import Field
from pydantic_settings import BaseSettings


# 프로젝트 루트 디렉토리 경로
PROJECT_ROOT = Path(__file__).parent.absolute()


class Settings(BaseSettings):
    """
    워크벤치 설정 클래스

    모든 환경 변수를 관리하며, .env 파일에서 자동으로 로드됩니다.
    Pydantic을 사용하여 타입 검증 및 기본값 설정을 수행합니다.
    """

    # ===== 절단(truncation) =====
    EPS_TAIL: float = Field(
        default=1e-12,
        gt=0.0,
        le=1e-3,
        description="절단 윈도우 밖 꼬리 질량 상한"
    )

    # ===== 적분기 =====
    INTEGRATOR_TOL: float = Field(
        default=1e-10,
        gt=0.0,
        description="반군 진화 / ODE 적분 허용오차"
    )

    # ===== 난수 / 시행 횟수 =====
    DEFAULT_SEED: int = Field(
        default=20240607,
        description="모든 무작위 검증의 기본 시드"
    )
    BE_TRIALS: int = Field(
        default=200,
        ge=1,
        description="적분형 BE(c) 무작위 시행 횟수"
    )
    LSI_TRIALS: int = Field(
        default=500,
        ge=1,
        description="수정 로그-소볼레프 무작위 시행 횟수"
    )
    LSI_RESTARTS: int = Field(
        default=8,
        ge=1,
        description="LSI 상수 탐색 다중 시작 횟수"
    )
    MAX_WORKERS: int = Field(
        default=4,
        ge=1,
        description="병렬 재시작 워커 수"
    )

    # ===== 다차원 박스 =====
    MAX_DIM: int = Field(
        default=4,
        ge=1,
        description="격자 차원 상한"
    )
    MAX_AXIS_N: int = Field(
        default=64,
        ge=2,
        description="축별 윈도우 크기 상한"
    )
    BOX_MARGIN: int = Field(
        default=2,
        ge=2,
        description="상단 경계 내부 지지 여백 (셀 수)"
    )

    # ===== 출력 =====
    OUTPUT_DIR: str = Field(
        default=str(PROJECT_ROOT / "reports"),
        description="리포트 기본 출력 디렉토리"
    )
    OUTPUT_FORMAT: str = Field(
        default="json",
        pattern="^(json|csv)$",
        description="리포트 형식 (json, csv)"
    )

    # ===== 로깅 =====
    LOG_LEVEL: str = Field(
        default="INFO",
        description="로그 레벨 (DEBUG, INFO, WARNING, ERROR, CRITICAL)"
    )
    LOG_PATH: str = Field(
        default=str(PROJECT_ROOT / "logs"),
        description="로그 파일 저장 디렉토리"
    )
    LOG_TO_FILE: bool = Field(
        default=True,
        description="파일 로그 활성화 여부"
    )

    class Config:
        """Pydantic 설정"""
        env_file = PROJECT_ROOT / ".env"
        env_file_encoding = "utf-8"
        case_sensitive = False
        extra = "allow"


# 전역 설정 인스턴스
settings = Settings()


def load_settings(config_file: Optional[str] = None) -> Settings:
    """
    --config 키-값 파일을 반영한 설정 반환

    파일의 키는 Settings 필드 이름(대소문자 무시)에 대응하며,
    환경 변수/기본값을 덮어씁니다. 파일이 없으면 전역 설정을 그대로 반환합니다.

    Args:
        config_file: KEY=VALUE 형식 파일 경로

    Returns:
        Settings 인스턴스
    """
    if not config_file:
        return settings

    path = Path(config_file)
    if not path.exists():
        raise FileNotFoundError(f"설정 파일 없음: {config_file}")

    overrides = {
        key.upper(): value
        for key, value in dotenv_values(path).items()
        if value is not None
    }
    return Settings(**overrides)


def print_settings():
    """현재 설정 출력 (디버깅용)"""
    print("=" * 50)
    print("워크벤치 설정")
    print("=" * 50)
    for name in Settings.model_fields:
        print(f"  {name}: {getattr(settings, name)}")
    print("=" * 50)


if __name__ == "__main__":
    print_settings()
