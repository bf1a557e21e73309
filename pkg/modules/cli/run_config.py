"""
run_config.py - 실행 설정 모델

우선순위: 명령줄 플래그 > --config 파일 > 환경 변수/.env > 기본값
"""

from typing import Optional

from pydantic import BaseModel, Field, field_validator

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from config import Settings


class RunConfig(BaseModel):
    """한 번의 실행에 쓰는 수치 설정"""
    eps_tail: float = Field(gt=0.0, le=1e-3)
    tol: float = Field(gt=0.0)
    seed: int
    be_trials: int = Field(ge=1)
    lsi_trials: int = Field(ge=1)
    lsi_restarts: int = Field(ge=1)
    output_dir: str
    output_format: str = Field(pattern="^(json|csv)$")

    @field_validator("output_dir")
    @classmethod
    def _non_empty(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("출력 디렉토리가 비어 있습니다")
        return value

    @classmethod
    def from_sources(cls, base: Settings, flags: Optional[dict] = None) -> "RunConfig":
        """
        Settings 위에 명시된 플래그(None 이 아닌 값)만 덮어쓰기

        Args:
            base: load_settings 결과 (--config 반영)
            flags: 명령줄에서 받은 값 {필드: 값}
        """
        values = {
            "eps_tail": base.EPS_TAIL,
            "tol": base.INTEGRATOR_TOL,
            "seed": base.DEFAULT_SEED,
            "be_trials": base.BE_TRIALS,
            "lsi_trials": base.LSI_TRIALS,
            "lsi_restarts": base.LSI_RESTARTS,
            "output_dir": base.OUTPUT_DIR,
            "output_format": base.OUTPUT_FORMAT,
        }
        for key, value in (flags or {}).items():
            if key in values and value is not None:
                values[key] = value
        return cls(**values)
