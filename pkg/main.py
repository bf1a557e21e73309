"""
main.py - 이산 Bakry–Émery 검증 워크벤치 메인 엔트리

이 파일은 명령줄 인수를 해석해 각 모듈의 검증을 실행하고 리포트를 씁니다.

명령:
    curvature <dist>                    곡률 프로필 리포트
    evolve --dist --init --t            pmf 진화와 엔트로피 감쇠 시계열
    verify lsi|poincare|be              변형 LSI / 푸앵카레 / 적분형 BE(c) 검증
    constants --dist                    푸앵카레 상수, LSI 상수 하한, c_inf
    concentration --dist --g --t        꼬리 확률 vs 집중 경계
    decay --lambda --init --t           thinning 족 엔트로피 감쇠
    hyper --lambda --p --g0             초수축성 u(t) 추적
    multidim certify|verify|probe       Z₊^d 곱측도 검증
    probe-convolution                   합성곱 상수 탐색 (리포트 전용)

종료 코드:
    0  모든 검사 통과
    1  사용법/도메인 오류
    2  검사 실패 (리포트는 기록됨)

실행 방법:
    python main.py curvature poisson:2
    python main.py verify lsi --dist poisson:2 --f exp:0.3 --c auto
    python main.py --config experiment.env decay --lambda 2 --init poisson:1 --t geom:0.01,4,2
"""

import argparse
import sys
from typing import Optional, Sequence

from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent))

from pydantic import ValidationError

from config import load_settings
from exceptions import UsageError, WorkbenchError
from logger import logger, setup_logger

from modules.cli import DIST_GRAMMAR, FUNCTION_GRAMMAR, GRID_GRAMMAR, RunConfig, run_command
from modules.reporter import ReportWriter


EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CHECK_FAILED = 2


class WorkbenchArgumentParser(argparse.ArgumentParser):
    """인수 오류를 SystemExit(2) 대신 UsageError(종료 코드 1)로 전환"""

    def error(self, message: str):
        raise UsageError(f"{message}\n{self.format_usage()}")


# ===== CLI 인터페이스 =====

def build_parser() -> WorkbenchArgumentParser:
    """명령줄 파서 구성"""
    parser = WorkbenchArgumentParser(
        prog="main.py",
        description="이산 Bakry–Émery 검증 워크벤치",
    )
    parser.add_argument("--config", help="KEY=VALUE 설정 파일 (환경 변수보다 우선, 플래그보다 후순위)")
    parser.add_argument("--eps-tail", dest="eps_tail", type=float, help="절단 꼬리 질량 상한")
    parser.add_argument("--tol", type=float, help="적분 허용오차")
    parser.add_argument("--seed", type=int, help="난수 시드")
    parser.add_argument("--output-dir", dest="output_dir", help="리포트 출력 디렉토리")
    parser.add_argument("--format", dest="output_format", choices=["json", "csv"],
                        help="csv 면 곡률 프로필도 CSV 로 저장")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curvature", help="곡률 프로필 E(x) 리포트")
    p.add_argument("dist", help=f"분포 스펙: {DIST_GRAMMAR}")
    p.add_argument("--csv", action="store_true", help="프로필 CSV 저장")

    p = sub.add_parser("evolve", help="pmf 진화 시계열")
    p.add_argument("--dist", required=True, help="기준 분포 V")
    p.add_argument("--init", required=True, help="초기 분포 p0 (윈도우 ≤ V)")
    p.add_argument("--t", required=True, help=f"시간 격자: {GRID_GRAMMAR}")

    verify = sub.add_parser("verify", help="부등식 검증")
    vsub = verify.add_subparsers(dest="target", required=True)

    p = vsub.add_parser("lsi", help="변형 로그-소볼레프 부등식")
    p.add_argument("--dist", required=True)
    p.add_argument("--f", help=f"양수 함수: {FUNCTION_GRAMMAR}")
    p.add_argument("--p", help="주어지면 f = p/V 와 재서술 형태 검사")
    p.add_argument("--c", default="auto", help="auto 또는 실수")
    p.add_argument("--trials", type=int, help="--f, --p 가 없을 때 무작위 f 개수 (기본 LSI_TRIALS)")

    p = vsub.add_parser("poincare", help="푸앵카레 부등식")
    p.add_argument("--dist", required=True)
    p.add_argument("--c", default="auto")
    p.add_argument("--trials", type=int)

    p = vsub.add_parser("be", help="적분형 BE(c)")
    p.add_argument("--dist", required=True)
    p.add_argument("--c", default="auto")
    p.add_argument("--trials", type=int)

    p = sub.add_parser("constants", help="최적 상수 추정")
    p.add_argument("--dist", required=True)
    p.add_argument("--restarts", type=int)

    p = sub.add_parser("concentration", help="집중 부등식")
    p.add_argument("--dist", required=True)
    p.add_argument("--g", default="id", help="1-립시츠 함수 (기본 id)")
    p.add_argument("--t", required=True)
    p.add_argument("--c", default="auto")

    p = sub.add_parser("decay", help="포아송 thinning 엔트로피 감쇠")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--init", required=True)
    p.add_argument("--t", required=True)

    p = sub.add_parser("hyper", help="초수축성")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--g0", default="charlier1",
                   help="charlier1 | charlier2 | randomwalk:seed (유계, 6칸 뒤 평탄) | ...")
    p.add_argument("--t", default="0.05,0.1,0.2,0.3", help="짧은 시간 격자 권장")

    multidim = sub.add_parser("multidim", help="Z₊^d 곱측도")
    msub = multidim.add_subparsers(dest="target", required=True)
    for name, help_text in (("certify", "E^sym PSD 인증"), ("verify", "d차원 BE/푸앵카레")):
        p = msub.add_parser(name, help=help_text)
        p.add_argument("--dists", required=True, help="쉼표로 이은 분포 스펙 목록")
        p.add_argument("--c", default="auto", help="auto 면 min c_inf")
        if name == "verify":
            p.add_argument("--trials", type=int)
    p = msub.add_parser("probe", help="비곱측도 반례 탐색 (리포트 전용)")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--box", type=int, default=8)

    p = sub.add_parser("probe-convolution", help="합성곱 상수 탐색 (리포트 전용)")
    p.add_argument("--samples", type=int, default=100)

    return parser


def _command_key(args: argparse.Namespace) -> str:
    target = getattr(args, "target", None)
    return f"{args.command} {target}" if target else args.command


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    명령 실행 후 종료 코드 반환

    Returns:
        0 통과, 1 사용법/도메인 오류, 2 검사 실패
    """
    try:
        args = build_parser().parse_args(argv)
        try:
            base = load_settings(args.config)
        except FileNotFoundError as e:
            raise UsageError(str(e)) from e
        except ValidationError as e:
            raise UsageError(f"설정 파일 값 오류: {e}") from e

        if args.config:
            setup_logger(log_level=base.LOG_LEVEL, log_path=base.LOG_PATH, enable_file=base.LOG_TO_FILE)

        flags = {key: getattr(args, key) for key in ("eps_tail", "tol", "seed", "output_dir", "output_format")}
        try:
            cfg = RunConfig.from_sources(base, flags)
        except ValidationError as e:
            raise UsageError(f"실행 설정 오류: {e}") from e

        writer = ReportWriter(cfg.output_dir)
        passed = run_command(_command_key(args), args, cfg, writer)
    except WorkbenchError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        print(f"[ERROR] {e}", file=sys.stderr)
        return e.exit_code

    return EXIT_OK if passed else EXIT_CHECK_FAILED


# ===== 엔트리 포인트 =====

if __name__ == "__main__":
    sys.exit(run())
