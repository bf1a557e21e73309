"""
cli - 명령줄 프런트엔드 모듈

스펙 문자열 파서, 실행 설정(RunConfig), 서브커맨드 구현을 제공합니다.
진입점은 프로젝트 루트의 main.py 입니다.

사용법:
    from modules.cli import parse_dist, run_command

    V = parse_dist("poisson:2")
"""

from modules.cli.spec_parser import (
    parse_dist,
    parse_function,
    parse_g0,
    parse_grid,
    split_dist_list,
    DIST_GRAMMAR,
    FUNCTION_GRAMMAR,
    GRID_GRAMMAR,
)

from modules.cli.run_config import RunConfig

from modules.cli.commands import (
    COMMANDS,
    parse_c,
    run_command,
)

__all__ = [
    "parse_dist",
    "parse_function",
    "parse_g0",
    "parse_grid",
    "split_dist_list",
    "DIST_GRAMMAR",
    "FUNCTION_GRAMMAR",
    "GRID_GRAMMAR",
    "RunConfig",
    "COMMANDS",
    "parse_c",
    "run_command",
]
