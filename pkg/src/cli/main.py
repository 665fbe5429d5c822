"""命令行入口：读取 JSON 输入，执行命令，把结果信封写到 stdout。

退出码：0 成功；1 领域拒绝或上限；2 输入格式错误；3 ``--strict`` 下布尔结果为假。
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import structlog

from src.domain.services import codec
from src.domain.services.commands import CommandOptions, execute
from src.infra.observability.structured_logging import configure_logging
from src.operators.errors import InputFormatError, ReductionError

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_REFUSED = 1
EXIT_MALFORMED = 2
EXIT_FALSE = 3

_FAMILY_COMMANDS = {
    "meet": "∧F 的规范算子",
    "join": "∨F 的规范算子",
    "leq": "两个算子的序关系 T1 ⪯ T2",
    "obstructions": "障碍集 Obs(F)",
    "confluent": "合流判定",
    "normal-form": "向量的范式与改写轨迹",
    "braided": "算子对的辫积",
    "complement": "F-补 C^F",
    "complete": "补全 F ∪ {C^F}",
    "check": "算子文件的完整审计",
}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", help="JSON 输入文件，'-' 表示标准输入")
    parser.add_argument(
        "--strict", action="store_true", help="布尔结果为假时以退出码 3 结束"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="redop", description="归约算子演算：格、合流、补全与截断表示"
    )
    parser.add_argument("--log-level", default=None, help="日志级别（默认取 REDOP_LOG_LEVEL）")
    commands = parser.add_subparsers(dest="command", required=True)

    for name, summary in _FAMILY_COMMANDS.items():
        sub = commands.add_parser(name, help=summary)
        _add_common(sub)
        if name == "normal-form":
            sub.add_argument("--vector", required=True, help="例如 'g4 - g3'")
            sub.add_argument(
                "--strategy", default="first", help="first 或 priority:i,j,...（算子下标）"
            )
            sub.add_argument(
                "--all", dest="all_normal_forms", action="store_true", help="同时列出全部范式"
            )
        if name == "complete":
            sub.add_argument(
                "--meet-form", action="store_true", help="附加把首个成员替换为 T∧C 的等价族"
            )
        if name == "join":
            sub.add_argument(
                "--via-duality", action="store_true", help="用对偶辫积计算合流对的并"
            )

    pres = commands.add_parser("pres", help="截断表示")
    pres_commands = pres.add_subparsers(dest="pres_command", required=True)
    for name, summary in (
        ("check", "长度 ≤ N 内的合流检查"),
        ("complete", "长度 ≤ N 内的补全"),
        ("nf", "多项式的范式"),
    ):
        sub = pres_commands.add_parser(name, help=summary)
        _add_common(sub)
        sub.add_argument("--degree", type=int, default=None, help="截断次数 N（缺省取文件）")
        if name == "check":
            sub.add_argument("--family", choices=("pair", "full"), default="full")
        if name == "nf":
            sub.add_argument("polynomial", help="例如 'yxy - 2/3*xx + 1'")
            sub.add_argument("--strategy", default="first")

    general = commands.add_parser("general", help="偏序上的广义归约算子")
    general_commands = general.add_subparsers(dest="general_command", required=True)
    for name, summary in (
        ("order", "由投影族诱导的序 <_F"),
        ("completable", "族是否可补全"),
        ("confluent", "广义合流定理的三个断言"),
    ):
        sub = general_commands.add_parser(name, help=summary)
        _add_common(sub)
    return parser


def _command_name(args: argparse.Namespace) -> str:
    if args.command == "pres":
        return f"pres {args.pres_command}"
    if args.command == "general":
        return f"general {args.general_command}"
    return str(args.command)


def _options(args: argparse.Namespace) -> CommandOptions:
    values: dict[str, Any] = {}
    for name in (
        "strategy",
        "vector",
        "all_normal_forms",
        "meet_form",
        "via_duality",
        "degree",
        "family",
        "polynomial",
    ):
        value = getattr(args, name, None)
        if value is not None:
            values[name] = value
    return codec.validate_document(CommandOptions, values)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(level=args.log_level)
    command = _command_name(args)
    try:
        text = _read_input(args.input)
    except OSError as exc:
        print(f"error: {args.input}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_MALFORMED
    try:
        document = codec.load_json(text, source=args.input)
        options = _options(args)
        envelope, outcome = execute(command, document, options)
    except InputFormatError as exc:
        logger.warning("cli.malformed_input", command=command, position=exc.position)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (ReductionError, RuntimeError) as exc:
        logger.warning("cli.command_failed", command=command, reason=str(exc))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    sys.stdout.write(codec.render_envelope(envelope))
    if args.strict and outcome.verdict is False:
        return EXIT_FALSE
    return EXIT_OK


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
