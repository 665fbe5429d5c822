"""结构化日志初始化。

控制台日志写到 stderr，stdout 只留给命令的 JSON 结果。
配置了 ``log_dir`` 时额外写 app.log（INFO 及以上）与 error.log（WARNING 及以上）。
"""

from __future__ import annotations

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any

import structlog

from src.infra.config.settings import get_settings

_ROTATE_BYTES = 10 * 1024 * 1024
_ROTATE_KEEP = 5

_PRE_CHAIN: list[Any] = [
    structlog.contextvars.merge_contextvars,
    structlog.processors.TimeStamper(fmt="iso"),
    structlog.stdlib.add_log_level,
    structlog.processors.StackInfoRenderer(),
    structlog.processors.format_exc_info,
]


def _formatter(renderer: Any) -> logging.Formatter:
    return structlog.stdlib.ProcessorFormatter(
        processors=[structlog.stdlib.ProcessorFormatter.remove_processors_meta, renderer]
    )


def _json_renderer() -> Any:
    return structlog.processors.JSONRenderer(ensure_ascii=False)


def _rotating(path: Path, level: int) -> logging.Handler:
    handler = RotatingFileHandler(
        path, maxBytes=_ROTATE_BYTES, backupCount=_ROTATE_KEEP, encoding="utf-8"
    )
    handler.setLevel(level)
    handler.setFormatter(_formatter(_json_renderer()))
    return handler


def configure_logging(level: str | None = None, json_console: bool | None = None) -> None:
    """配置 structlog 与 root logger，可重复调用（每次替换 root 上的 handler）。

    Args:
        level: 日志级别，缺省取 ``REDOP_LOG_LEVEL``
        json_console: 强制控制台输出 JSON，缺省取 ``REDOP_LOG_JSON``；非终端总是 JSON
    """
    settings = get_settings()
    level_name = (level or settings.log_level).upper()
    wants_json = settings.log_json if json_console is None else json_console
    colour = sys.stderr.isatty() and not wants_json

    structlog.configure(
        processors=[*_PRE_CHAIN, structlog.stdlib.ProcessorFormatter.wrap_for_formatter],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    console = logging.StreamHandler(sys.stderr)
    console.setLevel(level_name)
    console.setFormatter(
        _formatter(structlog.dev.ConsoleRenderer(colors=True) if colour else _json_renderer())
    )
    handlers: list[logging.Handler] = [console]
    if settings.log_dir:
        target = Path(settings.log_dir)
        target.mkdir(parents=True, exist_ok=True)
        handlers.append(_rotating(target / "app.log", logging.INFO))
        handlers.append(_rotating(target / "error.log", logging.WARNING))

    root = logging.getLogger()
    root.setLevel(level_name)
    root.handlers.clear()
    for handler in handlers:
        root.addHandler(handler)

    structlog.get_logger(__name__).debug(
        "logging.configured",
        level=level_name,
        log_dir=settings.log_dir,
        console="color" if colour else "json",
    )
