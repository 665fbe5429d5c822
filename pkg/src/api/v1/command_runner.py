"""HTTP 路由共用的命令执行：在工作线程中运行计算，并把领域错误映射为状态码。"""

from __future__ import annotations

from typing import Any

import structlog
from anyio import to_thread
from fastapi import HTTPException
from pydantic import BaseModel, Field

from src.domain.models.files import ReportEnvelope
from src.domain.services.commands import CommandOptions, CommandResult, execute
from src.operators.errors import (
    ConsistencyError,
    InputFormatError,
    IterationCapError,
    ReductionError,
)

logger = structlog.get_logger(__name__)


class CommandRequest(BaseModel):
    """请求体：与 CLI 读取的 JSON 文档相同，外加命令参数。"""

    document: dict[str, Any]
    options: CommandOptions = Field(default_factory=CommandOptions)


class CommandResponse(ReportEnvelope):
    verdict: bool | None = None


async def run_command(command: str, body: CommandRequest) -> CommandResponse:
    """执行命令。

    Raises:
        HTTPException: 422 输入格式错误；409 领域拒绝或迭代上限；500 内部一致性错误
    """

    def _blocking() -> tuple[ReportEnvelope, CommandResult]:
        return execute(command, body.document, body.options)

    try:
        envelope, outcome = await to_thread.run_sync(_blocking)
    except InputFormatError as exc:
        raise HTTPException(
            status_code=422, detail={"position": exc.position, "message": str(exc)}
        ) from exc
    except (ReductionError, IterationCapError) as exc:
        logger.info("api.command_refused", command=command, reason=str(exc))
        raise HTTPException(status_code=409, detail=str(exc)) from exc
    except ConsistencyError as exc:
        logger.error("api.consistency_failure", command=command, reason=str(exc))
        raise HTTPException(status_code=500, detail=str(exc)) from exc
    return CommandResponse(**envelope.model_dump(), verdict=outcome.verdict)
