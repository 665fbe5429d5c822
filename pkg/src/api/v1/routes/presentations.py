"""截断表示 API，文档为表示文件，次数由 ``options.degree`` 或文件给出。"""

from __future__ import annotations

from fastapi import APIRouter

from src.api.v1.command_runner import CommandRequest, CommandResponse, run_command

router = APIRouter(prefix="/v1/presentations", tags=["presentations"])


@router.post("/check", response_model=CommandResponse)
async def post_check(body: CommandRequest) -> CommandResponse:
    return await run_command("pres check", body)


@router.post("/complete", response_model=CommandResponse)
async def post_complete(body: CommandRequest) -> CommandResponse:
    return await run_command("pres complete", body)


@router.post("/nf", response_model=CommandResponse)
async def post_normal_form(body: CommandRequest) -> CommandResponse:
    return await run_command("pres nf", body)
