"""补与补全 API。"""

from __future__ import annotations

from fastapi import APIRouter

from src.api.v1.command_runner import CommandRequest, CommandResponse, run_command

router = APIRouter(prefix="/v1/completion", tags=["completion"])


@router.post("/complement", response_model=CommandResponse)
async def post_complement(body: CommandRequest) -> CommandResponse:
    return await run_command("complement", body)


@router.post("/complete", response_model=CommandResponse)
async def post_complete(body: CommandRequest) -> CommandResponse:
    return await run_command("complete", body)
