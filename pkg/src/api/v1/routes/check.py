from __future__ import annotations

from fastapi import APIRouter

from src.api.v1.command_runner import CommandRequest, CommandResponse, run_command

router = APIRouter(prefix="/v1", tags=["check"])


@router.post("/check", response_model=CommandResponse)
async def post_check(body: CommandRequest) -> CommandResponse:
    """审计结果总是 200；``verdict`` 为假表示发现了违反项。"""
    return await run_command("check", body)
