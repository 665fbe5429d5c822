from __future__ import annotations

from fastapi import APIRouter

from src.api.v1.command_runner import CommandRequest, CommandResponse, run_command

router = APIRouter(prefix="/v1/rewriting", tags=["rewriting"])


@router.post("/normal-form", response_model=CommandResponse)
async def post_normal_form(body: CommandRequest) -> CommandResponse:
    """``options.vector`` 必填，``options.strategy`` 默认 first。"""
    return await run_command("normal-form", body)
