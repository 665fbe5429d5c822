from __future__ import annotations

from fastapi import APIRouter

from src.api.v1.command_runner import CommandRequest, CommandResponse, run_command

router = APIRouter(prefix="/v1/pairs", tags=["pairs"])


@router.post("/braided", response_model=CommandResponse)
async def post_braided(body: CommandRequest) -> CommandResponse:
    return await run_command("braided", body)
