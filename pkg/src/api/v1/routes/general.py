"""偏序族 API。不可补全的族在 ``confluent`` 上返回 409。"""

from __future__ import annotations

from fastapi import APIRouter

from src.api.v1.command_runner import CommandRequest, CommandResponse, run_command

router = APIRouter(prefix="/v1/general", tags=["general-order"])


@router.post("/order", response_model=CommandResponse)
async def post_order(body: CommandRequest) -> CommandResponse:
    return await run_command("general order", body)


@router.post("/completable", response_model=CommandResponse)
async def post_completable(body: CommandRequest) -> CommandResponse:
    return await run_command("general completable", body)


@router.post("/confluent", response_model=CommandResponse)
async def post_confluent(body: CommandRequest) -> CommandResponse:
    return await run_command("general confluent", body)
