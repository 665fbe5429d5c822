"""格运算 API：交、并、序、障碍与合流。"""

from __future__ import annotations

from fastapi import APIRouter

from src.api.v1.command_runner import CommandRequest, CommandResponse, run_command

router = APIRouter(prefix="/v1/lattice", tags=["lattice"])


@router.post("/meet", response_model=CommandResponse)
async def post_meet(body: CommandRequest) -> CommandResponse:
    return await run_command("meet", body)


@router.post("/join", response_model=CommandResponse)
async def post_join(body: CommandRequest) -> CommandResponse:
    """``options.via_duality`` 为真时非合流对返回 409。"""
    return await run_command("join", body)


@router.post("/leq", response_model=CommandResponse)
async def post_leq(body: CommandRequest) -> CommandResponse:
    return await run_command("leq", body)


@router.post("/obstructions", response_model=CommandResponse)
async def post_obstructions(body: CommandRequest) -> CommandResponse:
    return await run_command("obstructions", body)


@router.post("/confluent", response_model=CommandResponse)
async def post_confluent(body: CommandRequest) -> CommandResponse:
    return await run_command("confluent", body)
