from __future__ import annotations

from fastapi import FastAPI

from src.api.v1.routes import check, completion, general, lattice, pairs, presentations, rewriting
from src.infra.observability.structured_logging import configure_logging

configure_logging()

app = FastAPI(title="归约算子演算 API")
app.include_router(lattice.router)
app.include_router(rewriting.router)
app.include_router(pairs.router)
app.include_router(completion.router)
app.include_router(presentations.router)
app.include_router(general.router)
app.include_router(check.router)


@app.get("/health")
async def health_check() -> dict[str, str]:
    return {"status": "ok"}
