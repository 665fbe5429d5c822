"""计算规模上限模型。"""

from __future__ import annotations

from pydantic import BaseModel, Field

from src.infra.config.settings import AppSettings


class ComputeLimits(BaseModel):
    """一次命令执行允许的实例规模与输出形式。"""

    max_generators: int = Field(..., ge=1)
    matrix_form_limit: int = Field(..., ge=0)
    completable_search_limit: int = Field(..., ge=1, le=24)

    @classmethod
    def from_settings(cls, settings: AppSettings) -> "ComputeLimits":
        return cls(
            max_generators=settings.max_generators,
            matrix_form_limit=settings.matrix_form_limit,
            completable_search_limit=settings.completable_search_limit,
        )
