"""族文件、表示文件与结果信封的 pydantic 模型。"""

from __future__ import annotations

from typing import Annotated, Any, Literal

from pydantic import AfterValidator, BaseModel, ConfigDict, Field, StrictInt, StrictStr
from pydantic import model_validator

from src.operators.core_linear import parse_scalar


def _validate_scalar(value: str | int) -> str | int:
    parse_scalar(value)
    return value


ScalarText = Annotated[StrictStr | StrictInt, AfterValidator(_validate_scalar)]
PairEntry = tuple[ScalarText, StrictStr]
VectorPayload = list[PairEntry]


class OperatorSpec(BaseModel):
    """一个算子：矩阵形式、核形式，或二者同时给出（必须一致）。"""

    model_config = ConfigDict(extra="forbid")

    matrix: list[list[ScalarText]] | None = None
    kernel: list[VectorPayload] | None = None

    @model_validator(mode="after")
    def _has_a_form(self) -> OperatorSpec:
        if self.matrix is None and self.kernel is None:
            raise ValueError("operator needs 'matrix' or 'kernel'")
        return self


class OrderSpec(BaseModel):
    """偏序的覆盖对 ``[较小, 较大]``。"""

    model_config = ConfigDict(extra="forbid")

    pairs: list[tuple[StrictStr, StrictStr]] = Field(default_factory=list)


class OperatorFile(OperatorSpec):
    """单个算子文件，``check`` 子命令使用。"""

    generators: list[StrictStr] = Field(min_length=1)


class FamilyFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    generators: list[StrictStr] = Field(min_length=1)
    operators: list[OperatorSpec] = Field(min_length=1)
    order: OrderSpec | None = None


class RuleSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    lhs: StrictStr
    rhs: VectorPayload = Field(default_factory=list)


class PresentationFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    alphabet: list[StrictStr] = Field(min_length=1)
    order: Literal["deglex"] = "deglex"
    degree: int | None = Field(default=None, ge=0)
    rules: list[RuleSpec] = Field(default_factory=list)


class ReportEnvelope(BaseModel):
    """所有命令统一的输出信封。"""

    command: str
    inputs_digest: str
    result: dict[str, Any]
    degree_bound: int | None = None
    warnings: list[str] = Field(default_factory=list)
