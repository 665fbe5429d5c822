"""JSON 输入解析与确定性输出。

所有输入错误都转换成带位置的 ``InputFormatError``：JSON 语法错误给出
``行:列``，结构错误给出点分隔的字段路径（如 ``operators.0.matrix.1.2``）。
"""

from __future__ import annotations

import hashlib
import json
import re
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from typing import Any, TypeVar

import structlog
from pydantic import BaseModel, ValidationError

from src.domain.models.compute_limits import ComputeLimits
from src.domain.models.files import (
    FamilyFile,
    OperatorSpec,
    PresentationFile,
    ReportEnvelope,
    VectorPayload,
)
from src.general_order.order import GeneralReductionOperator, PartialOrder
from src.operators.core_linear import LinearMap, OrderedGenSet, Vector, parse_scalar
from src.operators.errors import InputFormatError, InstanceTooLargeError, ReductionError
from src.operators.lattice import OperatorFamily
from src.operators.reduced_basis import (
    ReductionOperator,
    from_matrix,
    kernel_basis,
    operator_from_kernel,
)
from src.presentation.presentation import Presentation, make_presentation

logger = structlog.get_logger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)

_VECTOR_TERM = re.compile(r"(?:(\d+(?:/\d+)?)\s*\*\s*)?([^\s*]+)")


def load_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None


def validate_document(model: type[ModelT], data: Any) -> ModelT:
    """按 pydantic 模型校验，失败时报告第一处错误的字段路径。"""
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        position = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise InputFormatError(first["msg"], position) from None


@contextmanager
def at_position(position: str) -> Iterator[None]:
    """把领域输入错误定位到文档中的某个字段。"""
    try:
        yield
    except (InputFormatError, InstanceTooLargeError):
        raise
    except ReductionError as exc:
        raise InputFormatError(str(exc), position) from None
    except ValueError as exc:
        raise InputFormatError(str(exc), position) from None


def ambient_from_labels(labels: Sequence[str], limits: ComputeLimits) -> OrderedGenSet:
    if len(labels) > limits.max_generators:
        raise InstanceTooLargeError(
            f"{len(labels)} generators exceed the limit {limits.max_generators}"
        )
    with at_position("generators"):
        return OrderedGenSet(tuple(labels))


def vector_from_pairs(ambient: OrderedGenSet, pairs: VectorPayload, position: str) -> Vector:
    with at_position(position):
        return ambient.vector([(coefficient, label) for coefficient, label in pairs])


def parse_vector_text(ambient: OrderedGenSet, text: str, position: str = "vector") -> Vector:
    """解析 ``g4 - 2/3*g2 + g1`` 形式的向量；``0`` 表示零向量。"""
    compact = text.strip()
    if compact == "0":
        return ambient.zero()
    if not compact:
        raise InputFormatError("empty vector", position)
    if compact[0] not in "+-":
        compact = "+" + compact
    terms: list[tuple[int, str, str]] = []
    sign = 1
    for piece in re.split(r"([+-])", compact):
        token = piece.strip()
        if not token:
            continue
        if token in "+-":
            sign = 1 if token == "+" else -1
            continue
        match = _VECTOR_TERM.fullmatch(token)
        if match is None:
            raise InputFormatError(f"cannot read term {token!r}", position)
        terms.append((sign, match.group(1) or "1", match.group(2)))
    with at_position(position):
        return ambient.vector([(parse_scalar(c) * s, label) for s, c, label in terms])


def _kernel_vectors(ambient: OrderedGenSet, spec: OperatorSpec, position: str) -> list[Vector]:
    return [
        vector_from_pairs(ambient, pairs, f"{position}.kernel.{i}")
        for i, pairs in enumerate(spec.kernel or [])
    ]


def operator_from_spec(
    ambient: OrderedGenSet, spec: OperatorSpec, position: str
) -> ReductionOperator:
    """矩阵形式按归约矩阵条件校验；核形式取 θ(约化基)。两种形式同时给出时必须一致。"""
    from_kernel = None
    if spec.kernel is not None:
        vectors = _kernel_vectors(ambient, spec, position)
        with at_position(f"{position}.kernel"):
            from_kernel = operator_from_kernel(vectors, ambient)
    if spec.matrix is None:
        if from_kernel is None:
            raise InputFormatError("operator needs 'matrix' or 'kernel'", position)
        return from_kernel
    with at_position(f"{position}.matrix"):
        operator = from_matrix(spec.matrix, ambient)
    if from_kernel is not None and from_kernel != operator:
        raise InputFormatError("matrix and kernel forms describe different operators", position)
    return operator


def linear_map_from_spec(ambient: OrderedGenSet, spec: OperatorSpec, position: str) -> LinearMap:
    """偏序族只接受矩阵形式：核不能确定偏序下的算子。"""
    if spec.matrix is None:
        raise InputFormatError("operators over a partial order need the matrix form", position)
    with at_position(f"{position}.matrix"):
        return LinearMap.from_matrix(spec.matrix, ambient)


def family_from_file(document: FamilyFile, limits: ComputeLimits) -> OperatorFamily:
    ambient = ambient_from_labels(document.generators, limits)
    members = tuple(
        operator_from_spec(ambient, spec, f"operators.{i}")
        for i, spec in enumerate(document.operators)
    )
    return OperatorFamily(ambient, members)


def projectors_from_file(
    document: FamilyFile, limits: ComputeLimits
) -> tuple[OrderedGenSet, list[LinearMap]]:
    ambient = ambient_from_labels(document.generators, limits)
    maps = [
        linear_map_from_spec(ambient, spec, f"operators.{i}")
        for i, spec in enumerate(document.operators)
    ]
    return ambient, maps


def order_from_file(ambient: OrderedGenSet, document: FamilyFile) -> PartialOrder | None:
    if document.order is None:
        return None
    with at_position("order.pairs"):
        return PartialOrder.from_labels(ambient, document.order.pairs)


def general_members(
    maps: Sequence[LinearMap], order: PartialOrder
) -> list[GeneralReductionOperator]:
    members = []
    for i, operator in enumerate(maps):
        with at_position(f"operators.{i}"):
            members.append(GeneralReductionOperator.from_map(operator, order))
    return members


def presentation_from_file(document: PresentationFile, degree: int | None) -> Presentation:
    bound = degree if degree is not None else document.degree
    if bound is None:
        raise InputFormatError("a degree bound is required", "degree")
    rules = [
        (rule.lhs, [(coefficient, word) for coefficient, word in rule.rhs])
        for rule in document.rules
    ]
    with at_position("rules"):
        return make_presentation(document.alphabet, rules, bound)


def operator_payload(operator: LinearMap, limits: ComputeLimits) -> dict[str, Any]:
    """核形式总是给出；|G| 不超过 ``matrix_form_limit`` 时附加矩阵形式。"""
    if isinstance(operator, ReductionOperator):
        kernel = kernel_basis(operator).to_pairs()
    elif isinstance(operator, GeneralReductionOperator):
        kernel = [vector.to_pairs() for vector in operator.kernel_vectors()]
    else:
        ambient = operator.ambient
        kernel = [
            (ambient.generator(g) - image).to_pairs()
            for g, image in sorted(operator.images.items())
        ]
    payload: dict[str, Any] = {"kernel": kernel}
    if len(operator.ambient) <= limits.matrix_form_limit:
        payload["matrix"] = [[str(value) for value in row] for row in operator.to_matrix()]
    return payload


def family_payload(family: OperatorFamily, limits: ComputeLimits) -> dict[str, Any]:
    return {
        "generators": list(family.ambient.names),
        "operators": [operator_payload(member, limits) for member in family],
    }


def labels(ambient: OrderedGenSet, generators: Sequence[int] | frozenset[int]) -> list[str]:
    return [ambient.label(g) for g in sorted(generators)]


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def inputs_digest(*documents: Any) -> str:
    digest = hashlib.sha256()
    for document in documents:
        digest.update(canonical_json(document).encode("utf-8"))
    return digest.hexdigest()


def render_envelope(envelope: ReportEnvelope) -> str:
    """确定性输出：键排序、固定缩进、分数为规范文本。"""
    return json.dumps(envelope.model_dump(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
