"""CLI 与 HTTP 共用的命令层：解析输入文档、调用算子库、组装结果信封。"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from typing import Any, Literal

import structlog
from pydantic import BaseModel, ConfigDict, Field

from src.domain.models.compute_limits import ComputeLimits
from src.domain.models.files import (
    FamilyFile,
    OperatorFile,
    OperatorSpec,
    PresentationFile,
    ReportEnvelope,
)
from src.domain.services import codec
from src.general_order.completable import (
    IMAGE_ASSUMPTION,
    general_confluence,
    general_f_complement,
    is_completable,
)
from src.general_order.order import (
    PartialOrder,
    is_general_reduction_operator,
    order_from_projectors,
)
from src.infra.config.settings import get_settings
from src.operators.completion import complete, f_complement, is_minimal_complement
from src.operators.core_linear import LinearMap, OrderedGenSet
from src.operators.errors import InputFormatError, OrderCycleError, ReductionError
from src.operators.lattice import (
    OperatorFamily,
    is_confluent,
    join_all,
    leq,
    meet,
    obstructions,
    red_family,
)
from src.operators.pair_ops import braided, braided_payload, join_via_duality
from src.operators.reduced_basis import kernel_basis, matrix_violations, reduce_basis
from src.operators.rewriting import (
    RewriteStrategy,
    all_normal_forms,
    trace_normal_form,
    trace_to_payload,
)
from src.presentation.presentation import (
    Presentation,
    complete_presentation,
    is_confluent_presentation,
    presentation_obstructions,
    word_normal_form,
)
from src.presentation.words import Word, word_label

logger = structlog.get_logger(__name__)


class CommandOptions(BaseModel):
    """子命令的可选参数，CLI 标志与 HTTP 请求体共用。"""

    model_config = ConfigDict(extra="forbid")

    strategy: str = "first"
    vector: str | None = None
    all_normal_forms: bool = False
    meet_form: bool = False
    via_duality: bool = False
    degree: int | None = Field(default=None, ge=0)
    family: Literal["pair", "full"] = "full"
    polynomial: str | None = None


@dataclass(frozen=True)
class CommandResult:
    """命令的结果；``verdict`` 为布尔查询的真值，供 ``--strict`` 使用。"""

    result: dict[str, Any]
    verdict: bool | None = None
    degree_bound: int | None = None
    warnings: list[str] = field(default_factory=list)


CommandHandler = Callable[[Any, CommandOptions, ComputeLimits], CommandResult]


def _family(document: Any, limits: ComputeLimits) -> tuple[OperatorFamily, list[str]]:
    parsed = codec.validate_document(FamilyFile, document)
    warnings = []
    if parsed.order is not None:
        warnings.append("order ignored: lattice commands use the generator list order")
    return codec.family_from_file(parsed, limits), warnings


def _pair(family: OperatorFamily, command: str) -> OperatorFamily:
    if len(family) != 2:
        raise InputFormatError(
            f"{command} needs exactly two operators, got {len(family)}", "operators"
        )
    return family


def run_meet(document: Any, options: CommandOptions, limits: ComputeLimits) -> CommandResult:
    family, warnings = _family(document, limits)
    return CommandResult(
        {"meet": codec.operator_payload(meet(family), limits)}, warnings=warnings
    )


def run_join(document: Any, options: CommandOptions, limits: ComputeLimits) -> CommandResult:
    """格的并；``via_duality`` 时改用合流对的对偶辫积，非合流对被拒绝。"""
    family, warnings = _family(document, limits)
    if options.via_duality:
        first, second = _pair(family, "join --via-duality").members
        joined = join_via_duality(first, second)
        method = "duality"
    else:
        joined = join_all(family)
        method = "kernel-intersection"
    result = {"join": codec.operator_payload(joined, limits), "method": method}
    return CommandResult(result, warnings=warnings)


def run_leq(document: Any, options: CommandOptions, limits: ComputeLimits) -> CommandResult:
    family, warnings = _family(document, limits)
    first, second = _pair(family, "leq").members
    verdict = leq(first, second)
    return CommandResult({"leq": verdict}, verdict=verdict, warnings=warnings)


def run_obstructions(
    document: Any, options: CommandOptions, limits: ComputeLimits
) -> CommandResult:
    family, warnings = _family(document, limits)
    ambient = family.ambient
    return CommandResult(
        {
            "obstructions": codec.labels(ambient, obstructions(family)),
            "red": codec.labels(ambient, red_family(family)),
            "meet_red": codec.labels(ambient, meet(family).red),
        },
        warnings=warnings,
    )


def run_confluent(document: Any, options: CommandOptions, limits: ComputeLimits) -> CommandResult:
    family, warnings = _family(document, limits)
    verdict = is_confluent(family)
    result = {
        "confluent": verdict,
        "obstructions": codec.labels(family.ambient, obstructions(family)),
    }
    return CommandResult(result, verdict=verdict, warnings=warnings)


def run_normal_form(
    document: Any, options: CommandOptions, limits: ComputeLimits
) -> CommandResult:
    family, warnings = _family(document, limits)
    if options.vector is None:
        raise InputFormatError("a vector is required", "vector")
    vector = codec.parse_vector_text(family.ambient, options.vector)
    try:
        strategy = RewriteStrategy.parse(options.strategy)
        trace = trace_normal_form(family, vector, strategy)
    except InputFormatError:
        raise
    except ReductionError as exc:
        raise InputFormatError(str(exc), "strategy") from None
    result: dict[str, Any] = {
        "strategy": strategy.describe(),
        "normal_form": trace.result.to_pairs(),
        "trace": trace_to_payload(trace),
    }
    if options.all_normal_forms:
        found = all_normal_forms(family, vector)
        result["all_normal_forms"] = sorted(v.to_pairs() for v in found)
    return CommandResult(result, warnings=warnings)


def run_braided(document: Any, options: CommandOptions, limits: ComputeLimits) -> CommandResult:
    family, warnings = _family(document, limits)
    first, second = _pair(family, "braided").members
    pair = braided(first, second)
    return CommandResult(braided_payload(pair), verdict=pair.confluent, warnings=warnings)


def run_complement(
    document: Any, options: CommandOptions, limits: ComputeLimits
) -> CommandResult:
    family, warnings = _family(document, limits)
    complement = f_complement(family)
    result = {
        "obstructions": codec.labels(family.ambient, obstructions(family)),
        "complement": codec.operator_payload(complement, limits),
        "minimal": is_minimal_complement(family, complement),
    }
    return CommandResult(result, warnings=warnings)


def run_complete(document: Any, options: CommandOptions, limits: ComputeLimits) -> CommandResult:
    family, warnings = _family(document, limits)
    report = complete(family, meet_form=options.meet_form)
    result: dict[str, Any] = {
        "meet": codec.operator_payload(report.meet, limits),
        "obstructions": codec.labels(family.ambient, report.obstructions),
        "complement": codec.operator_payload(report.complement, limits),
        "completed_family": codec.family_payload(report.completed_family, limits),
        "confluent": is_confluent(report.completed_family),
    }
    if report.meet_form_family is not None:
        result["meet_form_family"] = codec.family_payload(report.meet_form_family, limits)
    return CommandResult(result, warnings=warnings)


def _audit_operator(
    ambient: OrderedGenSet,
    spec: OperatorSpec,
    position: str,
    order: PartialOrder | None,
) -> dict[str, Any]:
    """报告一个算子的所有问题，而不是在第一处失败。"""
    entry: dict[str, Any] = {"position": position, "violations": []}
    violations: list[dict[str, Any]] = entry["violations"]
    raw: LinearMap | None = None
    if spec.matrix is not None:
        try:
            raw = LinearMap.from_matrix(spec.matrix, ambient)
        except ReductionError as exc:
            violations.append({"check": "shape", "message": str(exc)})
            return entry
        if order is None:
            for problem in matrix_violations(spec.matrix):
                violations.append(
                    {
                        "check": f"condition {problem.condition}",
                        "row": problem.row + 1,
                        "column": problem.column + 1,
                        "message": str(problem),
                    }
                )
        entry["idempotent"] = raw.is_idempotent()
        reference = order or PartialOrder.total(ambient)
        entry["order_decreasing"] = all(
            image.support <= reference.below[g] for g, image in raw.images.items()
        )
        if not entry["idempotent"]:
            violations.append({"check": "idempotent", "message": "operator is not idempotent"})
        if not entry["order_decreasing"]:
            violations.append(
                {"check": "order", "message": "some image is not below its generator"}
            )
    if spec.kernel is not None:
        try:
            vectors = [
                codec.vector_from_pairs(ambient, pairs, f"{position}.kernel.{i}")
                for i, pairs in enumerate(spec.kernel)
            ]
        except InputFormatError as exc:
            violations.append({"check": "kernel", "message": str(exc)})
            return entry
        basis = reduce_basis(vectors, ambient)
        entry["kernel_dimension"] = basis.dimension
        if basis.dimension != len(vectors):
            violations.append(
                {"check": "kernel", "message": "kernel vectors are linearly dependent"}
            )
        if raw is not None and order is None and not violations:
            from_kernel = kernel_basis(codec.operator_from_spec(ambient, spec, position))
            if from_kernel != basis:
                violations.append(
                    {"check": "forms", "message": "matrix and kernel forms disagree"}
                )
    if order is not None and raw is not None:
        entry["general"] = is_general_reduction_operator(raw, order)
    return entry


def run_check(document: Any, options: CommandOptions, limits: ComputeLimits) -> CommandResult:
    """对族文件或单算子文件做完整审计：幂等、序递减与归约矩阵三条件。"""
    if isinstance(document, dict) and "operators" in document:
        parsed = codec.validate_document(FamilyFile, document)
        ambient = codec.ambient_from_labels(parsed.generators, limits)
        order = codec.order_from_file(ambient, parsed)
        specs = [(f"operators.{i}", spec) for i, spec in enumerate(parsed.operators)]
    else:
        single = codec.validate_document(OperatorFile, document)
        ambient = codec.ambient_from_labels(single.generators, limits)
        order = None
        specs = [("operator", OperatorSpec(matrix=single.matrix, kernel=single.kernel))]
    entries = [_audit_operator(ambient, spec, position, order) for position, spec in specs]
    verdict = not any(entry["violations"] for entry in entries)
    logger.info("commands.check_finished", operators=len(entries), ok=verdict)
    return CommandResult({"ok": verdict, "operators": entries}, verdict=verdict)


def _presentation(document: Any, options: CommandOptions) -> Presentation:
    parsed = codec.validate_document(PresentationFile, document)
    return codec.presentation_from_file(parsed, options.degree)


def _word_labels(presentation: Presentation, words: Iterable[Word]) -> list[str]:
    ordered = sorted(words, key=lambda w: presentation.space.index(w))
    return [word_label(w) for w in ordered]


def run_pres_check(
    document: Any, options: CommandOptions, limits: ComputeLimits
) -> CommandResult:
    presentation = _presentation(document, options)
    found = presentation_obstructions(presentation, options.family)
    verdict = is_confluent_presentation(presentation, options.family)
    result: dict[str, Any] = {
        "confluent": verdict,
        "family": options.family,
        "obstructions": _word_labels(presentation, found),
        "presentation": presentation.to_payload(),
    }
    if verdict:
        result["normal_words"] = [word_label(w) for w in presentation.normal_words()]
    return CommandResult(result, verdict=verdict, degree_bound=presentation.degree)


def run_pres_complete(
    document: Any, options: CommandOptions, limits: ComputeLimits
) -> CommandResult:
    presentation = _presentation(document, options)
    completed = complete_presentation(presentation)
    before = {rule.lhs for rule in presentation.rules}
    added = [rule.to_payload() for rule in completed.rules if rule.lhs not in before]
    result = {
        "presentation": completed.to_payload(),
        "added_rules": added,
        "confluent": is_confluent_presentation(completed),
    }
    return CommandResult(result, degree_bound=completed.degree)


def run_pres_nf(document: Any, options: CommandOptions, limits: ComputeLimits) -> CommandResult:
    presentation = _presentation(document, options)
    if options.polynomial is None:
        raise InputFormatError("a polynomial is required", "polynomial")
    with codec.at_position("polynomial"):
        polynomial = presentation.space.parse_polynomial(options.polynomial)
        strategy = RewriteStrategy.parse(options.strategy)
    reduced = word_normal_form(presentation, polynomial, strategy)
    warnings = []
    if not is_confluent_presentation(presentation):
        warnings.append("presentation is not confluent up to this degree; normal form may vary")
    result = {
        "polynomial": presentation.space.format_polynomial(polynomial),
        "normal_form": presentation.space.format_polynomial(reduced),
        "terms": reduced.to_pairs(),
    }
    return CommandResult(result, degree_bound=presentation.degree, warnings=warnings)


def _general(
    document: Any, limits: ComputeLimits
) -> tuple[PartialOrder, list[LinearMap], list[str]]:
    parsed = codec.validate_document(FamilyFile, document)
    ambient, maps = codec.projectors_from_file(parsed, limits)
    order = codec.order_from_file(ambient, parsed)
    warnings = []
    if order is None:
        with codec.at_position("operators"):
            order = order_from_projectors(maps)
        if order is None:
            raise OrderCycleError("the relation induced by the projectors has a cycle")
        warnings.append("order derived from the projectors")
    codec.general_members(maps, order)
    return order, maps, warnings


def run_general_order(
    document: Any, options: CommandOptions, limits: ComputeLimits
) -> CommandResult:
    parsed = codec.validate_document(FamilyFile, document)
    _, maps = codec.projectors_from_file(parsed, limits)
    with codec.at_position("operators"):
        order = order_from_projectors(maps)
    if order is None:
        return CommandResult({"acyclic": False, "order": None}, verdict=False)
    return CommandResult({"acyclic": True, "order": order.to_payload()}, verdict=True)


def run_general_completable(
    document: Any, options: CommandOptions, limits: ComputeLimits
) -> CommandResult:
    order, maps, warnings = _general(document, limits)
    found = is_completable(maps, order, limits.completable_search_limit)
    result: dict[str, Any] = {
        "completable": found is not None,
        "meet": codec.operator_payload(found, limits) if found is not None else None,
        "order": order.to_payload(),
        "assumption": IMAGE_ASSUMPTION,
    }
    return CommandResult(result, verdict=found is not None, warnings=warnings)


def run_general_confluent(
    document: Any, options: CommandOptions, limits: ComputeLimits
) -> CommandResult:
    order, maps, warnings = _general(document, limits)
    report = general_confluence(maps, order)
    result = report.to_payload()
    result["meet"] = codec.operator_payload(report.meet, limits)
    result["order"] = order.to_payload()
    if not report.confluent:
        result["complement"] = codec.operator_payload(general_f_complement(maps, order), limits)
    return CommandResult(result, verdict=report.confluent, warnings=warnings)


COMMANDS: dict[str, CommandHandler] = {
    "meet": run_meet,
    "join": run_join,
    "leq": run_leq,
    "obstructions": run_obstructions,
    "confluent": run_confluent,
    "normal-form": run_normal_form,
    "braided": run_braided,
    "complement": run_complement,
    "complete": run_complete,
    "check": run_check,
    "pres check": run_pres_check,
    "pres complete": run_pres_complete,
    "pres nf": run_pres_nf,
    "general order": run_general_order,
    "general completable": run_general_completable,
    "general confluent": run_general_confluent,
}


def execute(
    command: str,
    document: Any,
    options: CommandOptions | None = None,
    limits: ComputeLimits | None = None,
) -> tuple[ReportEnvelope, CommandResult]:
    """执行一个命令并包装成结果信封。

    Raises:
        ReductionError: 输入错误或领域拒绝（不可补全、非合流对等）
        RuntimeError: 迭代上限或内部一致性错误
    """
    handler = COMMANDS.get(command)
    if handler is None:
        raise ReductionError(f"unknown command {command!r}")
    chosen = options or CommandOptions()
    active = limits or ComputeLimits.from_settings(get_settings())
    outcome = handler(document, chosen, active)
    envelope = ReportEnvelope(
        command=command,
        inputs_digest=codec.inputs_digest(
            document, chosen.model_dump(exclude_defaults=True)
        ),
        result=outcome.result,
        degree_bound=outcome.degree_bound,
        warnings=outcome.warnings,
    )
    logger.debug("commands.executed", command=command, verdict=outcome.verdict)
    return envelope, outcome
