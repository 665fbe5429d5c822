"""可补全族、广义合流定理与广义补。

偏序下 ∧F 未必存在。``is_completable`` 穷举候选像集 B ⊆ G，
寻找沿 V = Σ ker(T) 投影到 K^(B) 且满足序条件的算子；
搜索假设算子的像由生成元张成，该假设会写入报告。
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import structlog

from src.general_order.order import (
    GeneralReductionOperator,
    PartialOrder,
    is_general_reduction_operator,
)
from src.infra.config.settings import get_settings
from src.operators.core_linear import LinearMap, Vector, check_same_ambient
from src.operators.echelon import descending, row_reduce
from src.operators.errors import (
    ConsistencyError,
    InstanceTooLargeError,
    InvalidOperatorError,
    NotCompletableError,
)
from src.operators.rewriting import AbstractRewritingSystem

logger = structlog.get_logger(__name__)

IMAGE_ASSUMPTION = "operator images are spanned by generators"

GeneralFamilyLike = Sequence[LinearMap]


def _coerce(
    family: GeneralFamilyLike, order: PartialOrder
) -> tuple[GeneralReductionOperator, ...]:
    if not family:
        raise InvalidOperatorError("a family needs at least one operator")
    members = []
    for position, operator in enumerate(family):
        check_same_ambient(order.ambient, operator.ambient)
        try:
            members.append(GeneralReductionOperator.from_map(operator, order))
        except InvalidOperatorError as exc:
            raise InvalidOperatorError(f"operator {position + 1}: {exc}") from None
    return tuple(members)


def _kernel_rows(members: Sequence[GeneralReductionOperator]) -> list[dict[int, Fraction]]:
    rows: list[dict[int, Fraction]] = []
    for member in members:
        rows.extend(vector.as_dict() for vector in member.kernel_vectors())
    return rows


def _candidate_images(size: int, rank: int, support: frozenset[int]) -> list[tuple[int, ...]]:
    """所有大小为 |G| − dim V 且包含 G \\ supp(V) 的候选集合，按字典序排列。"""
    required = tuple(g for g in range(size) if g not in support)
    free = sorted(support)
    needed = size - rank - len(required)
    if needed < 0 or needed > len(free):
        return []
    return sorted(tuple(sorted(required + chosen)) for chosen in combinations(free, needed))


def _projector_onto(
    order: PartialOrder, rows: list[dict[int, Fraction]], image: tuple[int, ...]
) -> GeneralReductionOperator | None:
    """沿 V 投影到 K^(image) 的算子；V 与 K^(image) 不互补或违反序条件时返回 None。"""
    ambient = order.ambient
    chosen = set(image)
    others = [g for g in range(len(ambient)) if g not in chosen]
    reduced = row_reduce(rows, others + sorted(chosen))
    if {pivot for pivot, _ in reduced} != set(others):
        return None
    images: dict[int, Vector] = {}
    for pivot, row in reduced:
        tail = {g: -value for g, value in row.items() if g != pivot}
        images[pivot] = Vector.from_mapping(ambient, tail)
    if not all(images[g].support <= order.below[g] for g in images):
        return None
    return GeneralReductionOperator.from_images(order, images)


def is_completable(
    family: GeneralFamilyLike, order: PartialOrder, search_limit: int | None = None
) -> GeneralReductionOperator | None:
    """存在以 Σ ker(T) 为核的归约算子时返回它（即 ∧F），否则返回 None。

    多个候选同时成立时取字典序最小的像集作为见证。

    Raises:
        InstanceTooLargeError: |G| 超过 ``completable_search_limit``
    """
    members = _coerce(family, order)
    size = len(order)
    limit = search_limit if search_limit is not None else get_settings().completable_search_limit
    if size > limit:
        raise InstanceTooLargeError(
            f"completability search is limited to {limit} generators, got {size}"
        )
    rows = [row for _, row in row_reduce(_kernel_rows(members), descending(size))]
    support = frozenset(g for row in rows for g in row)
    candidates = _candidate_images(size, len(rows), support)
    for image in candidates:
        found = _projector_onto(order, rows, image)
        if found is not None:
            logger.debug(
                "general_order.completable",
                image=[order.ambient.label(g) for g in image],
                tried=candidates.index(image) + 1,
            )
            return found
    logger.debug("general_order.not_completable", candidates=len(candidates))
    return None


def _require_meet(
    members: Sequence[GeneralReductionOperator], order: PartialOrder
) -> GeneralReductionOperator:
    lower = is_completable(members, order)
    if lower is None:
        raise NotCompletableError()
    return lower


def general_red_family(family: GeneralFamilyLike, order: PartialOrder) -> frozenset[int]:
    members = _coerce(family, order)
    fixed = frozenset(range(len(order)))
    for member in members:
        fixed &= member.red
    return fixed


def general_obstructions(family: GeneralFamilyLike, order: PartialOrder) -> frozenset[int]:
    """Obs(F) = Red(F) ∩ Nred(∧F)；∧F 不存在时拒绝计算。

    Raises:
        NotCompletableError: 族不可补全
    """
    members = _coerce(family, order)
    lower = _require_meet(members, order)
    fixed = general_red_family(members, order)
    if not lower.red <= fixed:
        raise ConsistencyError("Red of the meet is not contained in Red(F)")
    return fixed & lower.nred


@dataclass(frozen=True, eq=False)
class GeneralConfluenceReport:
    """广义合流定理三个断言的有限搜索结果。"""

    meet: GeneralReductionOperator
    obstructions: frozenset[int]
    confluent: bool
    normalising: bool
    church_rosser: bool
    relation_confluent: bool
    assumption: str = IMAGE_ASSUMPTION

    def to_payload(self) -> dict[str, object]:
        label = self.meet.ambient.label
        return {
            "confluent": self.confluent,
            "normalising": self.normalising,
            "church_rosser": self.church_rosser,
            "relation_confluent": self.relation_confluent,
            "obstructions": [label(g) for g in sorted(self.obstructions)],
            "assumption": self.assumption,
        }


def general_confluence(
    family: GeneralFamilyLike, order: PartialOrder
) -> GeneralConfluenceReport:
    """(F 合流 ∧ →_F 正规化) ⟺ Church-Rosser ⟺ →_F 合流，三者逐一计算并校验。

    Raises:
        NotCompletableError: 族不可补全，合流无定义
        ConsistencyError: 三个断言不等价
    """
    members = _coerce(family, order)
    found = general_obstructions(members, order)
    lower = _require_meet(members, order)
    ambient = order.ambient
    engine = AbstractRewritingSystem(members)
    generators = [ambient.generator(g) for g in range(len(ambient))]
    sums = [generators[a] + generators[b] for a, b in combinations(range(len(ambient)), 2)]
    normalising = all(engine.normal_forms(g) for g in generators)
    church_rosser = all(engine.reaches(g, lower.apply(g)) for g in generators)
    relation_confluent = engine.has_unique_normal_forms(generators + sums)
    confluent = not found
    if not ((confluent and normalising) == church_rosser == relation_confluent):
        logger.error(
            "general_order.confluence_disagreement",
            confluent=confluent,
            normalising=normalising,
            church_rosser=church_rosser,
            relation_confluent=relation_confluent,
        )
        raise ConsistencyError("generalized confluence assertions disagree")
    return GeneralConfluenceReport(
        meet=lower,
        obstructions=found,
        confluent=confluent,
        normalising=normalising,
        church_rosser=church_rosser,
        relation_confluent=relation_confluent,
    )


def general_is_complement(
    family: GeneralFamilyLike, candidate: LinearMap, order: PartialOrder
) -> bool:
    """ker C ⊆ ker(∧F) 且 Obs(F) ⊆ Nred(C)。

    Raises:
        NotCompletableError: 族不可补全
    """
    members = _coerce(family, order)
    lower = _require_meet(members, order)
    if not is_general_reduction_operator(candidate, order):
        return False
    ambient = order.ambient
    absorbed = all(
        lower.apply(ambient.generator(g) - image).is_zero
        for g, image in candidate.images.items()
    )
    return absorbed and general_obstructions(members, order) <= candidate.moved


def general_f_complement(
    family: GeneralFamilyLike, order: PartialOrder
) -> GeneralReductionOperator:
    """在 Obs(F) 上与 ∧F 一致、其余生成元不动的极小补。"""
    members = _coerce(family, order)
    lower = _require_meet(members, order)
    found = general_obstructions(members, order)
    complement = GeneralReductionOperator.from_images(
        order, {g: lower.image(g) for g in found}
    )
    if not general_is_complement(members, complement, order):
        raise ConsistencyError("constructed operator is not a complement")
    return complement


def is_lower_bound(candidate: LinearMap, family: GeneralFamilyLike) -> bool:
    """对每个成员 T 都有 ker T ⊆ ker U，即 U 是 F 的下界。"""
    for member in family:
        check_same_ambient(candidate.ambient, member.ambient)
        ambient = member.ambient
        for g, image in member.images.items():
            if not candidate.apply(ambient.generator(g) - image).is_zero:
                return False
    return True
