"""归约算子格：序关系、交与并、约化集合、障碍与合流判定。"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

import structlog

from src.operators.core_linear import OrderedGenSet, Vector, check_same_ambient
from src.operators.echelon import intersect_rows
from src.operators.errors import ConsistencyError, ReductionError
from src.operators.reduced_basis import (
    ReducedBasis,
    ReductionOperator,
    kernel_basis,
    reduce_basis,
    theta,
)

logger = structlog.get_logger(__name__)


@dataclass(frozen=True, eq=False)
class OperatorFamily:
    """同一生成元集合上非空的有限归约算子族。"""

    ambient: OrderedGenSet
    members: tuple[ReductionOperator, ...]

    def __post_init__(self) -> None:
        members = tuple(self.members)
        if not members:
            raise ReductionError("operator family must be nonempty")
        for member in members:
            check_same_ambient(self.ambient, member.ambient)
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, *members: ReductionOperator) -> OperatorFamily:
        if not members:
            raise ReductionError("operator family must be nonempty")
        return cls(members[0].ambient, members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[ReductionOperator]:
        return iter(self.members)

    def __getitem__(self, index: int) -> ReductionOperator:
        return self.members[index]

    def with_member(self, operator: ReductionOperator) -> OperatorFamily:
        return OperatorFamily(self.ambient, self.members + (operator,))


FamilyLike = OperatorFamily | Iterable[ReductionOperator]


def as_family(family: FamilyLike) -> OperatorFamily:
    if isinstance(family, OperatorFamily):
        return family
    return OperatorFamily.of(*family)


def leq_by_composition(first: ReductionOperator, second: ReductionOperator) -> bool:
    """T1 ⪯ T2 的复合刻画：T1∘T2 = T1。"""
    check_same_ambient(first.ambient, second.ambient)
    return first.compose(second) == first


def leq(first: ReductionOperator, second: ReductionOperator) -> bool:
    """T1 ⪯ T2 当且仅当 ker(T2) ⊆ ker(T1)。

    核包含判定与复合判定同时计算，二者不一致时抛出 ConsistencyError。
    """
    check_same_ambient(first.ambient, second.ambient)
    smaller = kernel_basis(first)
    by_kernel = all(smaller.contains(e) for e in kernel_basis(second))
    by_composition = leq_by_composition(first, second)
    if by_kernel != by_composition:
        logger.error("lattice.leq_disagreement", by_kernel=by_kernel)
        raise ConsistencyError("kernel containment and composition disagree on ⪯")
    return by_kernel


def kernel_sum(family: FamilyLike) -> ReducedBasis:
    """所有成员核之和的约化基（一次消元完成）。"""
    resolved = as_family(family)
    vectors: list[Vector] = []
    for member in resolved:
        vectors.extend(kernel_basis(member).vectors())
    return reduce_basis(vectors, resolved.ambient)


def meet(family: FamilyLike) -> ReductionOperator:
    """∧F = θ(Σ ker T)。"""
    resolved = as_family(family)
    result = theta(kernel_sum(resolved))
    logger.debug("lattice.meet_computed", members=len(resolved), nred=len(result.nred))
    return result


def kernel_intersection(first: ReductionOperator, second: ReductionOperator) -> ReducedBasis:
    check_same_ambient(first.ambient, second.ambient)
    ambient = first.ambient
    rows = intersect_rows(
        [e.as_dict() for e in kernel_basis(first)],
        [e.as_dict() for e in kernel_basis(second)],
        len(ambient),
    )
    return reduce_basis((Vector._trusted(ambient, row) for row in rows), ambient)


def join(first: ReductionOperator, second: ReductionOperator) -> ReductionOperator:
    """T1 ∨ T2 = θ(ker T1 ∩ ker T2)。"""
    result = theta(kernel_intersection(first, second))
    logger.debug("lattice.join_computed", nred=len(result.nred))
    return result


def join_all(family: FamilyLike) -> ReductionOperator:
    """族的上确界，逐对折叠 join。"""
    members = list(as_family(family))
    result = members[0]
    for member in members[1:]:
        result = join(result, member)
    return result


def red_family(family: FamilyLike) -> frozenset[int]:
    """Red(F)：被族中每个成员都固定的生成元。"""
    resolved = as_family(family)
    reduced = frozenset(range(len(resolved.ambient)))
    for member in resolved:
        reduced &= member.red
    return reduced


def obstructions(family: FamilyLike) -> frozenset[int]:
    """Obs(F) = Red(F) \\ Red(∧F)。"""
    resolved = as_family(family)
    reduced = red_family(resolved)
    meet_red = meet(resolved).red
    if not meet_red <= reduced:
        raise ConsistencyError("Red(∧F) is not contained in Red(F)")
    return reduced - meet_red


def is_confluent(family: FamilyLike) -> bool:
    found = obstructions(family)
    logger.debug("lattice.confluence_checked", obstructions=len(found))
    return not found
