"""补、极小补、F-补与族的补全。"""

from __future__ import annotations

from dataclasses import dataclass

import structlog

from src.operators.errors import ConsistencyError
from src.operators.lattice import (
    FamilyLike,
    OperatorFamily,
    as_family,
    is_confluent,
    join,
    meet,
    obstructions,
    red_family,
)
from src.operators.reduced_basis import ReductionOperator, kernel_basis

logger = structlog.get_logger(__name__)


@dataclass(frozen=True, eq=False)
class CompletionReport:
    """补全结果：completed_family = F ∪ {C^F}，且交不变。

    ``meet_form_family`` 仅在请求时给出：把第一个成员 T 换成 T ∧ C^F 的等价族。
    """

    family: OperatorFamily
    meet: ReductionOperator
    obstructions: frozenset[int]
    complement: ReductionOperator
    completed_family: OperatorFamily
    meet_form_family: OperatorFamily | None = None


def residual(family: FamilyLike) -> ReductionOperator:
    """∨F̄ = θ(K^(Red(F)))：零化 Red(F) 的生成元，固定其余生成元。"""
    resolved = as_family(family)
    ambient = resolved.ambient
    return ReductionOperator(ambient, {g: ambient.zero() for g in red_family(resolved)})


def _closed_form_complement(
    lower: ReductionOperator, upper: ReductionOperator
) -> ReductionOperator:
    """对偶辫积闭式 id − (id−∧F)∘(id−∨F̄)，先作用 id−∨F̄。

    这个顺序下两个因子就已稳定。
    """
    ambient = lower.ambient
    images = {}
    for g in range(len(ambient)):
        generator = ambient.generator(g)
        first = generator - upper.apply(generator)
        second = first - lower.apply(first)
        images[g] = generator - second
    return ReductionOperator(ambient, images)


def f_complement(family: FamilyLike) -> ReductionOperator:
    """C^F = (∧F) ∨ (∨F̄)。

    分别用核交（格的并）与对偶辫积闭式计算，两者必须相同，
    且 Nred(C^F) 必须等于 Obs(F)。
    """
    resolved = as_family(family)
    lower = meet(resolved)
    upper = residual(resolved)
    by_join = join(lower, upper)
    by_closed_form = _closed_form_complement(lower, upper)
    if by_join != by_closed_form:
        logger.error("completion.complement_disagreement")
        raise ConsistencyError("F-complement: kernel intersection and closed form differ")
    if by_join.nred != obstructions(resolved):
        raise ConsistencyError("Nred of the F-complement differs from Obs(F)")
    logger.debug("completion.f_complement", nred=len(by_join.nred))
    return by_join


def is_complement(family: FamilyLike, candidate: ReductionOperator) -> bool:
    """(∧F) ∧ C = ∧F 且 Obs(F) ⊆ Nred(C)。"""
    resolved = as_family(family)
    lower = meet(resolved)
    lower_kernel = kernel_basis(lower)
    absorbed = all(lower_kernel.contains(e) for e in kernel_basis(candidate))
    return absorbed and obstructions(resolved) <= candidate.nred


def is_minimal_complement(family: FamilyLike, candidate: ReductionOperator) -> bool:
    """在补的基础上要求 Nred(C) = Obs(F)。"""
    resolved = as_family(family)
    return is_complement(resolved, candidate) and candidate.nred == obstructions(resolved)


def complete(family: FamilyLike, meet_form: bool = False) -> CompletionReport:
    """返回 F ∪ {C^F}；结果必须合流且交不变。"""
    resolved = as_family(family)
    lower = meet(resolved)
    found = obstructions(resolved)
    complement = f_complement(resolved)
    completed = resolved.with_member(complement)
    if not is_confluent(completed):
        raise ConsistencyError("completed family still has obstructions")
    if meet(completed) != lower:
        raise ConsistencyError("completion changed the meet")
    alternative = None
    if meet_form:
        head = meet(OperatorFamily.of(resolved.members[0], complement))
        alternative = OperatorFamily(resolved.ambient, (head,) + resolved.members[1:])
        if not is_confluent(alternative):
            raise ConsistencyError("meet-form family still has obstructions")
    logger.info(
        "completion.family_completed",
        members=len(resolved),
        obstructions=len(found),
    )
    return CompletionReport(
        family=resolved,
        meet=lower,
        obstructions=found,
        complement=complement,
        completed_family=completed,
        meet_form_family=alternative,
    )
