"""偏序集上的广义归约算子与由投影族诱导的序 <_F。"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter

import structlog

from src.operators.core_linear import LinearMap, OrderedGenSet, Vector, check_same_ambient
from src.operators.errors import InvalidOperatorError, OrderCycleError

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class PartialOrder:
    """生成元上的严格偏序，``below[g]`` 是所有严格小于 g 的生成元（已传递闭包）。"""

    ambient: OrderedGenSet
    below: tuple[frozenset[int], ...]

    @classmethod
    def from_pairs(cls, ambient: OrderedGenSet, pairs: Iterable[tuple[int, int]]) -> PartialOrder:
        """由覆盖对 ``(较小, 较大)`` 构造并取传递闭包。

        Raises:
            OrderCycleError: 覆盖对中存在环（含自环）
        """
        direct: dict[int, set[int]] = {g: set() for g in range(len(ambient))}
        for lower, upper in pairs:
            ambient.check_index(lower)
            ambient.check_index(upper)
            if lower == upper:
                raise OrderCycleError(f"{ambient.label(lower)!r} cannot be below itself")
            direct[upper].add(lower)
        try:
            ordering = list(TopologicalSorter(direct).static_order())
        except CycleError as exc:
            cycle = " < ".join(ambient.label(g) for g in reversed(exc.args[1]))
            raise OrderCycleError(f"order relation has a cycle: {cycle}") from None
        closed: dict[int, frozenset[int]] = {}
        for g in ordering:
            collected: set[int] = set()
            for lower in direct[g]:
                collected.add(lower)
                collected |= closed[lower]
            closed[g] = frozenset(collected)
        return cls(ambient, tuple(closed[g] for g in range(len(ambient))))

    @classmethod
    def from_labels(
        cls, ambient: OrderedGenSet, pairs: Iterable[Sequence[str]]
    ) -> PartialOrder:
        return cls.from_pairs(ambient, [(ambient.index(a), ambient.index(b)) for a, b in pairs])

    @classmethod
    def total(cls, ambient: OrderedGenSet) -> PartialOrder:
        """生成元列表本身的全序 g1 < g2 < ...。"""
        return cls(ambient, tuple(frozenset(range(g)) for g in range(len(ambient))))

    def __len__(self) -> int:
        return len(self.ambient)

    def less(self, lower: int, upper: int) -> bool:
        return lower in self.below[upper]

    def comparable(self, first: int, second: int) -> bool:
        return first == second or self.less(first, second) or self.less(second, first)

    def is_total(self) -> bool:
        size = len(self)
        return sum(len(b) for b in self.below) == size * (size - 1) // 2

    def contained_in(self, other: PartialOrder) -> bool:
        check_same_ambient(self.ambient, other.ambient)
        return all(mine <= theirs for mine, theirs in zip(self.below, other.below, strict=True))

    def cover_pairs(self) -> list[tuple[int, int]]:
        """覆盖关系：a < b 且中间没有其它生成元。"""
        covers = []
        for upper, lowers in enumerate(self.below):
            for lower in sorted(lowers):
                if not any(lower in self.below[middle] for middle in lowers):
                    covers.append((lower, upper))
        return sorted(covers)

    def to_payload(self) -> dict[str, object]:
        labels = self.ambient.label
        return {"pairs": [[labels(a), labels(b)] for a, b in self.cover_pairs()]}


def _order_violation(
    operator: LinearMap, order: PartialOrder
) -> str | None:
    """第一处违反广义归约算子定义的描述；满足时返回 None。"""
    check_same_ambient(operator.ambient, order.ambient)
    for generator, image in sorted(operator.images.items()):
        outside = image.support - order.below[generator]
        if outside:
            label = operator.ambient.label
            return (
                f"image of {label(generator)!r} involves {label(min(outside))!r}, "
                f"which is not below it"
            )
    if not operator.is_idempotent():
        return "operator is not idempotent"
    return None


@dataclass(frozen=True, eq=False)
class GeneralReductionOperator(LinearMap):
    """关于偏序的归约算子：幂等，且被移动的生成元的像只含严格更小的生成元。"""

    order: PartialOrder | None = None

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.order is None:
            raise InvalidOperatorError("a general reduction operator needs an order")
        problem = _order_violation(self, self.order)
        if problem is not None:
            raise InvalidOperatorError(problem)

    @classmethod
    def from_images(
        cls, order: PartialOrder, images: Mapping[int, Vector]
    ) -> GeneralReductionOperator:
        return cls(order.ambient, images, order)

    @classmethod
    def from_map(cls, operator: LinearMap, order: PartialOrder) -> GeneralReductionOperator:
        return cls(operator.ambient, operator.images, order)

    @classmethod
    def identity_on(cls, order: PartialOrder) -> GeneralReductionOperator:
        return cls(order.ambient, {}, order)

    @property
    def nred(self) -> frozenset[int]:
        return frozenset(self.images)

    @property
    def red(self) -> frozenset[int]:
        return frozenset(range(len(self.ambient))) - self.nred

    def kernel_vectors(self) -> list[Vector]:
        ambient = self.ambient
        return [ambient.generator(g) - image for g, image in sorted(self.images.items())]


def is_general_reduction_operator(operator: LinearMap, order: PartialOrder) -> bool:
    return _order_violation(operator, order) is None


def order_from_projectors(projectors: Sequence[LinearMap]) -> PartialOrder | None:
    """<_F：T 移动 g 且 g' 出现在 T(g) 中时 g' <_F g，再取传递闭包。

    关系不反对称（有环）时返回 None；成功时每个成员都是该序下的广义归约算子。

    Raises:
        InvalidOperatorError: 某个成员不是幂等的
    """
    if not projectors:
        raise InvalidOperatorError("at least one projector is required")
    ambient = projectors[0].ambient
    pairs: list[tuple[int, int]] = []
    for position, projector in enumerate(projectors):
        check_same_ambient(ambient, projector.ambient)
        if not projector.is_idempotent():
            raise InvalidOperatorError(f"projector {position + 1} is not idempotent")
        for generator, image in projector.images.items():
            pairs.extend((lower, generator) for lower in image.support)
    try:
        order = PartialOrder.from_pairs(ambient, pairs)
    except OrderCycleError as exc:
        logger.info("general_order.projector_order_cycle", reason=str(exc))
        return None
    for projector in projectors:
        if not is_general_reduction_operator(projector, order):
            raise InvalidOperatorError("projector is not a reduction operator for <_F")
    return order
