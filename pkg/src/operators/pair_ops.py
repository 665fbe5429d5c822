"""算子对的辫积、对偶辫积与合流对的并。

约定：⟨T2,T1⟩^n 为 n 个因子的交替复合 ···T1∘T2∘T1，最先作用的是 T1；
⟨T1,T2⟩^n 最先作用的是 T2。
"""

from __future__ import annotations

from dataclasses import dataclass

import structlog

from src.infra.config.settings import get_settings
from src.operators.core_linear import LinearMap, Vector, check_same_ambient
from src.operators.errors import (
    ConsistencyError,
    InvalidOperatorError,
    IterationCapError,
    PairNotConfluentError,
)
from src.operators.lattice import OperatorFamily, is_confluent
from src.operators.reduced_basis import ReductionOperator

logger = structlog.get_logger(__name__)


@dataclass(frozen=True, eq=False)
class BraidedPair:
    """一对归约算子的辫积极限与逐生成元的稳定次数 n_g。"""

    left: ReductionOperator
    right: ReductionOperator
    counts: dict[int, int]
    left_product: LinearMap  # ⟨T2,T1⟩
    right_product: LinearMap  # ⟨T1,T2⟩

    @property
    def confluent(self) -> bool:
        return self.left_product == self.right_product


def _is_pair_normal(first: ReductionOperator, second: ReductionOperator, v: Vector) -> bool:
    return not (v.support & first.nred) and not (v.support & second.nred)


def _step_cap(size: int) -> int:
    factor = max(get_settings().braid_step_factor, 1)
    return factor * size * (size + 1)


def _alternate(
    first: ReductionOperator, second: ReductionOperator, v: Vector, factors: int
) -> Vector:
    """依次作用 first, second, first, ... 共 ``factors`` 次。"""
    current = v
    for k in range(factors):
        current = (first if k % 2 == 0 else second).apply(current)
    return current


def braided(first: ReductionOperator, second: ReductionOperator) -> BraidedPair:
    """逐生成元计算 ⟨T2,T1⟩ 与 ⟨T1,T2⟩，直到两条交替序列都到达 P-范式。

    Raises:
        IterationCapError: 超过 |G|·(|G|+1) 步仍未稳定
    """
    check_same_ambient(first.ambient, second.ambient)
    ambient = first.ambient
    cap = _step_cap(len(ambient))
    counts: dict[int, int] = {}
    left_images: dict[int, Vector] = {}
    right_images: dict[int, Vector] = {}
    for g in range(len(ambient)):
        starts_with_first = ambient.generator(g)
        starts_with_second = starts_with_first
        steps = 0
        while not (
            _is_pair_normal(first, second, starts_with_first)
            and _is_pair_normal(first, second, starts_with_second)
        ):
            if steps >= cap:
                raise IterationCapError(
                    f"braided product did not stabilize on {ambient.names[g]!r} "
                    f"within {cap} steps"
                )
            operator_a = first if steps % 2 == 0 else second
            operator_b = second if steps % 2 == 0 else first
            starts_with_first = operator_a.apply(starts_with_first)
            starts_with_second = operator_b.apply(starts_with_second)
            steps += 1
        counts[g] = steps
        left_images[g] = starts_with_first
        right_images[g] = starts_with_second
    result = BraidedPair(
        left=first,
        right=second,
        counts=counts,
        left_product=LinearMap(ambient, left_images),
        right_product=LinearMap(ambient, right_images),
    )
    logger.debug(
        "pair_ops.braided_computed",
        generators=len(ambient),
        max_count=max(counts.values(), default=0),
    )
    return result


def pair_confluent(first: ReductionOperator, second: ReductionOperator) -> bool:
    """合流当且仅当两个辫积相等；与格层面的 Obs 判定交叉校验。"""
    verdict = braided(first, second).confluent
    lattice_verdict = is_confluent(OperatorFamily.of(first, second))
    if verdict != lattice_verdict:
        logger.error("pair_ops.confluence_disagreement", braided=verdict)
        raise ConsistencyError("braided products disagree with the obstruction test")
    return verdict


def dual_braided_by_sum(pair: BraidedPair, g: int, factors: int) -> Vector:
    """由交替和恒等式计算 ⟨id−T2, id−T1⟩^n(g)。

    id + Σ_{i=1}^{n−1} (−1)^i (⟨T1,T2⟩^i + ⟨T2,T1⟩^i) + (−1)^n ⟨T2,T1⟩^n
    """
    first, second = pair.left, pair.right
    generator = first.ambient.generator(g)
    total = generator
    for i in range(1, factors):
        term = _alternate(second, first, generator, i) + _alternate(first, second, generator, i)
        total = total + term.scale(-1 if i % 2 else 1)
    last = _alternate(first, second, generator, factors)
    return total + last.scale(-1 if factors % 2 else 1)


def dual_braided_by_composition(pair: BraidedPair, g: int, factors: int) -> Vector:
    """直接复合 (id−T1)、(id−T2) 交替 n 次。"""
    current = pair.left.ambient.generator(g)
    for k in range(factors):
        operator = pair.left if k % 2 == 0 else pair.right
        current = current - operator.apply(current)
    return current


def dual_braided(pair: BraidedPair) -> LinearMap:
    """逐生成元稳定的 ⟨id−T2, id−T1⟩，因子数取 max(n_g, 1)。

    两条计算路径必须一致。
    """
    ambient = pair.left.ambient
    images: dict[int, Vector] = {}
    for g, count in pair.counts.items():
        factors = max(count, 1)
        by_sum = dual_braided_by_sum(pair, g, factors)
        if by_sum != dual_braided_by_composition(pair, g, factors):
            raise ConsistencyError("dual braided product: alternating sum and composition differ")
        images[g] = by_sum
    return LinearMap(ambient, images)


def join_via_duality(first: ReductionOperator, second: ReductionOperator) -> ReductionOperator:
    """合流对的并：T1 ∨ T2 = id − ⟨id−T2, id−T1⟩。

    Raises:
        PairNotConfluentError: 两个辫积不相等
    """
    pair = braided(first, second)
    if not pair.confluent:
        raise PairNotConfluentError()
    ambient = first.ambient
    dual = dual_braided(pair)
    images = {g: ambient.generator(g) - dual.image(g) for g in range(len(ambient))}
    try:
        result = ReductionOperator(ambient, images)
    except InvalidOperatorError as exc:
        raise ConsistencyError(f"id minus the dual braided product is not reducing: {exc}") from exc
    if result.nred != first.nred & second.nred:
        raise ConsistencyError("Nred of the join differs from Nred(T1) ∩ Nred(T2)")
    logger.debug("pair_ops.join_via_duality", nred=len(result.nred))
    return result


def braided_payload(pair: BraidedPair) -> dict[str, object]:
    """辫积的 JSON 形式（逐生成元）。"""
    names = pair.left.ambient.names
    return {
        "confluent": pair.confluent,
        "counts": {names[g]: n for g, n in sorted(pair.counts.items())},
        "left_product": {
            names[g]: pair.left_product.image(g).to_pairs() for g in range(len(names))
        },
        "right_product": {
            names[g]: pair.right_product.image(g).to_pairs() for g in range(len(names))
        },
    }
