"""→_F 改写引擎：单步改写、范式、等价判定与 Church-Rosser / Newman 刻画。

``AbstractRewritingSystem`` 显式枚举 →_F 的可达向量，作为算子层判定的对照基准。
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Protocol

import structlog

from src.operators.core_linear import Vector, check_same_ambient, multiset_less
from src.operators.echelon import row_reduce
from src.operators.errors import ConsistencyError, IterationCapError, ReductionError
from src.operators.lattice import FamilyLike, OperatorFamily, as_family, is_confluent, meet
from src.operators.reduced_basis import kernel_basis

logger = structlog.get_logger(__name__)

DEFAULT_MAX_NODES = 200_000


@dataclass(frozen=True)
class RewriteStrategy:
    """选择改写算子的策略。

    ``priority`` 为空时按下标取第一个会改变向量的算子；否则先按列表顺序尝试，
    未列出的算子按下标排在其后。
    """

    priority: tuple[int, ...] = ()

    @classmethod
    def first(cls) -> RewriteStrategy:
        return cls()

    @classmethod
    def parse(cls, text: str) -> RewriteStrategy:
        """解析 ``first`` 或 ``priority:i,j,...``。"""
        spec = text.strip()
        if spec == "first":
            return cls()
        if spec.startswith("priority:"):
            raw = spec.removeprefix("priority:")
            try:
                indices = tuple(int(part) for part in raw.split(",") if part.strip())
            except ValueError as exc:
                raise ReductionError(f"invalid strategy {text!r}") from exc
            if not indices or len(set(indices)) != len(indices) or min(indices) < 0:
                raise ReductionError(f"invalid strategy {text!r}")
            return cls(indices)
        raise ReductionError(f"unknown strategy {text!r}")

    def order(self, size: int) -> list[int]:
        for index in self.priority:
            if index >= size:
                raise ReductionError(f"strategy names operator {index} but the family has {size}")
        listed = list(self.priority)
        return listed + [i for i in range(size) if i not in self.priority]

    def describe(self) -> str:
        if not self.priority:
            return "first"
        return "priority:" + ",".join(str(i) for i in self.priority)


@dataclass(frozen=True)
class RewriteTrace:
    """一次改写的完整轨迹：起点与每一步 ``(算子下标, 结果)``。"""

    start: Vector
    steps: tuple[tuple[int, Vector], ...] = ()

    @property
    def result(self) -> Vector:
        return self.steps[-1][1] if self.steps else self.start


class Reducer(Protocol):
    """→_F 只需要成员的 Nred 集合与作用。"""

    @property
    def nred(self) -> frozenset[int]: ...

    def apply(self, v: Vector) -> Vector: ...


def _moves(members: Sequence[Reducer], index: int, v: Vector) -> Vector | None:
    member = members[index]
    if not (v.support & member.nred):
        return None
    image = member.apply(v)
    return None if image == v else image


def is_normal_form(family: FamilyLike, v: Vector) -> bool:
    """v 的支撑落在 Red(F) 中，即不被任何成员改变。"""
    resolved = as_family(family)
    return all(not (v.support & member.nred) for member in resolved)


def rewrite_step(
    family: FamilyLike, v: Vector, strategy: RewriteStrategy | None = None
) -> tuple[int, Vector] | None:
    """按策略执行一步 →_F；v 已是范式时返回 None。"""
    resolved = as_family(family)
    check_same_ambient(resolved.ambient, v.ambient)
    chosen = strategy or RewriteStrategy.first()
    for index in chosen.order(len(resolved)):
        image = _moves(resolved.members, index, v)
        if image is not None:
            return index, image
    return None


def trace_normal_form(
    family: FamilyLike, v: Vector, strategy: RewriteStrategy | None = None
) -> RewriteTrace:
    """反复改写直到范式，返回完整轨迹。

    每一步在多重集序下严格下降，故必然终止；违反时抛出 ConsistencyError。
    """
    resolved = as_family(family)
    steps: list[tuple[int, Vector]] = []
    current = v
    while True:
        step = rewrite_step(resolved, current, strategy)
        if step is None:
            break
        index, image = step
        if not multiset_less(image, current):
            raise ConsistencyError("rewrite step did not decrease the multiset order")
        steps.append(step)
        current = image
    logger.debug("rewriting.normal_form_reached", steps=len(steps))
    return RewriteTrace(v, tuple(steps))


def normal_form(
    family: FamilyLike, v: Vector, strategy: RewriteStrategy | None = None
) -> Vector:
    return trace_normal_form(family, v, strategy).result


@dataclass
class AbstractRewritingSystem:
    """显式枚举 →_F 的穷举引擎。

    只使用"某成员改变 v 时 v → T(v)"这一定义，不依赖格运算。
    """

    members: Sequence[Reducer]
    max_nodes: int = DEFAULT_MAX_NODES
    _normal_forms: dict[Vector, frozenset[Vector]] = field(default_factory=dict, repr=False)

    def successors(self, v: Vector) -> list[tuple[int, Vector]]:
        found: list[tuple[int, Vector]] = []
        for index in range(len(self.members)):
            image = _moves(self.members, index, v)
            if image is not None:
                found.append((index, image))
        return found

    def is_normal_form(self, v: Vector) -> bool:
        return not self.successors(v)

    def reachable(self, start: Vector) -> set[Vector]:
        """广度优先枚举从 start 出发可达的全部向量（含自身）。"""
        seen = {start}
        queue = deque([start])
        while queue:
            current = queue.popleft()
            for _, image in self.successors(current):
                if image not in seen:
                    seen.add(image)
                    if len(seen) > self.max_nodes:
                        raise IterationCapError(
                            f"rewriting search exceeded {self.max_nodes} vectors"
                        )
                    queue.append(image)
        return seen

    def normal_forms(self, start: Vector) -> frozenset[Vector]:
        """start 的全部 F-范式，按后序在可达图上记忆化。"""
        memo = self._normal_forms
        if start in memo:
            return memo[start]
        stack: list[tuple[Vector, bool]] = [(start, False)]
        while stack:
            current, expanded = stack.pop()
            if current in memo:
                continue
            successors = [image for _, image in self.successors(current)]
            if not successors:
                memo[current] = frozenset({current})
                continue
            if expanded:
                collected: set[Vector] = set()
                for image in successors:
                    collected |= memo[image]
                memo[current] = frozenset(collected)
                continue
            stack.append((current, True))
            for image in successors:
                if image not in memo:
                    stack.append((image, False))
            if len(memo) > self.max_nodes:
                raise IterationCapError(f"rewriting search exceeded {self.max_nodes} vectors")
        return memo[start]

    def joinable(self, first: Vector, second: Vector) -> bool:
        return bool(self.normal_forms(first) & self.normal_forms(second))

    def locally_confluent_at(self, v: Vector) -> bool:
        images = [image for _, image in self.successors(v)]
        return all(self.joinable(a, b) for a, b in combinations(images, 2))

    def has_unique_normal_forms(self, starts: Iterable[Vector]) -> bool:
        return all(len(self.normal_forms(v)) == 1 for v in starts)

    def is_locally_confluent_on(self, starts: Iterable[Vector]) -> bool:
        return all(self.locally_confluent_at(v) for v in starts)

    def reaches(self, start: Vector, target: Vector) -> bool:
        return target in self.reachable(start)


def generators_of(family: OperatorFamily) -> list[Vector]:
    ambient = family.ambient
    return [ambient.generator(g) for g in range(len(ambient))]


def pair_sums(family: OperatorFamily) -> list[Vector]:
    ambient = family.ambient
    return [
        ambient.generator(a) + ambient.generator(b)
        for a, b in combinations(range(len(ambient)), 2)
    ]


def all_normal_forms(family: FamilyLike, v: Vector) -> frozenset[Vector]:
    """v 在 ⟨F⟩ 的任意复合下可达的全部 F-范式。"""
    resolved = as_family(family)
    check_same_ambient(resolved.ambient, v.ambient)
    return AbstractRewritingSystem(resolved.members).normal_forms(v)


def equivalent(family: FamilyLike, first: Vector, second: Vector) -> bool:
    """v1 ↔*_F v2 当且仅当 v1 − v2 ∈ ker(∧F)。"""
    resolved = as_family(family)
    check_same_ambient(first.ambient, second.ambient)
    return kernel_basis(meet(resolved)).contains(first - second)


def class_minimum(family: FamilyLike, v: Vector) -> Vector:
    """等价类 [v] 的最小元 (∧F)(v)。"""
    return meet(family).apply(v)


def is_locally_confluent(family: FamilyLike, include_pair_sums: bool = True) -> bool:
    """局部合流，按 Newman 引理等价于合流。

    判定由 ``is_confluent`` 给出；同时在生成元（以及生成元两两之和）上做穷举见证搜索，
    两者不一致时抛出 ConsistencyError。
    """
    resolved = as_family(family)
    verdict = is_confluent(resolved)
    engine = AbstractRewritingSystem(resolved.members)
    starts = generators_of(resolved)
    if include_pair_sums:
        starts += pair_sums(resolved)
    witness = engine.is_locally_confluent_on(starts)
    if witness != verdict:
        logger.error("rewriting.local_confluence_disagreement", verdict=verdict)
        raise ConsistencyError("local-confluence witness search disagrees with Obs(F)")
    return verdict


def has_church_rosser(family: FamilyLike) -> bool:
    """Church-Rosser：每个生成元都能改写到 (∧F)(g)；与 ``is_confluent`` 交叉校验。"""
    resolved = as_family(family)
    verdict = is_confluent(resolved)
    lower = meet(resolved)
    engine = AbstractRewritingSystem(resolved.members)
    witness = all(engine.reaches(g, lower.apply(g)) for g in generators_of(resolved))
    if witness != verdict:
        logger.error("rewriting.church_rosser_disagreement", verdict=verdict)
        raise ConsistencyError("Church-Rosser witness search disagrees with Obs(F)")
    return verdict


@dataclass(frozen=True)
class ZigzagLink:
    """之字形路径中的一段：``source`` 与 ``target`` 经算子 ``operator`` 相连。

    ``direction`` 为 ``forward``（source → target）、``backward``（source ← target）
    或 ``equal``（二者相同）。
    """

    operator: int
    direction: str
    source: Vector
    target: Vector


def _kernel_decomposition(
    family: OperatorFamily, target: Vector
) -> list[tuple[int, Vector, Fraction]] | None:
    """把 target 写成各成员核基向量的线性组合；不在核之和中时返回 None。"""
    ambient = family.ambient
    width = len(ambient)
    labelled: list[tuple[int, Vector]] = []
    for index, member in enumerate(family):
        labelled.extend((index, e) for e in kernel_basis(member))
    rows = []
    for position, (_, vector) in enumerate(labelled):
        row = vector.as_dict()
        row[width + position] = Fraction(1)
        rows.append(row)
    priority = list(range(width - 1, -1, -1)) + [width + i for i in range(len(labelled))]
    echelon = [(pivot, row) for pivot, row in row_reduce(rows, priority) if pivot < width]
    remainder = target.as_dict()
    combination: dict[int, Fraction] = {}
    for pivot, row in echelon:
        factor = remainder.get(pivot, Fraction(0))
        if not factor:
            continue
        for column, value in row.items():
            if column < width:
                remainder[column] = remainder.get(column, Fraction(0)) - factor * value
            else:
                key = column - width
                combination[key] = combination.get(key, Fraction(0)) + factor * value
    if any(remainder.values()):
        return None
    return [
        (labelled[key][0], labelled[key][1], value)
        for key, value in sorted(combination.items())
        if value
    ]


def zigzag_search(
    family: FamilyLike, first: Vector, second: Vector
) -> list[ZigzagLink] | None:
    """构造并验证一条连接 v1 与 v2 的 →_F 之字形路径。

    v1 − v2 在成员核之和中分解为 Σ c·k（k ∈ ker T）后，逐项走
    ``u → T(u) ← u − c·k``，每段都检查确为一步改写或相等。
    不存在分解时返回 None。
    """
    resolved = as_family(family)
    check_same_ambient(first.ambient, second.ambient)
    terms = _kernel_decomposition(resolved, first - second)
    if terms is None:
        return None
    links: list[ZigzagLink] = []
    current = first
    for index, kernel_vector, coefficient in terms:
        member = resolved.members[index]
        following = current - kernel_vector.scale(coefficient)
        middle = member.apply(current)
        if member.apply(following) != middle:
            raise ConsistencyError("zigzag link does not meet at a common image")
        links.append(_link(resolved, index, current, middle, "forward"))
        links.append(_link(resolved, index, middle, following, "backward"))
        current = following
    if current != second:
        raise ConsistencyError("zigzag path does not end at the requested vector")
    return links


def _link(
    family: OperatorFamily, index: int, source: Vector, target: Vector, direction: str
) -> ZigzagLink:
    if source == target:
        return ZigzagLink(index, "equal", source, target)
    upper = source if direction == "forward" else target
    lower = target if direction == "forward" else source
    if _moves(family.members, index, upper) != lower:
        raise ConsistencyError("zigzag link is not a rewriting step")
    return ZigzagLink(index, direction, source, target)


def trace_to_payload(trace: RewriteTrace, labels: Sequence[str] | None = None) -> dict[str, object]:
    """轨迹的 JSON 形式，算子用下标（或给定标签）表示。"""
    return {
        "start": trace.start.to_pairs(),
        "steps": [
            {
                "operator": labels[index] if labels else index,
                "result": image.to_pairs(),
            }
            for index, image in trace.steps
        ],
        "result": trace.result.to_pairs(),
    }
