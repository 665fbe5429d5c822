"""由归约算子给出的表示：截断扩张 T_{n,m}、合流（Gröbner）检查与截断补全。

所有结论只在长度 ≤ N 的截断内成立。
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import structlog

from src.infra.config.settings import get_settings
from src.operators.completion import f_complement
from src.operators.core_linear import ScalarLike, Vector
from src.operators.errors import (
    DegreeOverflowError,
    IterationCapError,
    MisorientedRuleError,
    ReductionError,
)
from src.operators.lattice import OperatorFamily, meet, obstructions
from src.operators.reduced_basis import ReductionOperator, kernel_basis, reduce_basis, theta
from src.operators.rewriting import RewriteStrategy, normal_form
from src.presentation.words import Word, WordSpace, word_label

logger = structlog.get_logger(__name__)

Selector = Literal["full", "pair"]


@dataclass(frozen=True)
class Rule:
    """改写规则 lhs → rhs，rhs 中每个词都严格小于 lhs。"""

    lhs: Word
    rhs: tuple[tuple[Fraction, Word], ...]

    def to_payload(self) -> dict[str, object]:
        return {
            "lhs": word_label(self.lhs),
            "rhs": [[str(c), word_label(w)] for c, w in self.rhs],
        }


@dataclass(frozen=True, eq=False)
class Presentation:
    """⟨X | S⟩：词空间上的归约算子 S，其核的约化基即半约化规则集。"""

    space: WordSpace
    operator: ReductionOperator

    @property
    def degree(self) -> int:
        return self.space.degree

    @property
    def rules(self) -> list[Rule]:
        result = []
        for vector in kernel_basis(self.operator):
            lead = vector.leading_generator()
            rest = [
                (-c, self.space.word(g)) for g, c in reversed(vector.terms) if g != lead
            ]
            result.append(Rule(self.space.word(lead), tuple(rest)))
        return result

    @property
    def min_rule_degree(self) -> int:
        return min((len(self.space.word(g)) for g in self.operator.nred), default=0)

    def leading_words(self) -> list[Word]:
        return [self.space.word(g) for g in sorted(self.operator.nred)]

    def leading_word_ideal_contains(self, word: Word) -> bool:
        """word 是否属于由规则左端生成的半群理想（含某个左端作为子词）。"""
        for lhs in self.leading_words():
            size = len(lhs)
            for start in range(len(word) - size + 1):
                if word[start : start + size] == lhs:
                    return True
        return False

    def normal_words(self) -> list[Word]:
        """被全族固定的词（合流时为截断商代数的单项式基）。"""
        family = reduction_family(self, "full")
        fixed = set(range(len(self.space)))
        for member in family:
            fixed -= member.nred
        return [self.space.word(g) for g in sorted(fixed)]

    def to_payload(self) -> dict[str, object]:
        return {
            "alphabet": list(self.space.alphabet),
            "order": "deglex",
            "degree": self.degree,
            "rules": [rule.to_payload() for rule in self.rules],
        }


RuleInput = tuple[Word | str, Iterable[tuple[ScalarLike, Word | str]]]


def _as_word(space: WordSpace, value: Word | str) -> Word:
    return space.parse_word(value) if isinstance(value, str) else tuple(value)


def make_presentation(
    alphabet: Sequence[str], rules: Iterable[RuleInput], degree: int
) -> Presentation:
    """S = θ(reduce_basis({l − r}))，限制在长度 ≤ N 的词上。

    Raises:
        MisorientedRuleError: 某条规则右端含有不小于左端的词
        DegreeOverflowError: N 小于某条规则的次数
    """
    space = WordSpace(tuple(alphabet), degree)
    kernel: list[Vector] = []
    for position, (raw_lhs, raw_rhs) in enumerate(rules):
        lhs = _as_word(space, raw_lhs)
        rhs = [(coefficient, _as_word(space, word)) for coefficient, word in raw_rhs]
        name = f"rule {position + 1} ({word_label(lhs)} → ...)"
        for _, word in rhs:
            if space.compare(word, lhs) >= 0:
                raise MisorientedRuleError(
                    f"{name}: right-hand word {word_label(word)!r} is not smaller than "
                    f"{word_label(lhs)!r} in deglex"
                )
        if len(lhs) > degree:
            raise DegreeOverflowError(
                f"{name}: degree {len(lhs)} exceeds the bound {degree}"
            )
        kernel.append(space.generator(lhs) - space.polynomial(rhs))
    operator = theta(reduce_basis(kernel, space.ambient))
    logger.debug("presentation.built", rules=len(operator.nred), degree=degree)
    return Presentation(space, operator)


def with_degree(presentation: Presentation, degree: int) -> Presentation:
    """同一规则集在另一截断次数下的表示。"""
    if degree == presentation.degree:
        return presentation
    rules = [(rule.lhs, list(rule.rhs)) for rule in presentation.rules]
    return make_presentation(presentation.space.alphabet, rules, degree)


def extension(presentation: Presentation, left: int, right: int) -> ReductionOperator:
    """T_{n,m}：长度 < n+m 的词不动，否则 w1·w2·w3 ↦ w1·S(w2)·w3（|w1|=n, |w3|=m）。"""
    if left < 0 or right < 0:
        raise ReductionError("extension offsets must be non-negative")
    space = presentation.space
    operator = presentation.operator
    images: dict[int, Vector] = {}
    for index, word in enumerate(space.words):
        if len(word) < left + right:
            continue
        middle = word[left : len(word) - right]
        middle_index = space.index(middle)
        if middle_index not in operator.nred:
            continue
        images[index] = space.concat(
            word[:left], operator.image(middle_index), word[len(word) - right :]
        )
    return ReductionOperator(space.ambient, images)


def extension_indices(presentation: Presentation, selector: Selector) -> list[tuple[int, int]]:
    if selector == "pair":
        return [(0, 1), (1, 0)]
    if selector != "full":
        raise ReductionError(f"unknown family selector {selector!r}")
    budget = presentation.degree - presentation.min_rule_degree
    return [(n, total - n) for total in range(budget + 1) for n in range(total + 1)]


def reduction_family(presentation: Presentation, selector: Selector = "full") -> OperatorFamily:
    """全族 {T_{n,m} : n+m+最小规则次数 ≤ N}，或只取 (T_{0,1}, T_{1,0})。"""
    members = [
        extension(presentation, n, m) for n, m in extension_indices(presentation, selector)
    ]
    return OperatorFamily(presentation.space.ambient, tuple(members))


def presentation_obstructions(
    presentation: Presentation, selector: Selector = "full"
) -> frozenset[Word]:
    found = obstructions(reduction_family(presentation, selector))
    return frozenset(presentation.space.word(g) for g in found)


def is_confluent_presentation(presentation: Presentation, selector: Selector = "full") -> bool:
    """截断到 N 的合流判定，等价于规则集在该截断内是 Gröbner 基。"""
    return not presentation_obstructions(presentation, selector)


def complete_presentation(presentation: Presentation, degree: int | None = None) -> Presentation:
    """反复取全族的 F-补 C 并令 S ← S ∧ C，直到长度 ≤ N 内无障碍。

    Raises:
        IterationCapError: 超过 factor × |词| 轮仍未到达不动点
    """
    current = with_degree(presentation, degree if degree is not None else presentation.degree)
    space = current.space
    cap = max(get_settings().presentation_iteration_factor, 1) * len(space)
    for round_number in range(cap + 1):
        family = reduction_family(current, "full")
        found = obstructions(family)
        if not found:
            logger.info(
                "presentation.completion_finished",
                rounds=round_number,
                rules=len(current.operator.nred),
            )
            return current
        complement = f_complement(family)
        updated = meet(OperatorFamily.of(current.operator, complement))
        logger.info(
            "presentation.completion_round",
            round=round_number + 1,
            obstructions=sorted(word_label(space.word(g)) for g in found),
        )
        current = Presentation(space, updated)
    raise IterationCapError(f"presentation completion did not converge within {cap} rounds")


def word_normal_form(
    presentation: Presentation, polynomial: Vector, strategy: RewriteStrategy | None = None
) -> Vector:
    """全族下的范式；合流时即截断理想下的规范代表元。"""
    if not polynomial.ambient.same_as(presentation.space.ambient):
        raise DegreeOverflowError("polynomial is not over this presentation's word space")
    return normal_form(reduction_family(presentation, "full"), polynomial, strategy)
