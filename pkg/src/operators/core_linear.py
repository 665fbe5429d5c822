"""精确有理数、有序生成元集合、稀疏向量与线性映射。

所有值构造后不可变；生成元用其在 ``OrderedGenSet`` 中的下标引用，
下标越大生成元越大，标签只在输入输出时使用。
"""

from __future__ import annotations

import re
from collections import defaultdict
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from src.operators.errors import (
    AmbientMismatchError,
    ReductionError,
    UnknownGeneratorError,
    ZeroVectorError,
)

Scalar = Fraction
ScalarLike = Union[Fraction, int, str]

_SCALAR_PATTERN = re.compile(r"[+-]?\d+(/\d+)?")
_LABEL_PATTERN = re.compile(r"[^\s+\-*/]+")


def parse_scalar(value: ScalarLike) -> Fraction:
    """解析 ``"p/q"``、``"p"`` 或整数为精确有理数。

    Raises:
        ValueError: 格式非法或分母为零
    """
    if isinstance(value, bool):
        raise ValueError(f"invalid scalar {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _SCALAR_PATTERN.fullmatch(text):
            raise ValueError(f"invalid scalar {value!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError as exc:
            raise ValueError(f"zero denominator in {value!r}") from exc
    raise ValueError(f"invalid scalar {value!r}")


def format_scalar(value: Fraction) -> str:
    """最简分数的规范文本形式，例如 ``"1"``、``"-1/2"``。"""
    return str(value)


@dataclass(frozen=True)
class OrderedGenSet:
    """有限的有序生成元集合，位置即顺序（下标 0 最小）。"""

    names: tuple[str, ...]
    _positions: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        names = tuple(self.names)
        positions: dict[str, int] = {}
        for index, name in enumerate(names):
            if not _LABEL_PATTERN.fullmatch(name):
                raise ReductionError(
                    f"invalid generator label {name!r}; "
                    "labels may not be empty or contain whitespace or + - * /"
                )
            if name in positions:
                raise ReductionError(f"duplicate generator label {name!r}")
            positions[name] = index
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_positions", positions)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def index(self, label: str) -> int:
        try:
            return self._positions[label]
        except KeyError:
            raise UnknownGeneratorError(f"unknown generator {label!r}") from None

    def label(self, index: int) -> str:
        self.check_index(index)
        return self.names[index]

    def check_index(self, index: int) -> None:
        if not 0 <= index < len(self.names):
            raise UnknownGeneratorError(f"generator index {index} out of range")

    def generator(self, index: int) -> Vector:
        self.check_index(index)
        return Vector(self, ((index, Fraction(1)),))

    def zero(self) -> Vector:
        return Vector(self, ())

    def vector(self, pairs: Iterable[tuple[ScalarLike, str]]) -> Vector:
        """由 ``(系数, 标签)`` 对构造向量，重复标签的系数相加。"""
        coefficients: dict[int, Fraction] = defaultdict(Fraction)
        for coefficient, label in pairs:
            coefficients[self.index(label)] += parse_scalar(coefficient)
        return Vector.from_mapping(self, coefficients)

    def same_as(self, other: OrderedGenSet) -> bool:
        return self is other or self.names == other.names


def check_same_ambient(first: OrderedGenSet, second: OrderedGenSet) -> None:
    if not first.same_as(second):
        raise AmbientMismatchError()


@dataclass(frozen=True, eq=False)
class Vector:
    """K^(G) 中的有限支撑向量，``terms`` 按生成元下标升序且不含零系数。

    直接构造时调用方负责这些约束，一般应使用 ``from_mapping``。
    """

    ambient: OrderedGenSet
    terms: tuple[tuple[int, Fraction], ...]

    @classmethod
    def from_mapping(
        cls, ambient: OrderedGenSet, coefficients: Mapping[int, ScalarLike]
    ) -> Vector:
        items = []
        for index, raw in coefficients.items():
            value = parse_scalar(raw)
            if value:
                ambient.check_index(index)
                items.append((index, value))
        items.sort()
        return cls(ambient, tuple(items))

    @classmethod
    def _trusted(cls, ambient: OrderedGenSet, coefficients: Mapping[int, Fraction]) -> Vector:
        return cls(ambient, tuple(sorted((g, c) for g, c in coefficients.items() if c)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self.terms == other.terms and self.ambient.same_as(other.ambient)

    def __hash__(self) -> int:
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def coefficient(self, index: int) -> Fraction:
        for generator, value in self.terms:
            if generator == index:
                return value
        return Fraction(0)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(g for g, _ in self.terms)

    def leading_generator(self) -> int:
        if not self.terms:
            raise ZeroVectorError()
        return self.terms[-1][0]

    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            raise ZeroVectorError("no leading coefficient of zero")
        return self.terms[-1][1]

    def __add__(self, other: Vector) -> Vector:
        check_same_ambient(self.ambient, other.ambient)
        coefficients = dict(self.terms)
        for generator, value in other.terms:
            coefficients[generator] = coefficients.get(generator, Fraction(0)) + value
        return Vector._trusted(self.ambient, coefficients)

    def __neg__(self) -> Vector:
        return Vector(self.ambient, tuple((g, -c) for g, c in self.terms))

    def __sub__(self, other: Vector) -> Vector:
        return self + (-other)

    def scale(self, factor: ScalarLike) -> Vector:
        value = parse_scalar(factor)
        if not value:
            return self.ambient.zero()
        return Vector(self.ambient, tuple((g, c * value) for g, c in self.terms))

    def to_pairs(self) -> list[list[str]]:
        """序列化为 ``[["p/q", 标签], ...]``，首项为领头生成元。"""
        return [[format_scalar(c), self.ambient.names[g]] for g, c in reversed(self.terms)]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for generator, value in reversed(self.terms):
            label = self.ambient.names[generator]
            sign = "-" if value < 0 else "+"
            magnitude = abs(value)
            body = label if magnitude == 1 else f"{magnitude}*{label}"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def leading_generator(v: Vector) -> int:
    """支撑中最大的生成元下标。"""
    return v.leading_generator()


def leading_coefficient(v: Vector) -> Fraction:
    return v.leading_coefficient()


def vec_add(v: Vector, w: Vector) -> Vector:
    return v + w


def vec_scale(v: Vector, factor: ScalarLike) -> Vector:
    return v.scale(factor)


def multiset_leq(v: Vector, w: Vector) -> bool:
    """支撑上的多重集序：v 独有的每个生成元都被 w 独有的某个更大生成元支配。

    系数不参与比较。
    """
    check_same_ambient(v.ambient, w.ambient)
    own = v.support
    other = w.support
    only_v = own - other
    if not only_v:
        return True
    only_w = other - own
    if not only_w:
        return False
    return max(only_v) < max(only_w)


def multiset_less(v: Vector, w: Vector) -> bool:
    """严格版本：支撑不同且 ``multiset_leq`` 成立。"""
    return v.support != w.support and multiset_leq(v, w)


@dataclass(frozen=True, eq=False)
class LinearMap:
    """K^(G) 的线性自同态，只存储被移动的生成元的像，其余生成元视为不动。"""

    ambient: OrderedGenSet
    images: Mapping[int, Vector]

    def __post_init__(self) -> None:
        normalized: dict[int, Vector] = {}
        for generator, image in self.images.items():
            self.ambient.check_index(generator)
            check_same_ambient(self.ambient, image.ambient)
            if image.terms != ((generator, Fraction(1)),):
                normalized[generator] = image
        object.__setattr__(self, "images", normalized)

    @classmethod
    def identity(cls, ambient: OrderedGenSet) -> LinearMap:
        return LinearMap(ambient, {})

    @classmethod
    def zero(cls, ambient: OrderedGenSet) -> LinearMap:
        return LinearMap(ambient, {g: ambient.zero() for g in range(len(ambient))})

    @classmethod
    def from_matrix(
        cls, matrix: Sequence[Sequence[ScalarLike]], ambient: OrderedGenSet
    ) -> LinearMap:
        """任意方阵（第 j 列为第 j 个生成元的像），不做归约矩阵条件检查。"""
        size = len(ambient)
        if len(matrix) != size or any(len(row) != size for row in matrix):
            raise ReductionError(f"matrix must be {size}×{size} to match the generator set")
        values = [[parse_scalar(x) for x in row] for row in matrix]
        images = {
            column: Vector.from_mapping(
                ambient, {row: values[row][column] for row in range(size)}
            )
            for column in range(size)
        }
        return LinearMap(ambient, images)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.ambient.same_as(other.ambient) and dict(self.images) == dict(other.images)

    __hash__ = None  # type: ignore[assignment]

    @property
    def moved(self) -> frozenset[int]:
        """像不等于自身的生成元。"""
        return frozenset(self.images)

    def image(self, generator: int) -> Vector:
        found = self.images.get(generator)
        if found is not None:
            return found
        return self.ambient.generator(generator)

    def apply(self, v: Vector) -> Vector:
        check_same_ambient(self.ambient, v.ambient)
        result: dict[int, Fraction] = defaultdict(Fraction)
        for generator, value in v.terms:
            image = self.images.get(generator)
            if image is None:
                result[generator] += value
                continue
            for target, coefficient in image.terms:
                result[target] += value * coefficient
        return Vector._trusted(self.ambient, result)

    def compose(self, other: LinearMap) -> LinearMap:
        """返回 ``self ∘ other``（先作用 other）。"""
        check_same_ambient(self.ambient, other.ambient)
        images = {g: self.apply(other.image(g)) for g in range(len(self.ambient))}
        return LinearMap(self.ambient, images)

    def __add__(self, other: LinearMap) -> LinearMap:
        check_same_ambient(self.ambient, other.ambient)
        images = {g: self.image(g) + other.image(g) for g in range(len(self.ambient))}
        return LinearMap(self.ambient, images)

    def __neg__(self) -> LinearMap:
        return LinearMap(self.ambient, {g: -self.image(g) for g in range(len(self.ambient))})

    def __sub__(self, other: LinearMap) -> LinearMap:
        return self + (-other)

    def scale(self, factor: ScalarLike) -> LinearMap:
        return LinearMap(
            self.ambient, {g: self.image(g).scale(factor) for g in range(len(self.ambient))}
        )

    def is_idempotent(self) -> bool:
        return all(self.apply(image) == image for image in self.images.values())

    def to_matrix(self) -> list[list[Fraction]]:
        """规范矩阵，第 j 列是第 j 个生成元的像的系数。"""
        size = len(self.ambient)
        matrix = [[Fraction(0)] * size for _ in range(size)]
        for column in range(size):
            for row, value in self.image(column).terms:
                matrix[row][column] = value
        return matrix
