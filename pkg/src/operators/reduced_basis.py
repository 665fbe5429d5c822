"""子空间的约化基与 θ 双射（子空间 ↔ 归约算子）。"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

import structlog

from src.operators.core_linear import (
    LinearMap,
    OrderedGenSet,
    ScalarLike,
    Vector,
    check_same_ambient,
    parse_scalar,
)
from src.operators.echelon import descending, row_reduce
from src.operators.errors import (
    ConsistencyError,
    InvalidOperatorError,
    ReductionError,
    ReductionMatrixError,
)

logger = structlog.get_logger(__name__)


@dataclass(frozen=True, eq=False)
class ReducedBasis:
    """约化基 ``(e_g)``：按领头生成元索引，领头系数为 1，

    且每个 e_g 的支撑不含其他元素的领头生成元。
    """

    ambient: OrderedGenSet
    entries: Mapping[int, Vector]

    def __post_init__(self) -> None:
        leads = set(self.entries)
        for generator, vector in self.entries.items():
            check_same_ambient(self.ambient, vector.ambient)
            if vector.is_zero or vector.leading_generator() != generator:
                raise ReductionError(f"basis entry for generator {generator} is misindexed")
            if vector.leading_coefficient() != 1:
                raise ReductionError("reduced-basis entries must be monic")
            if (vector.support & leads) != {generator}:
                raise ReductionError("reduced-basis entries must avoid other leading generators")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReducedBasis):
            return NotImplemented
        return self.ambient.same_as(other.ambient) and dict(self.entries) == dict(other.entries)

    __hash__ = None  # type: ignore[assignment]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Vector]:
        return iter(self.vectors())

    @property
    def dimension(self) -> int:
        return len(self.entries)

    @property
    def leading_generators(self) -> frozenset[int]:
        return frozenset(self.entries)

    def vectors(self) -> list[Vector]:
        """按领头生成元升序排列的基向量。"""
        return [self.entries[g] for g in sorted(self.entries)]

    def residue(self, v: Vector) -> Vector:
        """一次性消去 v 在领头生成元上的系数，结果为零当且仅当 v 属于张成空间。"""
        check_same_ambient(self.ambient, v.ambient)
        remainder = v
        for generator, value in v.terms:
            entry = self.entries.get(generator)
            if entry is not None:
                remainder = remainder - entry.scale(value)
        return remainder

    def contains(self, v: Vector) -> bool:
        return self.residue(v).is_zero

    def to_pairs(self) -> list[list[list[str]]]:
        return [vector.to_pairs() for vector in self.vectors()]


def reduce_basis(
    vectors: Iterable[Vector], ambient: OrderedGenSet | None = None
) -> ReducedBasis:
    """计算张成空间唯一的约化基。

    零向量与线性相关的输入会被自然吸收，结果与输入顺序无关。
    列按生成元从大到小排序后求简化行阶梯形，每行的主元即其领头生成元。

    Args:
        vectors: 同一生成元集合上的向量
        ambient: 输入为空时必须提供

    Returns:
        ReducedBasis
    """
    items = list(vectors)
    if ambient is None:
        if not items:
            raise ReductionError("ambient generator set required for an empty input")
        ambient = items[0].ambient
    for vector in items:
        check_same_ambient(ambient, vector.ambient)
    rows = [vector.as_dict() for vector in items if not vector.is_zero]
    entries: dict[int, Vector] = {}
    for pivot, row in row_reduce(rows, descending(len(ambient))):
        entries[pivot] = Vector._trusted(ambient, row)
    return ReducedBasis(ambient, entries)


@dataclass(frozen=True, eq=False)
class ReductionOperator(LinearMap):
    """关于 (G,<) 的归约算子：幂等且每个生成元的像不大于自身。

    只存储 Nred(T) 上的像；像的支撑都严格小于该生成元且都在 Red(T) 中，
    这两条合起来保证幂等。
    """

    def __post_init__(self) -> None:
        super().__post_init__()
        moved = set(self.images)
        for generator, image in self.images.items():
            support = image.support
            if support and max(support) >= generator:
                raise InvalidOperatorError(
                    f"image of {self.ambient.names[generator]!r} is not below it"
                )
            if support & moved:
                raise InvalidOperatorError(
                    f"image of {self.ambient.names[generator]!r} involves a non-reduced generator"
                )

    @classmethod
    def identity(cls, ambient: OrderedGenSet) -> ReductionOperator:
        return cls(ambient, {})

    @classmethod
    def zero(cls, ambient: OrderedGenSet) -> ReductionOperator:
        return cls(ambient, {g: ambient.zero() for g in range(len(ambient))})

    @classmethod
    def from_images(
        cls, ambient: OrderedGenSet, images: Mapping[int, Vector]
    ) -> ReductionOperator:
        return cls(ambient, images)

    @property
    def nred(self) -> frozenset[int]:
        return frozenset(self.images)

    @property
    def red(self) -> frozenset[int]:
        return frozenset(range(len(self.ambient))) - self.nred

    def kernel_basis(self) -> ReducedBasis:
        return kernel_basis(self)


def theta(basis: ReducedBasis) -> ReductionOperator:
    """以 span(basis) 为核的唯一归约算子：T(g) = g − e_g（g 为领头生成元）。"""
    ambient = basis.ambient
    images = {g: ambient.generator(g) - e for g, e in basis.entries.items()}
    return ReductionOperator(ambient, images)


def kernel_basis(operator: ReductionOperator) -> ReducedBasis:
    """核的约化基 ``{g − T(g) : g ∈ Nred(T)}``。"""
    ambient = operator.ambient
    entries = {g: ambient.generator(g) - image for g, image in operator.images.items()}
    return ReducedBasis(ambient, entries)


def operator_from_kernel(vectors: Iterable[Vector], ambient: OrderedGenSet) -> ReductionOperator:
    return theta(reduce_basis(vectors, ambient))


def apply(operator: LinearMap, v: Vector) -> Vector:
    return operator.apply(v)


def matrix_violations(
    matrix: Sequence[Sequence[ScalarLike]],
) -> list[ReductionMatrixError]:
    """列出矩阵违反的所有归约矩阵条件（行列下标从 0 开始）。

    1. 上三角且对角元为 0 或 1；
    2. 对角元为 0 的行其余元素为 0；
    3. 对角元为 1 的列其余元素为 0。
    """
    size = len(matrix)
    values = [[parse_scalar(x) for x in row] for row in matrix]
    problems: list[ReductionMatrixError] = []
    for i, row in enumerate(values):
        if len(row) != size:
            raise ReductionError(f"matrix row {i + 1} has {len(row)} entries, expected {size}")
    for i in range(size):
        for j in range(i):
            if values[i][j]:
                problems.append(ReductionMatrixError(1, i, j, "entry below the diagonal"))
        if values[i][i] not in (0, 1):
            problems.append(ReductionMatrixError(1, i, i, "diagonal entry not 0 or 1"))
    for i in range(size):
        if values[i][i] == 0:
            for j in range(size):
                if j != i and values[i][j]:
                    problems.append(
                        ReductionMatrixError(2, i, j, "nonzero entry in a row with zero diagonal")
                    )
        elif values[i][i] == 1:
            for k in range(size):
                if k != i and values[k][i]:
                    problems.append(
                        ReductionMatrixError(
                            3, k, i, "nonzero entry in a column with unit diagonal"
                        )
                    )
    return problems


def from_matrix(
    matrix: Sequence[Sequence[ScalarLike]], ambient: OrderedGenSet
) -> ReductionOperator:
    """由规范矩阵构造归约算子（第 j 列为第 j 个生成元的像）。

    Raises:
        ReductionMatrixError: 第一个被违反的条件及其位置
    """
    if len(matrix) != len(ambient):
        raise ReductionError(
            f"matrix has {len(matrix)} rows but the generator set has {len(ambient)} elements"
        )
    problems = matrix_violations(matrix)
    if problems:
        raise problems[0]
    values = [[parse_scalar(x) for x in row] for row in matrix]
    size = len(values)
    images: dict[int, Vector] = {}
    for column in range(size):
        images[column] = Vector._trusted(
            ambient, {row: values[row][column] for row in range(size) if values[row][column]}
        )
    operator = ReductionOperator(ambient, images)
    if not operator.is_idempotent():
        raise ConsistencyError("validated reduction matrix is not idempotent")
    logger.debug("reduced_basis.matrix_accepted", size=size, nred=len(operator.nred))
    return operator


def to_matrix(operator: LinearMap) -> list[list[Fraction]]:
    return operator.to_matrix()
