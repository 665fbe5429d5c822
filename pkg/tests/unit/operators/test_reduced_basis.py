"""约化基、θ 双射与归约矩阵单元测试。"""

from __future__ import annotations

from collections.abc import Callable
from fractions import Fraction

import pytest

from src.operators.core_linear import OrderedGenSet, Vector
from src.operators.errors import InvalidOperatorError, ReductionError, ReductionMatrixError
from src.operators.reduced_basis import (
    ReducedBasis,
    ReductionOperator,
    from_matrix,
    kernel_basis,
    matrix_violations,
    operator_from_kernel,
    reduce_basis,
    theta,
)

MEET_MATRIX = [
    [1, 1, 1, 1],
    [0, 0, 0, 0],
    [0, 0, 0, 0],
    [0, 0, 0, 0],
]


class TestReduceBasis:
    """测试 reduce_basis 函数。"""

    def test_pair_kernel_sum(self, vec: Callable[..., Vector]) -> None:
        """测试 {g2−g1, g4−g3, g4−g2} 的约化基为 {g2−g1, g3−g1, g4−g1}。"""
        basis = reduce_basis([vec(g2=1, g1=-1), vec(g4=1, g3=-1), vec(g4=1, g2=-1)])
        assert basis.vectors() == [
            vec(g2=1, g1=-1),
            vec(g3=1, g1=-1),
            vec(g4=1, g1=-1),
        ]
        assert basis.leading_generators == frozenset({1, 2, 3})

    def test_independent_of_input_order_and_scaling(self, vec: Callable[..., Vector]) -> None:
        first = reduce_basis([vec(g4=2, g2=-2), vec(g2=1, g1=-1), vec(g4=1, g3=-1)])
        second = reduce_basis([vec(g4=1, g3=-1), vec(g4=-1, g2=1), vec(g2=3, g1=-3)])
        assert first == second

    def test_dependent_and_zero_inputs_absorbed(
        self, ambient: OrderedGenSet, vec: Callable[..., Vector]
    ) -> None:
        basis = reduce_basis([vec(g3=1, g1=1), vec(g3=2, g1=2), ambient.zero()])
        assert basis.dimension == 1
        assert basis.vectors() == [vec(g3=1, g1=1)]

    def test_monic_entries(self, vec: Callable[..., Vector]) -> None:
        basis = reduce_basis([vec(g4=3, g1=1)])
        assert basis.vectors() == [vec(g4=1, g1="1/3")]

    def test_empty_needs_ambient(self, ambient: OrderedGenSet) -> None:
        assert reduce_basis([], ambient).dimension == 0
        with pytest.raises(ReductionError):
            reduce_basis([])

    def test_membership(self, vec: Callable[..., Vector]) -> None:
        basis = reduce_basis([vec(g2=1, g1=-1), vec(g4=1, g3=-1)])
        assert basis.contains(vec(g4=2, g3=-2, g2=1, g1=-1))
        assert not basis.contains(vec(g4=1, g2=-1))

    def test_rejects_unreduced_entries(
        self, ambient: OrderedGenSet, vec: Callable[..., Vector]
    ) -> None:
        with pytest.raises(ReductionError):
            ReducedBasis(ambient, {3: vec(g4=1, g2=-1), 1: vec(g2=1, g1=-1)})


class TestTheta:
    """测试 θ 与 kernel_basis 互为逆映射。"""

    def test_theta_of_pair_kernel_is_meet(
        self, vec: Callable[..., Vector], pair_meet: ReductionOperator
    ) -> None:
        basis = reduce_basis([vec(g2=1, g1=-1), vec(g4=1, g3=-1), vec(g4=1, g2=-1)])
        assert theta(basis) == pair_meet
        assert kernel_basis(pair_meet) == basis

    def test_operator_from_kernel(
        self, ambient: OrderedGenSet, vec: Callable[..., Vector], t1: ReductionOperator
    ) -> None:
        assert operator_from_kernel([vec(g4=1, g3=-1), vec(g2=1, g1=-1)], ambient) == t1

    def test_red_and_nred(self, t1: ReductionOperator) -> None:
        assert t1.nred == frozenset({1, 3})
        assert t1.red == frozenset({0, 2})

    def test_extremes(self, ambient: OrderedGenSet) -> None:
        assert kernel_basis(ReductionOperator.identity(ambient)).dimension == 0
        assert kernel_basis(ReductionOperator.zero(ambient)).dimension == len(ambient)

    def test_image_must_be_below(self, ambient: OrderedGenSet, vec: Callable[..., Vector]) -> None:
        with pytest.raises(InvalidOperatorError):
            ReductionOperator(ambient, {0: vec(g2=1)})

    def test_image_must_be_reduced(
        self, ambient: OrderedGenSet, vec: Callable[..., Vector]
    ) -> None:
        with pytest.raises(InvalidOperatorError):
            ReductionOperator(ambient, {1: vec(g1=1), 2: vec(g2=1)})


class TestReductionMatrix:
    """测试归约矩阵三条件的校验与报告。"""

    def test_meet_matrix_is_reduction_matrix(
        self, ambient: OrderedGenSet, pair_meet: ReductionOperator
    ) -> None:
        assert matrix_violations(MEET_MATRIX) == []
        assert from_matrix(MEET_MATRIX, ambient) == pair_meet
        assert pair_meet.to_matrix() == [[Fraction(x) for x in row] for row in MEET_MATRIX]

    def test_lower_triangle_entry(self) -> None:
        """测试对角线下方非零元同时违反条件 1 和条件 3。"""
        problems = matrix_violations([[1, 0], [1, 1]])
        assert [(p.condition, p.row, p.column) for p in problems] == [(1, 1, 0), (3, 1, 0)]

    def test_zero_diagonal_row(self) -> None:
        problems = matrix_violations([[0, 1], [0, 1]])
        assert [(p.condition, p.row, p.column) for p in problems] == [(2, 0, 1), (3, 0, 1)]

    def test_diagonal_values(self) -> None:
        problems = matrix_violations([[2]])
        assert [(p.condition, p.row, p.column) for p in problems] == [(1, 0, 0)]

    def test_from_matrix_raises_first_violation(self) -> None:
        ambient = OrderedGenSet(("a", "b"))
        with pytest.raises(ReductionMatrixError) as excinfo:
            from_matrix([[0, 1], [0, 1]], ambient)
        assert excinfo.value.condition == 2
        assert "row 1, column 2" in str(excinfo.value)

    def test_accepts_fraction_text(self) -> None:
        ambient = OrderedGenSet(("a", "b", "c"))
        operator = from_matrix([[1, "-1/2", 0], [0, 0, 0], [0, 0, 1]], ambient)
        assert operator.image(1) == ambient.vector([("-1/2", "a")])
