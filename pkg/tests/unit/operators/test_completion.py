"""补、极小补、F-补与补全单元测试。"""

from __future__ import annotations

from collections.abc import Callable

from src.operators.completion import (
    complete,
    f_complement,
    is_complement,
    is_minimal_complement,
    residual,
)
from src.operators.lattice import OperatorFamily, is_confluent, meet
from src.operators.reduced_basis import ReductionOperator


class TestComplements:
    """P = (T1, T2) 的补：C1 与 C2 都是极小补，∧P 是补但不极小。"""

    def test_residual_kills_reduced_generators(
        self,
        pair_family: OperatorFamily,
        operator_factory: Callable[..., ReductionOperator],
    ) -> None:
        assert residual(pair_family) == operator_factory(g1=None, g3=None)

    def test_f_complement_is_c1(self, pair_family: OperatorFamily, c1: ReductionOperator) -> None:
        assert f_complement(pair_family) == c1

    def test_minimal_complements(
        self, pair_family: OperatorFamily, c1: ReductionOperator, c2: ReductionOperator
    ) -> None:
        assert is_minimal_complement(pair_family, c1)
        assert is_minimal_complement(pair_family, c2)

    def test_meet_is_complement_but_not_minimal(
        self, pair_family: OperatorFamily, pair_meet: ReductionOperator
    ) -> None:
        assert is_complement(pair_family, pair_meet)
        assert not is_minimal_complement(pair_family, pair_meet)

    def test_members_are_not_complements(
        self, pair_family: OperatorFamily, t1: ReductionOperator, t2: ReductionOperator
    ) -> None:
        assert not is_complement(pair_family, t1)
        assert not is_complement(pair_family, t2)

    def test_kernel_must_stay_inside_meet_kernel(
        self,
        pair_family: OperatorFamily,
        operator_factory: Callable[..., ReductionOperator],
    ) -> None:
        """g3 ↦ 0 移动了 g3，但 g3 不在 ker(∧P) 中。"""
        assert not is_complement(pair_family, operator_factory(g3=None))

    def test_confluent_family_complement_is_identity(
        self, t1: ReductionOperator, pair_meet: ReductionOperator
    ) -> None:
        family = OperatorFamily.of(t1, pair_meet)
        complement = f_complement(family)
        assert complement.nred == frozenset()


class TestComplete:
    def test_completion_of_pair(
        self,
        pair_family: OperatorFamily,
        pair_meet: ReductionOperator,
        c1: ReductionOperator,
    ) -> None:
        report = complete(pair_family)
        assert report.meet == pair_meet
        assert report.obstructions == frozenset({2})
        assert report.complement == c1
        assert len(report.completed_family) == 3
        assert is_confluent(report.completed_family)
        assert report.meet_form_family is None

    def test_meet_form_family(
        self,
        pair_family: OperatorFamily,
        t2: ReductionOperator,
        pair_meet: ReductionOperator,
    ) -> None:
        """把 T1 换成 T1 ∧ C^P 后的族同样合流且交不变。"""
        report = complete(pair_family, meet_form=True)
        alternative = report.meet_form_family
        assert alternative is not None
        assert len(alternative) == 2
        assert alternative[0] == pair_meet
        assert alternative[1] == t2
        assert meet(alternative) == pair_meet
