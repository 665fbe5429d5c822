"""归约算子计算中使用的异常类型。

领域错误都继承 ``ReductionError``（同时是 ``ValueError``），
内部一致性错误与迭代上限错误继承 ``RuntimeError``。
"""

from __future__ import annotations


class ReductionError(ValueError):
    """输入或领域前提不满足。"""


class AmbientMismatchError(ReductionError):
    """两个对象不在同一个有序生成元集合上。"""

    def __init__(self, message: str = "ambient generator sets differ") -> None:
        super().__init__(message)


class ZeroVectorError(ReductionError):
    def __init__(self, message: str = "no leading generator of zero") -> None:
        super().__init__(message)


class UnknownGeneratorError(ReductionError):
    """标签或下标不属于当前生成元集合。"""


class ReductionMatrixError(ReductionError):
    """矩阵违反归约矩阵的某个条件。"""

    def __init__(self, condition: int, row: int, column: int, detail: str) -> None:
        self.condition = condition
        self.row = row
        self.column = column
        super().__init__(
            f"reduction-matrix condition {condition} violated at row {row + 1}, "
            f"column {column + 1}: {detail}"
        )


class InvalidOperatorError(ReductionError):
    """算子不是幂等的，或者不满足序递减条件。"""


class PairNotConfluentError(ReductionError):
    def __init__(self) -> None:
        super().__init__("pair not confluent; dual braided products disagree")


class MisorientedRuleError(ReductionError):
    """改写规则右端含有不小于左端的词。"""


class DegreeOverflowError(ReductionError):
    """多项式含有超过截断次数的单项式。"""


class NotCompletableError(ReductionError):
    def __init__(self) -> None:
        super().__init__("family not completable; confluence undefined")


class OrderCycleError(ReductionError):
    """偏序输入中存在环。"""


class InstanceTooLargeError(ReductionError):
    """实例规模超过配置上限。"""


class InputFormatError(ReductionError):
    """输入文件格式错误，``position`` 指出出错位置。"""

    def __init__(self, message: str, position: str) -> None:
        self.position = position
        super().__init__(f"{position}: {message}")


class IterationCapError(RuntimeError):
    """搜索或迭代超过上限。"""


class ConsistencyError(RuntimeError):
    """两条理论上必须一致的独立计算路径结果不同。"""
