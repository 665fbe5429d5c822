"""基于 sympy 稀疏矩阵（SDM, QQ 域）的精确行化简。

列顺序通过 ``priority`` 指定：排在前面的列优先成为主元列。
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from typing import Any

from sympy.polys.domains import QQ
from sympy.polys.matrices.sdm import SDM

Row = dict[int, Fraction]


def _to_domain(value: Fraction) -> Any:
    return QQ(value.numerator, value.denominator)


def _from_domain(value: Any) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def row_reduce(
    rows: Iterable[Mapping[int, Fraction]], priority: Sequence[int]
) -> list[tuple[int, Row]]:
    """计算行空间的简化行阶梯形。

    Args:
        rows: 稀疏行（列下标 → 系数）
        priority: 列的一个排列，越靠前越优先作为主元

    Returns:
        非零行列表 ``(主元列, 行)``，列下标为原始下标，主元系数为 1
    """
    position = {column: rank for rank, column in enumerate(priority)}
    dod: dict[int, dict[int, Any]] = {}
    for row in rows:
        entries = {position[col]: _to_domain(val) for col, val in row.items() if val}
        if entries:
            dod[len(dod)] = entries
    if not dod:
        return []
    reduced, _pivots = SDM(dod, (len(dod), len(priority)), QQ).rref()
    result: list[tuple[int, Row]] = []
    for entries in reduced.values():
        if not entries:
            continue
        pivot = priority[min(entries)]
        result.append((pivot, {priority[k]: _from_domain(v) for k, v in entries.items()}))
    return result


def descending(width: int) -> list[int]:
    """生成元从大到小的列顺序，使每行主元恰为其领头生成元。"""
    return list(range(width - 1, -1, -1))


def intersect_rows(
    first: Sequence[Mapping[int, Fraction]],
    second: Sequence[Mapping[int, Fraction]],
    width: int,
) -> list[Row]:
    """Zassenhaus 方法求两个行空间的交。

    在加倍坐标空间里堆叠 ``[u | u]`` 与 ``[w | 0]``，化简后主元落在后半块的行
    前半块为零，其后半块构成交空间的一组基。
    """
    stacked: list[Row] = []
    for row in first:
        doubled = dict(row)
        doubled.update({width + col: val for col, val in row.items()})
        stacked.append(doubled)
    stacked.extend(dict(row) for row in second)
    priority = descending(width) + [width + col for col in descending(width)]
    intersection: list[Row] = []
    for pivot, row in row_reduce(stacked, priority):
        if pivot >= width:
            intersection.append({col - width: val for col, val in row.items()})
    return intersection
