from __future__ import annotations

from fractions import Fraction

from src.operators.echelon import descending, intersect_rows, row_reduce


def test_row_reduce_uses_priority_for_pivots() -> None:
    rows = [{0: Fraction(1), 1: Fraction(1)}, {1: Fraction(2)}]
    reduced = row_reduce(rows, descending(2))
    assert sorted(reduced, key=lambda item: item[0]) == [
        (0, {0: Fraction(1)}),
        (1, {1: Fraction(1)}),
    ]


def test_row_reduce_normalizes_pivot() -> None:
    reduced = row_reduce([{2: Fraction(4), 0: Fraction(2)}], descending(3))
    assert reduced == [(2, {2: Fraction(1), 0: Fraction(1, 2)})]


def test_row_reduce_empty() -> None:
    assert row_reduce([], descending(3)) == []
    assert row_reduce([{0: Fraction(0)}], descending(3)) == []


def test_intersect_rows_finds_common_line() -> None:
    first = [{0: Fraction(1), 1: Fraction(1)}]
    second = [{0: Fraction(1), 1: Fraction(1)}, {2: Fraction(1)}]
    assert intersect_rows(first, second, 3) == [{1: Fraction(1), 0: Fraction(1)}]


def test_intersect_rows_trivial() -> None:
    first = [{1: Fraction(1), 0: Fraction(-1)}, {3: Fraction(1), 2: Fraction(-1)}]
    second = [{3: Fraction(1), 1: Fraction(-1)}]
    assert intersect_rows(first, second, 4) == []
