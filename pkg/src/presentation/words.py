"""有限字母表上长度不超过 N 的词空间与 deglex 序。

词用字母元组表示，空词为 ``()``，在文本与文件中记作 ``"1"``。
"""

from __future__ import annotations

import re
from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import structlog

from src.infra.config.settings import get_settings
from src.operators.core_linear import OrderedGenSet, ScalarLike, Vector, parse_scalar
from src.operators.errors import (
    DegreeOverflowError,
    InstanceTooLargeError,
    ReductionError,
    UnknownGeneratorError,
)

logger = structlog.get_logger(__name__)

Word = tuple[str, ...]

EMPTY_WORD_LABEL = "1"
_RESERVED = set("0123456789+-*/ \t\n")
_COEFFICIENT = r"\d+(?:/\d+)?"
_TERM_WITH_COEFFICIENT = re.compile(rf"({_COEFFICIENT})\s*\*\s*(\S+)")
_BARE_COEFFICIENT = re.compile(_COEFFICIENT)


def word_label(word: Word) -> str:
    return "".join(word) if word else EMPTY_WORD_LABEL


def deglex_key(word: Word, alphabet: Sequence[str]) -> tuple[int, tuple[int, ...]]:
    positions = {letter: i for i, letter in enumerate(alphabet)}
    try:
        return len(word), tuple(positions[letter] for letter in word)
    except KeyError as exc:
        raise UnknownGeneratorError(f"letter {exc.args[0]!r} not in the alphabet") from None


def deglex_compare(first: Word, second: Word, alphabet: Sequence[str]) -> int:
    """deglex 比较：先比长度，等长时按字母表顺序逐字母比较。

    Returns:
        -1、0 或 1
    """
    a = deglex_key(first, alphabet)
    b = deglex_key(second, alphabet)
    return (a > b) - (a < b)


def total_words(alphabet_size: int, degree: int) -> int:
    return sum(alphabet_size**n for n in range(degree + 1))


@dataclass(frozen=True, eq=False)
class WordSpace:
    """长度 ≤ degree 的全部词，按 deglex 排成有序生成元集合。"""

    alphabet: tuple[str, ...]
    degree: int
    words: tuple[Word, ...] = field(init=False)
    ambient: OrderedGenSet = field(init=False)
    _index: dict[Word, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        alphabet = tuple(self.alphabet)
        if len(set(alphabet)) != len(alphabet):
            raise ReductionError("alphabet letters must be distinct")
        for letter in alphabet:
            if len(letter) != 1 or letter in _RESERVED:
                raise ReductionError(f"invalid letter {letter!r}; letters are single characters")
        if self.degree < 0:
            raise ReductionError("degree bound must be non-negative")
        size = total_words(len(alphabet), self.degree)
        limit = get_settings().max_generators
        if size > limit:
            raise InstanceTooLargeError(
                f"{size} words of length ≤ {self.degree} exceed the limit {limit}"
            )
        words: list[Word] = []
        for length in range(self.degree + 1):
            words.extend(product(alphabet, repeat=length))
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "words", tuple(words))
        object.__setattr__(self, "ambient", OrderedGenSet(tuple(word_label(w) for w in words)))
        object.__setattr__(self, "_index", {w: i for i, w in enumerate(words)})
        logger.debug("words.space_built", letters=len(alphabet), degree=self.degree, size=size)

    def __len__(self) -> int:
        return len(self.words)

    def same_as(self, other: WordSpace) -> bool:
        return self.alphabet == other.alphabet and self.degree == other.degree

    def index(self, word: Word) -> int:
        found = self._index.get(word)
        if found is not None:
            return found
        for letter in word:
            if letter not in self.alphabet:
                raise UnknownGeneratorError(f"letter {letter!r} not in the alphabet")
        raise DegreeOverflowError(
            f"word {word_label(word)!r} is longer than the degree bound {self.degree}"
        )

    def word(self, index: int) -> Word:
        return self.words[index]

    def parse_word(self, text: str) -> Word:
        stripped = text.strip()
        if stripped in ("", EMPTY_WORD_LABEL):
            return ()
        word = tuple(stripped)
        for letter in word:
            if letter not in self.alphabet:
                raise UnknownGeneratorError(f"letter {letter!r} not in the alphabet")
        return word

    def compare(self, first: Word, second: Word) -> int:
        return deglex_compare(first, second, self.alphabet)

    def generator(self, word: Word) -> Vector:
        return self.ambient.generator(self.index(word))

    def polynomial(self, terms: Iterable[tuple[ScalarLike, Word]]) -> Vector:
        coefficients: dict[int, Fraction] = defaultdict(Fraction)
        for coefficient, word in terms:
            coefficients[self.index(word)] += parse_scalar(coefficient)
        return Vector.from_mapping(self.ambient, coefficients)

    def from_pairs(self, pairs: Iterable[Sequence[ScalarLike]]) -> Vector:
        """``[["p/q", "词"], ...]`` 形式的多项式。"""
        terms: list[tuple[ScalarLike, Word]] = []
        for pair in pairs:
            coefficient, label = pair
            terms.append((coefficient, self.parse_word(str(label))))
        return self.polynomial(terms)

    def parse_polynomial(self, text: str) -> Vector:
        """解析 ``yxy - 2/3*xx + 1`` 形式的多项式文本。"""
        compact = text.strip()
        if not compact:
            raise ReductionError("empty polynomial")
        if compact[0] not in "+-":
            compact = "+" + compact
        pieces = re.split(r"([+-])", compact)
        terms: list[tuple[ScalarLike, Word]] = []
        sign = 1
        for piece in pieces:
            token = piece.strip()
            if not token:
                continue
            if token in "+-":
                sign = 1 if token == "+" else -1
                continue
            match = _TERM_WITH_COEFFICIENT.fullmatch(token)
            if match:
                coefficient = parse_scalar(match.group(1))
                word = self.parse_word(match.group(2))
            elif _BARE_COEFFICIENT.fullmatch(token) and token != EMPTY_WORD_LABEL:
                coefficient, word = parse_scalar(token), ()
            else:
                coefficient, word = Fraction(1), self.parse_word(token)
            terms.append((coefficient * sign, word))
        return self.polynomial(terms)

    def concat(self, left: Word, vector: Vector, right: Word) -> Vector:
        """u·f·v：在两侧拼接固定的词。"""
        terms = [(c, left + self.words[g] + right) for g, c in vector.terms]
        return self.polynomial(terms)

    def format_polynomial(self, vector: Vector) -> str:
        return str(vector)
