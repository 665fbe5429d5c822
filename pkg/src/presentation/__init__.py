"""有限字母表上的截断表示：deglex 词空间、T_{n,m} 扩张族与截断补全。"""

from src.presentation.presentation import (
    Presentation,
    Rule,
    complete_presentation,
    extension,
    extension_indices,
    is_confluent_presentation,
    make_presentation,
    presentation_obstructions,
    reduction_family,
    with_degree,
    word_normal_form,
)
from src.presentation.words import Word, WordSpace, deglex_compare, word_label

__all__ = [
    "Presentation",
    "Rule",
    "Word",
    "WordSpace",
    "complete_presentation",
    "deglex_compare",
    "extension",
    "extension_indices",
    "is_confluent_presentation",
    "make_presentation",
    "presentation_obstructions",
    "reduction_family",
    "with_degree",
    "word_label",
    "word_normal_form",
]
