"""偏序集上的广义归约算子：<_F、可补全性与广义合流定理。"""

from src.general_order.completable import (
    IMAGE_ASSUMPTION,
    GeneralConfluenceReport,
    general_confluence,
    general_f_complement,
    general_is_complement,
    general_obstructions,
    general_red_family,
    is_completable,
    is_lower_bound,
)
from src.general_order.order import (
    GeneralReductionOperator,
    PartialOrder,
    is_general_reduction_operator,
    order_from_projectors,
)

__all__ = [
    "IMAGE_ASSUMPTION",
    "GeneralConfluenceReport",
    "GeneralReductionOperator",
    "PartialOrder",
    "general_confluence",
    "general_f_complement",
    "general_is_complement",
    "general_obstructions",
    "general_red_family",
    "is_completable",
    "is_general_reduction_operator",
    "is_lower_bound",
    "order_from_projectors",
]
