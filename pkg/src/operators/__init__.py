"""归约算子演算：精确线性代数、格结构、改写、辫积与补全。"""

from src.operators.completion import (
    CompletionReport,
    complete,
    f_complement,
    is_complement,
    is_minimal_complement,
    residual,
)
from src.operators.core_linear import (
    LinearMap,
    OrderedGenSet,
    Scalar,
    Vector,
    format_scalar,
    leading_coefficient,
    leading_generator,
    multiset_leq,
    parse_scalar,
    vec_add,
    vec_scale,
)
from src.operators.lattice import (
    OperatorFamily,
    is_confluent,
    join,
    leq,
    leq_by_composition,
    meet,
    obstructions,
    red_family,
)
from src.operators.pair_ops import BraidedPair, braided, join_via_duality, pair_confluent
from src.operators.reduced_basis import (
    ReducedBasis,
    ReductionOperator,
    apply,
    from_matrix,
    kernel_basis,
    reduce_basis,
    theta,
)
from src.operators.rewriting import (
    AbstractRewritingSystem,
    RewriteStrategy,
    RewriteTrace,
    all_normal_forms,
    class_minimum,
    equivalent,
    has_church_rosser,
    is_locally_confluent,
    normal_form,
    rewrite_step,
    trace_normal_form,
    zigzag_search,
)

__all__ = [
    "AbstractRewritingSystem",
    "BraidedPair",
    "CompletionReport",
    "LinearMap",
    "OperatorFamily",
    "OrderedGenSet",
    "ReducedBasis",
    "ReductionOperator",
    "RewriteStrategy",
    "RewriteTrace",
    "Scalar",
    "Vector",
    "all_normal_forms",
    "apply",
    "braided",
    "class_minimum",
    "complete",
    "equivalent",
    "f_complement",
    "format_scalar",
    "from_matrix",
    "has_church_rosser",
    "is_complement",
    "is_confluent",
    "is_locally_confluent",
    "is_minimal_complement",
    "join",
    "join_via_duality",
    "kernel_basis",
    "leading_coefficient",
    "leading_generator",
    "leq",
    "leq_by_composition",
    "meet",
    "multiset_leq",
    "normal_form",
    "obstructions",
    "pair_confluent",
    "parse_scalar",
    "red_family",
    "reduce_basis",
    "residual",
    "rewrite_step",
    "theta",
    "trace_normal_form",
    "vec_add",
    "vec_scale",
    "zigzag_search",
]
