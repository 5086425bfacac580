"""Unipotent characters from flag modules over finite fields: pattern
subgroups, monomial lidempotent actions, lambda-normal forms and a
verification suite for the decomposition of the flag module restricted to U.
"""

from .errors import FlagcharError, TooLarge, CheckFailed
from .field import CycInt, FieldSpec, fq_make, field_of_order
from .combinat import Composition, ConditionSet, RootSet, Tableau, enumerate_rstd, root_sets
from .pattern import Split, group_elements
from .monomial import orbit_enumerate, orbit_partition, inner_product
from .flags import lambda_normal_form, bullet

__version__ = "0.1.0"

__all__ = [
    "FlagcharError", "TooLarge", "CheckFailed",
    "CycInt", "FieldSpec", "fq_make", "field_of_order",
    "Composition", "ConditionSet", "RootSet", "Tableau", "enumerate_rstd", "root_sets",
    "Split", "group_elements",
    "orbit_enumerate", "orbit_partition", "inner_product",
    "lambda_normal_form", "bullet",
]
