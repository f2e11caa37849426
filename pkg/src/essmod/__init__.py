"""essmod: essentiality deciders and witness constructions for right
ideals, Hilbert-module submodules, and continuous fields of Hilbert spaces.
"""

from .algebra import (
    AlgebraElement,
    AlgebraShape,
    RightIdeal,
    calculus,
    closed_subideal,
    ideal_from_projection,
    ideal_support_projection,
    is_essential_right_ideal,
    lower_approximants,
    shifted_positive_part,
    spectral_projection,
)
from .fields import (
    FieldModuleSpec,
    FieldPiece,
    SubspaceField,
    commutative_limit_identity,
    essential_witness,
    inductive_witness_section,
    is_essential_field,
    non_essential_witness,
    residual_set,
    total_defect_set,
)
from .modules import (
    CompactOperator,
    ModuleElement,
    Submodule,
    ideal_of_submodule,
    inner_product,
    is_essential_submodule,
    reformulation_probe,
    submodule_of_ideal,
    theta,
)
from .sections import PiecewiseSection, bump, pointwise_inner, unit_bump
from .subsets import Interval, SymbolicSubset, subset_normalize

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "AlgebraShape",
    "CompactOperator",
    "FieldModuleSpec",
    "FieldPiece",
    "Interval",
    "ModuleElement",
    "PiecewiseSection",
    "RightIdeal",
    "Submodule",
    "SubspaceField",
    "SymbolicSubset",
    "bump",
    "calculus",
    "closed_subideal",
    "commutative_limit_identity",
    "essential_witness",
    "ideal_from_projection",
    "ideal_of_submodule",
    "ideal_support_projection",
    "inductive_witness_section",
    "inner_product",
    "is_essential_field",
    "is_essential_right_ideal",
    "is_essential_submodule",
    "lower_approximants",
    "non_essential_witness",
    "pointwise_inner",
    "reformulation_probe",
    "residual_set",
    "shifted_positive_part",
    "spectral_projection",
    "subset_normalize",
    "submodule_of_ideal",
    "theta",
    "total_defect_set",
    "unit_bump",
]
