"""Permutation polynomials ``x + gamma Tr(h(x))`` over GF(2^2m) and their compositional inverses."""

from .families import (
    Branch,
    FamilyId,
    InverseForm,
    PermSpec,
    build_inverse,
    eval_forward,
    eval_inverse,
    gamma_class,
    inverse_of_3_mod,
    is_permutation_condition,
)
from .field_tower import Element, FieldParams, make_params
from .linearized import TraceLinearMap, make_map, t_apply, t_inverse_apply

__version__ = "0.1.0"
