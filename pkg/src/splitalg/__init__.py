"""Polynomial identities of nonassociative algebras: free algebra, exact
linear algebra, identity modules, operation splitting and concrete checks."""

from .exactla import GF101, QQ, RowSpace, get_field
from .freealg import (
    Expr, OpAlphabet, Polynomial, binop, count_assoc_types, enumerate_assoc_types,
    enumerate_monomials, polarize, var,
)
from .identmod import (
    ExpansionRule, IdentitySystem, expand, find_new_identities, is_consequence,
    lifting_generators, lifting_module, minimize_generators,
)
from .splitkit import disuccessor, disuccessor_system, modules_equal
from .varieties import get_rule, get_system, list_rules, list_systems
from .concrete import StructConstAlgebra, LinOp, derive, is_rota_baxter, satisfies, search_rb
from .repro import ReproResult, repro_all

__version__ = "0.1.0"
