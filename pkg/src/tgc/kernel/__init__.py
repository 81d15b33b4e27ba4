"""The trusted kernel: many-sorted classical first-order logic with equality."""
from .derivation import (
    RULE_ARITY,
    RULES,
    Derivation,
    Motive,
    Sequent,
    Step,
    axiom_leaves,
    check_derivation,
    steps_of,
)
from .errors import (
    ArityMismatch,
    BadRuleApplication,
    DuplicateSymbol,
    EigenvariableViolation,
    EqSortMismatch,
    IllFormedFormula,
    KernelError,
    SortMismatch,
    UnknownAxiom,
    UnknownSort,
    UnknownSymbol,
    UnknownVariable,
    WellFormednessError,
)
from .printer import format_formula, format_term
from .syntax import (
    BOT,
    EMPTY_SIGNATURE,
    TOP,
    And,
    App,
    Bot,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Pred,
    Signature,
    Term,
    Top,
    Var,
    alpha_eq,
    alpha_member,
    compose_substitutions,
    free_var_names,
    free_vars,
    fresh_name,
    is_closed,
    substitute,
    substitute_term,
)
from .wellformed import implicit_context, wf_formula, wf_term

LOGIC_ID = "MSFOL"

__all__ = [name for name in dir() if not name.startswith("_")]
