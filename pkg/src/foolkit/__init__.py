"""First-order logic with a first-class boolean sort.

The package covers the whole round trip: parse a typed problem in a
boolean-friendly dialect, check sorts, lower it to ordinary many-sorted
first-order logic while preserving models, verify the preservation by
exhaustive finite-model enumeration, and refute the result with a small
saturation kernel that can trade the two-element boolean axiom for a
dedicated inference rule.
"""

from .terms import (
    App,
    BOOL,
    Eq,
    Exists,
    FALSE,
    Forall,
    Ite,
    Let,
    Signature,
    Sort,
    Term,
    TRUE,
    TypeContext,
    TypeSig,
    Var,
    alpha_equal,
    classify_occurrence,
    free_fns,
    free_vars,
    is_syntactically_first_order,
    land,
    liff,
    limplies,
    lnot,
    lor,
    rename_apart,
    term_to_str,
)
from .typecheck import SortError, check_formula, infer_sort, is_predicate_symbol
from .semantics import (
    DomainSpec,
    EnumerationOverflow,
    Interpretation,
    PreservationReport,
    check_model_preservation,
    enumerate_interpretations,
    eval_term,
    models,
)
from .translate import (
    FolProblem,
    TranslationState,
    run_translation,
    step1_bool_var,
    step2_formula_in_term_ctx,
    step3_ite,
    step4_let,
    to_fol,
    translate_formula,
)
from .tptp import (
    AnnotatedFormula,
    ParseError,
    Problem,
    parse_formula,
    parse_problem,
    print_dialect,
    print_fol_tff0,
)
from .prover import (
    Clause,
    Literal,
    OrderingConfig,
    ProverConfig,
    SaturationResult,
    clausify,
    mgu,
    saturate,
)

__version__ = "0.1.0"

__all__ = [
    "App",
    "AnnotatedFormula",
    "BOOL",
    "Clause",
    "DomainSpec",
    "EnumerationOverflow",
    "Eq",
    "Exists",
    "FALSE",
    "FolProblem",
    "Forall",
    "Interpretation",
    "Ite",
    "Let",
    "Literal",
    "OrderingConfig",
    "ParseError",
    "PreservationReport",
    "Problem",
    "ProverConfig",
    "SaturationResult",
    "Signature",
    "Sort",
    "SortError",
    "TRUE",
    "Term",
    "TranslationState",
    "TypeContext",
    "TypeSig",
    "Var",
    "alpha_equal",
    "check_formula",
    "check_model_preservation",
    "classify_occurrence",
    "clausify",
    "enumerate_interpretations",
    "eval_term",
    "free_fns",
    "free_vars",
    "infer_sort",
    "is_predicate_symbol",
    "is_syntactically_first_order",
    "land",
    "liff",
    "limplies",
    "lnot",
    "lor",
    "mgu",
    "models",
    "parse_formula",
    "parse_problem",
    "print_dialect",
    "print_fol_tff0",
    "rename_apart",
    "run_translation",
    "saturate",
    "step1_bool_var",
    "step2_formula_in_term_ctx",
    "step3_ite",
    "step4_let",
    "term_to_str",
    "to_fol",
    "translate_formula",
]
