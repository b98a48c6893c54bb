"""Finite universal algebra workbench.

Matrix powers, congruence lattices, congruence equations, transformer
witnesses for algebraizability, and the consequence relations they induce.
"""
from .algebra import (
    FiniteAlgebra,
    FreeAlgebra,
    Signature,
    direct_power,
    distinct_term_functions,
    eval_term,
    free_algebra_2gen,
    generated_subalgebra,
    is_homomorphism,
    is_idempotent,
    iter_term_functions,
    term_function,
)
from .algebraize import (
    ConsequenceQuery,
    MaltsevScheme,
    TransformerRho,
    TransformerTau,
    Verdict,
    check_transformers,
    check_transformers_class,
    consequence_properties_check,
    derive_maltsev_scheme,
    entails,
    maltsev_scheme_check,
    search_transformers,
)
from .cong_equations import (
    CongEquation,
    FailureCertificate,
    check_equation,
    eval_cong_term,
    find_failure,
    lift_failure_check,
    parse_cong_equation,
)
from .congruence import (
    BinRel,
    ConLattice,
    DerivationChain,
    Partition,
    con,
    extract_chain,
    is_congruence,
    rel_combine,
    tensor,
    theta,
)
from .errors import AlgebraError, Inconclusive, LiftError, NotDerivable, SignatureError, SizeBoundError
from .matrix_power import (
    MatrixPowerAlgebra,
    TermTuple,
    is_generated_operation,
    m_t_table,
    matrix_power,
    verify_lambda_embedding,
)
from .terms import Apply, Polynomial, Var, app, parse_term, var

__version__ = "0.1.0"

__all__ = [
    "FiniteAlgebra",
    "FreeAlgebra",
    "Signature",
    "direct_power",
    "distinct_term_functions",
    "eval_term",
    "free_algebra_2gen",
    "generated_subalgebra",
    "is_homomorphism",
    "is_idempotent",
    "iter_term_functions",
    "term_function",
    "ConsequenceQuery",
    "MaltsevScheme",
    "TransformerRho",
    "TransformerTau",
    "Verdict",
    "check_transformers",
    "check_transformers_class",
    "consequence_properties_check",
    "derive_maltsev_scheme",
    "entails",
    "maltsev_scheme_check",
    "search_transformers",
    "CongEquation",
    "FailureCertificate",
    "check_equation",
    "eval_cong_term",
    "find_failure",
    "lift_failure_check",
    "parse_cong_equation",
    "BinRel",
    "ConLattice",
    "DerivationChain",
    "Partition",
    "con",
    "extract_chain",
    "is_congruence",
    "rel_combine",
    "tensor",
    "theta",
    "AlgebraError",
    "Inconclusive",
    "LiftError",
    "NotDerivable",
    "SignatureError",
    "SizeBoundError",
    "MatrixPowerAlgebra",
    "TermTuple",
    "is_generated_operation",
    "m_t_table",
    "matrix_power",
    "verify_lambda_embedding",
    "Apply",
    "Polynomial",
    "Var",
    "app",
    "parse_term",
    "var",
]
