"""Bilateral assertibility and deniability over finite contexts.

The package splits into a formula layer (`formulas`, `syntax`), a
model layer (`contexts`, `semantics`, `transforms`) and a proof layer
(`proofs`, `corpus`), with a command line front end in `cli`.
"""
from .contexts import (
    Context,
    ContextFormatError,
    DeniabilityVariant,
    EmptyInputError,
    World,
    format_context,
    parse_context,
    world_from_index,
)
from .formulas import (
    Atom,
    ExtAnd,
    ExtImp,
    ExtNeg,
    ExtOr,
    FALSUM,
    Falsum,
    Formula,
    IntAnd,
    IntImp,
    IntNeg,
    IntOr,
    LayerError,
    PathError,
    atoms_of,
    diamond,
    e_translate,
    is_l_formula,
    is_safe,
    match_diamond,
    match_plus,
    plus_disj,
    size,
    subformula_at,
    substitute,
)
from .proofs import (
    Citation,
    ProofDoc,
    ProofLine,
    ProofParseError,
    Subproof,
    Verdict,
    Violation,
    check,
    parse_proof,
    verify_sound,
)
from .semantics import (
    AtomBoundExceeded,
    ContextTables,
    DEFAULT_ATOM_BOUND,
    PointEvaluator,
    UnknownAtomError,
    asserts,
    check_characteristic,
    check_characteristic_set,
    countermodel,
    denies,
    entails,
    equivalent,
    is_persistent,
    persistence_witness,
    strongly_equivalent,
    truth,
)
from .syntax import ParseError, format_formula, parse
from .transforms import mu_c, nnf, sigma_w, weak_negate, xi_x

__all__ = [
    "Atom",
    "AtomBoundExceeded",
    "Citation",
    "Context",
    "ContextFormatError",
    "ContextTables",
    "DEFAULT_ATOM_BOUND",
    "DeniabilityVariant",
    "EmptyInputError",
    "ExtAnd",
    "ExtImp",
    "ExtNeg",
    "ExtOr",
    "FALSUM",
    "Falsum",
    "Formula",
    "IntAnd",
    "IntImp",
    "IntNeg",
    "IntOr",
    "LayerError",
    "ParseError",
    "PathError",
    "PointEvaluator",
    "ProofDoc",
    "ProofLine",
    "ProofParseError",
    "Subproof",
    "UnknownAtomError",
    "Verdict",
    "Violation",
    "World",
    "asserts",
    "atoms_of",
    "check",
    "check_characteristic",
    "check_characteristic_set",
    "countermodel",
    "denies",
    "diamond",
    "e_translate",
    "entails",
    "equivalent",
    "format_context",
    "format_formula",
    "is_l_formula",
    "is_persistent",
    "is_safe",
    "match_diamond",
    "match_plus",
    "mu_c",
    "nnf",
    "parse",
    "parse_context",
    "parse_proof",
    "persistence_witness",
    "plus_disj",
    "sigma_w",
    "size",
    "strongly_equivalent",
    "subformula_at",
    "substitute",
    "truth",
    "verify_sound",
    "weak_negate",
    "world_from_index",
    "xi_x",
]

__version__ = "0.1.0"
