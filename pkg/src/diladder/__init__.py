"""Dilogarithm ladders: evaluation, exact certification, and rediscovery."""

from .algebra import (
    AlgebraicNumber,
    CertReport,
    NoPositiveRoot,
    RatPoly,
    Residue,
    even_family_poly,
    odd_family_poly,
    positive_root,
    verify_cyclotomic,
    verify_step_identities,
)
from .ladders import (
    CorpusEntry,
    InvalidExponents,
    Ladder,
    LadderTerm,
    NoInteriorRoot,
    abel_four_term,
    classify,
    corpus,
    corpus_entry,
    even_family_ladder,
    ladder_from_json,
    ladder_to_json,
    make_ladder,
    odd_family_ladder,
    residual,
    verify_conjecture,
    verify_khoi,
    verify_lima,
)
from .numerics import (
    GUARD_BITS,
    bits_for_digits,
    chi2,
    const_pi,
    const_zeta,
    const_zeta2,
    golden_ratio,
    li2_complex,
    li2_real,
    li_n,
    rogers_l,
)
from .relation import (
    Exclusion,
    PrecisionExhausted,
    RelationResult,
    discover,
    discover_all,
    discover_detailed,
    pslq,
    rationalize,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraicNumber",
    "CertReport",
    "CorpusEntry",
    "Exclusion",
    "GUARD_BITS",
    "InvalidExponents",
    "Ladder",
    "LadderTerm",
    "NoInteriorRoot",
    "NoPositiveRoot",
    "PrecisionExhausted",
    "RatPoly",
    "RelationResult",
    "Residue",
    "abel_four_term",
    "bits_for_digits",
    "chi2",
    "classify",
    "const_pi",
    "const_zeta",
    "const_zeta2",
    "corpus",
    "corpus_entry",
    "discover",
    "discover_all",
    "discover_detailed",
    "even_family_ladder",
    "even_family_poly",
    "golden_ratio",
    "ladder_from_json",
    "ladder_to_json",
    "li2_complex",
    "li2_real",
    "li_n",
    "make_ladder",
    "odd_family_ladder",
    "odd_family_poly",
    "positive_root",
    "pslq",
    "rationalize",
    "residual",
    "rogers_l",
    "verify_conjecture",
    "verify_cyclotomic",
    "verify_khoi",
    "verify_lima",
    "verify_step_identities",
]
