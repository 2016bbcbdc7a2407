"""heytord: exact Heyting-valued set universes, incomparable ordinals and
machine-checked antichain constructions."""

from .antichain import (
    MetaFunction,
    TCStage,
    build_antichain,
    merge_families,
    minimal_gamma,
    perp_lift,
    pow_lift,
    subset_decode,
    subset_encode,
    tc_stage,
)
from .errors import (
    DepthExceededError,
    EngineError,
    ForeignElementError,
    LiteralParseError,
    MalformedPosetError,
    NotEnumerableError,
    StageIncompleteError,
    UnsupportedAddendError,
)
from .formulas import eval_formula, ordinal_formula
from .hset import Family, HSet, Universe, embed_check, enumerate_hsets, truth_eq, truth_mem
from .intervals import IntervalAlgebra, IntervalSet, iv_canon, iv_imp, iv_lattice
from .lemmas import LEMMAS, Report, generate_pool, run_lemma
from .order import (
    Poset,
    UpsetAlgebra,
    build_upset_algebra,
    enumerate_elements,
    ha_imp,
    parse_poset,
    validate_algebra,
    zoo,
)
from .ordinals import (
    OrdinalWitnessPair,
    hsucc,
    hunion,
    is_ord,
    ord_add,
    ord_em,
    pair_encode,
    perp,
    theta,
    trichotomy,
    trivial_pair,
    witness_pair,
)
from .parsing import apply_definitions, parse_formula, parse_hset
from .templates import Template, family_join, family_meet, template_reduce

__all__ = [
    "MetaFunction", "TCStage", "build_antichain", "merge_families", "minimal_gamma",
    "perp_lift", "pow_lift", "subset_decode", "subset_encode", "tc_stage",
    "DepthExceededError", "EngineError", "ForeignElementError", "LiteralParseError",
    "MalformedPosetError", "NotEnumerableError", "StageIncompleteError",
    "UnsupportedAddendError",
    "eval_formula", "ordinal_formula",
    "Family", "HSet", "Universe", "embed_check", "enumerate_hsets", "truth_eq", "truth_mem",
    "IntervalAlgebra", "IntervalSet", "iv_canon", "iv_imp", "iv_lattice",
    "LEMMAS", "Report", "generate_pool", "run_lemma",
    "Poset", "UpsetAlgebra", "build_upset_algebra", "enumerate_elements", "ha_imp",
    "parse_poset", "validate_algebra", "zoo",
    "OrdinalWitnessPair", "hsucc", "hunion", "is_ord", "ord_add", "ord_em",
    "pair_encode", "perp", "theta", "trichotomy", "trivial_pair", "witness_pair",
    "apply_definitions", "parse_formula", "parse_hset",
    "Template", "family_join", "family_meet", "template_reduce",
]
