"""Exact-arithmetic decision procedures for hyperplane sections of
Picard-number-two Knutsen K3 surfaces, plus range surveys.

The question: given the triple (n, d, g) -- a K3 surface of degree 2n in
P^(n+1) containing a smooth curve of degree d and genus g, with divisor
class group Z*H + Z*C -- is every hyperplane section irreducible and
reduced?  Three mutually cross-validating procedures answer it
(`closed_form_decide`, `brute_force_decide`, `lemma_branch`); `decide`
bundles them, and `survey.scan` / `survey.verify` run them over boxes of
triples to produce machine-readable atlases with witnesses.
"""

from .decision import (
    LemmaBranch,
    ResidueBranch,
    Verdict,
    Witness,
    bn_general,
    brute_force_decide,
    ceil_div,
    closed_form_decide,
    decide,
    delta,
    forced_a,
    genus_threshold,
    lemma_branch,
    splitting_witness,
    witness_search_bound,
)
from .errors import (
    ArithmeticOverflowError,
    InvalidInputError,
    K3SectionsError,
    NonHyperbolicLatticeError,
)
from .lattice import (
    C,
    H,
    MAX_INPUT,
    DivisorClass,
    LatticeHealth,
    SurfaceSpec,
    degree,
    euler_characteristic,
    gram_matrix,
    lattice_health,
    pair,
    self_intersection,
)
from .survey import (
    CSV_COLUMNS,
    HYPERBOLIC_ONLY,
    AllGenera,
    DiscrepancyReport,
    HyperbolicOnly,
    ScanRange,
    ScanRecord,
    emit,
    max_hyperbolic_genus,
    record_from_verdict,
    records_from_json,
    scan,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "ArithmeticOverflowError",
    "AllGenera",
    "C",
    "CSV_COLUMNS",
    "DiscrepancyReport",
    "DivisorClass",
    "H",
    "HYPERBOLIC_ONLY",
    "HyperbolicOnly",
    "InvalidInputError",
    "K3SectionsError",
    "LatticeHealth",
    "LemmaBranch",
    "MAX_INPUT",
    "NonHyperbolicLatticeError",
    "ResidueBranch",
    "ScanRange",
    "ScanRecord",
    "SurfaceSpec",
    "Verdict",
    "Witness",
    "bn_general",
    "brute_force_decide",
    "ceil_div",
    "closed_form_decide",
    "decide",
    "degree",
    "delta",
    "emit",
    "euler_characteristic",
    "forced_a",
    "genus_threshold",
    "gram_matrix",
    "lattice_health",
    "lemma_branch",
    "max_hyperbolic_genus",
    "pair",
    "record_from_verdict",
    "records_from_json",
    "scan",
    "self_intersection",
    "splitting_witness",
    "verify",
    "witness_search_bound",
]
