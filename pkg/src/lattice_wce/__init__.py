"""Worst-case errors of unshifted rank-one lattice rules.

Covers the unanchored weighted Sobolev space: exact lattice primitives, the
squared worst-case error, its average over generating vectors (with exact
oracles for every identity used), and numerical checks of the T_N
conjecture that the averaged-error bound relies on.
"""

from ._backend import BACKEND
from .average import (
    AveragedErrorReport,
    ConjectureConstants,
    c_u_constant,
    corollary_bound,
    ebar2_total,
    ebar2_u,
    j_bound_lemma5,
    j_definition,
    j_kappa_reduce,
    j_series,
    j_series_truncated_raw,
    theorem1_constant,
    x_closed_form,
    x_definition_oracle,
)
from .conjecture import (
    ConjectureCheckResult,
    TnProfile,
    check_conjecture,
    scaled_series,
    t_n,
    t_profile,
)
from .core import (
    GeneratingVector,
    PrimeModulus,
    RationalPoint,
    bernoulli2,
    eta,
    lattice_points,
    make_prime_modulus,
    mod_inverse,
    mulmod,
    signed_residue,
)
from .wce import (
    WceReport,
    fractional_identity_check,
    kernel_value,
    wce_squared_pairwise,
    wce_squared_subset,
)
from .weights import WeightScheme, parse_weights

__version__ = "0.1.0"
