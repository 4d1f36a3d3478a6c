"""Mod-2 triple Massey products and their splitting variety X(a,b,c): b x^2 = N(y)."""

from .arith import SquareClass, UnfactoredError, legendre, square_class
from .ffield import FqField, norm_image_direct, norm_image_via_residue_field, sweep, x_has_point
from .groupcoh import (
    CONTAINS_ZERO,
    NONVANISHING,
    UNDEFINED,
    MasseyResult,
    brute_force_massey,
    triple_massey,
    u4_lift_exists,
)
from .groups import FiniteGroup, zoo
from .masseyq import (
    MasseyVerdict,
    NormFormPoint,
    SquareClassTriple,
    certify_point,
    decide_massey_q,
    integral_search_demo,
    local_point_oracle,
    massey_defined_local,
    norm_form_eval,
)
from .places import Place, cup_vanishes_globally, hilbert_symbol, hilbert_symbol_oracle, symbol_table
from .poly import PolyRing, SparsePoly
from .torsor import (
    RepMatrix,
    build_induced_rep,
    verify_eigen_properties,
    verify_free_action,
    verify_norm_expansion,
    verify_norm_multiplicativity,
    verify_quotient_identity,
)

__version__ = "0.1.0"
