"""Lorentz-cone Z-operators and their dual cone: oracles, generators, checks."""

from .dual_cone import (
    DualCertificate,
    dual_oracle_lorentz,
    dual_oracle_orthant,
    dyad_factor,
    dyad_from_pair,
    sample_dual_lorentz,
)
from .errors import ConeZError
from .linalg_core import DEFAULT_TOL, Spectrum, Tolerances, psd_check, sym_eigen, sym_skew_split, trace_inner
from .lorentz_cone import (
    CompPair,
    complementarity_check,
    lorentz_member,
    lorentz_project,
    reflection_matrix,
    sample_complementary_pair,
)
from .z_operators import (
    ZCertificate,
    sample_z_lorentz,
    z_assemble,
    z_decompose,
    z_definitional_test,
    z_oracle_lorentz,
    z_oracle_orthant,
)

__version__ = "0.1.0"
