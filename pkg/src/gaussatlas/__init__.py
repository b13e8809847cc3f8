"""Single-mode Gaussian channel atlas.

Covariance-level and characteristic-function-level channel action,
canonical-form reduction with verified witnesses, closed-form
nonclassicality-breaking / entanglement-breaking / complete-positivity
predicates with independent numerical oracles, squeeze-orbit searches,
and phase-space (characteristic function / quasiprobability) numerics.

Hot kernels run through numba when available; set the environment
variable ``GAUSSATLAS_DISABLE_NUMBA=1`` to force the pure-numpy path.
"""

from ._kernels import NUMBA_ENABLED, backend
from .gaussian_core import (
    SIGMA1,
    SIGMA2,
    TOL_ALG,
    TOL_CLASS,
    TOL_PSD,
    apply_channel_one_side,
    classicality_defect,
    gaussian_is_classical,
    is_ppt_separable,
    is_valid_state,
    ppt_defect,
    rotation,
    squeeze,
    squeezed_vacuum,
    state_defect,
    symplectic_check,
    symplectic_form,
    tmsv_variance,
)
from .phase_space import (
    BOUNDARY_DECAY,
    P_EPS,
    TOL_FFT,
    CharGrid,
    GridSpec,
    QuasiGrid,
    auto_char_grid,
    char_fock1,
    char_gaussian,
    char_to_csv,
    char_vacuum,
    convert_order,
    fock1_output_p,
    fock1_output_p_grid_units,
    grid_is_classical,
    min_value,
    quasi_from_char,
    quasi_to_csv,
)
from .channels import (
    CanonicalForm,
    Channel,
    Kind,
    act_chargrid,
    act_variance,
    canonical_channel,
    canonical_reduce,
    compose_post_unitary,
    compose_pre_unitary,
    cp_defect,
    is_cp,
    kind_from_label,
    singular_x_rank,
)
from .breaking import (
    BoundaryCurve,
    BreakingReport,
    OrbitPoint,
    RegionRecord,
    boundary_curves,
    classify_region,
    cp_margin,
    eb_margin,
    eb_oracle_tmsv,
    find_r0,
    is_cp_form,
    is_eb,
    is_ncb,
    ncb_eb_tangency,
    ncb_margin,
    ncb_necessity_fock1,
    ncb_oracle_gaussian,
    region_sweep,
    report,
    squeeze_orbit,
)
from .verify import CheckResult, run_suite

__version__ = "0.1.0"

__all__ = [
    "NUMBA_ENABLED",
    "backend",
    "SIGMA1",
    "SIGMA2",
    "TOL_ALG",
    "TOL_CLASS",
    "TOL_PSD",
    "apply_channel_one_side",
    "classicality_defect",
    "gaussian_is_classical",
    "is_ppt_separable",
    "is_valid_state",
    "ppt_defect",
    "rotation",
    "squeeze",
    "squeezed_vacuum",
    "state_defect",
    "symplectic_check",
    "symplectic_form",
    "tmsv_variance",
    "BOUNDARY_DECAY",
    "P_EPS",
    "TOL_FFT",
    "CharGrid",
    "GridSpec",
    "QuasiGrid",
    "auto_char_grid",
    "char_fock1",
    "char_gaussian",
    "char_to_csv",
    "char_vacuum",
    "convert_order",
    "fock1_output_p",
    "fock1_output_p_grid_units",
    "grid_is_classical",
    "min_value",
    "quasi_from_char",
    "quasi_to_csv",
    "CanonicalForm",
    "Channel",
    "Kind",
    "act_chargrid",
    "act_variance",
    "canonical_channel",
    "canonical_reduce",
    "compose_post_unitary",
    "compose_pre_unitary",
    "cp_defect",
    "is_cp",
    "kind_from_label",
    "singular_x_rank",
    "BoundaryCurve",
    "BreakingReport",
    "OrbitPoint",
    "RegionRecord",
    "boundary_curves",
    "classify_region",
    "cp_margin",
    "eb_margin",
    "eb_oracle_tmsv",
    "find_r0",
    "is_cp_form",
    "is_eb",
    "is_ncb",
    "ncb_eb_tangency",
    "ncb_margin",
    "ncb_necessity_fock1",
    "ncb_oracle_gaussian",
    "region_sweep",
    "report",
    "squeeze_orbit",
    "CheckResult",
    "run_suite",
    "__version__",
]
