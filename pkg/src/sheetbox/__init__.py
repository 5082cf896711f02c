"""sheetbox: box integrals of sheet-composed phase kernels over real
vector pairs, with closed-form cross-checks, inequality verdicts, and
seeded counterexample hunts."""

from .backend import active_backend
from .core import (
    DOT,
    SYMPLECTIC2D,
    BoxDomain,
    Pairing,
    bilinear,
    box_from_pair,
    euclidean_norm,
    lp_point_norm,
    pairing_eval,
    signed_volume,
    unit_phase_e,
)
from .errors import (
    ConstraintUnsatisfiable,
    DegenerateScale,
    DimensionMismatch,
    DomainError,
    HypothesisViolated,
    NegativeBaseOddRoot,
    NonFiniteIntegrand,
    Overflow,
    PairingNotAntisymmetric,
    SheetboxError,
    UnsupportedSheetReduction,
    ValidationError,
)
from .falsify import (
    HuntOutcome,
    SearchConfig,
    ViolationRecord,
    hunt,
    hunt_with_stats,
    replay,
    sample_instance,
)
from .localprod import (
    LocalProductInstance,
    LocalProductValue,
    local_product_closed,
    local_product_closed_info,
    local_product_direct,
    local_product_direct_info,
    scale_denominator,
)
from .quadrature import (
    DEFAULT_CONFIG,
    IntegrationResult,
    Kernel,
    QuadratureConfig,
    integrate_box,
    lp_kernel,
    mc_integrate,
    reciprocal_lp_kernel,
    refine_integrate,
    sheet_phase_kernel,
    unit_kernel,
)
from .sheets import (
    ABSOLUTE,
    IDENTITY,
    LOG,
    RECIPROCAL,
    RECIPROCAL_LOG,
    Sheet,
    constant,
    phase_power_i,
    sheet_eval,
    sheet_phase_eval,
)
from .theorems import (
    APP2,
    APP3,
    HOLDS,
    INCONCLUSIVE,
    VIOLATED,
    ModulusCheck,
    SwapCheck,
    TheoremReport,
    modulus_bound_check,
    prop_swap_identity_check,
    theorem_report,
    thm_app2_report,
    thm_app3_report,
)

__version__ = "0.1.0"
