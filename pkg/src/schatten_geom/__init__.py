"""Semi-inner-product geometry of Schatten p-class operators.

Norms, the semi-inner product ``[Y, X]_p``, Birkhoff-James orthogonality,
norm parallelism, Cauchy-Schwarz bounds with refinement witnesses, a
family of angles, and brute-force oracles that check all of them.
"""

from .errors import (
    DegenerateOperand,
    DomainError,
    HypothesisViolation,
    NumericalFailure,
    SchattenGeomError,
    ShapeError,
)
from .geometry import (
    AngleSuiteReport,
    MeanKind,
    angle_suite,
    is_bj_orthogonal,
    is_parallel,
    mean_value,
    p_angle,
    quadratic_mean_lower_bound,
)
from .inequalities import (
    NoWitness,
    RefinementPair,
    WitnessResult,
    cs_inequality,
    delta_p,
    find_witness,
    refined_cs,
    refinement_pair,
    zero_product_equivalences,
)
from .linalg import PolarParts, hs_inner, polar_decompose, psd_power, singular_values, trace
from .schatten import SchattenContext, SipValue, alpha, beta, gateaux_derivative, schatten_norm, sip, sip_value

__version__ = "0.1.0"
