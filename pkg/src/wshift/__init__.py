"""Exact positivity tests for unilateral weighted shifts."""

__version__ = "0.1.0"

from .berger import (
    AtomicMeasure,
    BergmanMeasure,
    RecursionSpec,
    alpha34_closed_forms,
    berger_measure,
    is_subnormal_recursive,
    measure_from_atoms,
    phi_from_three,
    recursively_generated,
    shift_from_measure,
)
from .errors import WShiftError
from .extension import ExtensionReport, extension_weights, inverse_moment, is_subnormal, unique_backstep
from .hankel import det_2hypo, hankel, is_k_hyponormal, lemma64_interpolate
from .perturb import IntervalResult, gap_witness, modulus_h2, omega_interval, theorem32_check
from .quad import (
    beta,
    commutator_data,
    dn_coeffs,
    dn_via_det,
    is_positively_quad_hyponormal,
    is_quad_hyponormal,
    lemma41_equivalences,
    theorem22_bound_check,
    theta_and_kn,
)
from .shifts import (
    Constant,
    RationalInN,
    Recursive,
    WeightSequence,
    bergman_shift,
    flat_shift,
    gamma,
    is_hyponormal_up_to,
    perturb,
    weight_sq,
)
from .verdict import Verdict
