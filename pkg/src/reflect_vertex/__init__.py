"""Exact wavefunctions of the U_q(sl2) six-vertex model with a reflecting end."""

from .bethe import BetheParams, check_coordinate_relation, eval_f, momenta_from_spectral
from .detformula import domain_wall_det, domain_wall_det_homogeneous
from .lattice import (
    FockVector,
    ModelParams,
    OccupationConfig,
    apply_double_row_b,
    apply_row_operator,
    dual_wavefunction_oracle,
    k_element,
    l_element,
    wavefunction_oracle,
)
from .report import VerificationReport
from .scalarfield import SamplePoint, det_exact, interpolate_univariate, sample_point, to_scalar
from .symfunc import eval_F, eval_F_bar

__all__ = [
    "BetheParams",
    "FockVector",
    "ModelParams",
    "OccupationConfig",
    "SamplePoint",
    "VerificationReport",
    "apply_double_row_b",
    "apply_row_operator",
    "check_coordinate_relation",
    "det_exact",
    "domain_wall_det",
    "domain_wall_det_homogeneous",
    "dual_wavefunction_oracle",
    "eval_F",
    "eval_F_bar",
    "eval_f",
    "interpolate_univariate",
    "k_element",
    "l_element",
    "momenta_from_spectral",
    "sample_point",
    "to_scalar",
    "wavefunction_oracle",
]
