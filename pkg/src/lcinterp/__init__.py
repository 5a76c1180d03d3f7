"""Bivariate polynomial interpolation on Lissajous-Chebyshev node sets,
with the measurement tools (weighted norms, node-vs-continuum ratios,
operator-norm scans, variation and smoothness estimators, interpolatory
trigonometric means) needed to study its error behavior."""

__version__ = "0.1.0"

from .cheb import (
    ChebSeries1D,
    ChebSeries2D,
    cgl_points,
    cheb_T,
    cheb_That,
    eval_series_2d,
)
from .errors import (
    CapabilityError,
    ConsistencyError,
    CoprimalityError,
    DataError,
    DomainError,
    LcinterpError,
    QuadratureError,
)
from .interp import (
    Interpolant,
    evaluate,
    evaluate_grid,
    fundamental_polynomial,
    interpolate,
    residual_at_nodes,
)
from .measure import (
    MzReport,
    NormSpec,
    RateReport,
    discrete_lp_norm,
    fit_rate,
    interp_error_norms,
    lebesgue_constant,
    lp_weighted_norm_2d,
    mz_ratio,
)
from .nodes import (
    DegreePair,
    Node,
    NodeClass,
    NodeSet,
    SpectralIndexSet,
    make_degree_pair,
    node_set_from_curve,
    node_set_from_grid,
    spectral_set,
)
from .testbed import Regularity, SampledFunction, corpus
from .variation import (
    Axis,
    GridFunction2D,
    Partition1D,
    SmoothnessQuery,
    d_tilde,
    hardy_krause,
    modulus_estimate,
    total_variation_1d,
    weight_W,
)
from .vdv import (
    VdvOperator1D,
    VdvOperator2D,
    vdv_apply_1d,
    vdv_apply_2d,
    vdv_kernel,
    vdv_spectral_degree_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
