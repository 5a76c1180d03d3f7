"""Weighted norms, discrete norms, node-vs-continuum ratio estimators,
Lebesgue constants, and log-log rate fitting.

All continuous norms over the square are computed in the trigonometric
variables x = cos(phi), y = cos(psi), where the Chebyshev weight cancels
the Jacobian exactly, so no singular-endpoint quadrature is ever
performed.  The rule is composite midpoint on uniform angle grids: it is
periodic-friendly, tolerates jumps, and never samples an axis endpoint.
Refinement doubles the grid until the change in the *norm* meets the
requested relative tolerance (with a machine-level absolute floor so that
interpolation residuals near rounding level do not spuriously fail).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .cheb import cgl_points, eval_series_grid, hat_basis
from .errors import DataError, DomainError, QuadratureError
from .interp import Interpolant, evaluate_grid
from .nodes import DegreePair, spectral_mask, weight_grid

# absolute convergence floor for norm refinement, in norm units
_NORM_ATOL = 1e-12

NODES_COLUMNS = ("i", "j", "x", "y", "class", "weight")
COEFF_COLUMNS = ("i", "j", "c")
MZ_COLUMNS = ("m", "n", "p", "ratio_min", "ratio_max", "trials", "seed")
LEBESGUE_COLUMNS = ("m", "n", "grid", "value", "ratio")
RATE_COLUMNS = ("experiment", "m", "n", "error", "slope")


@dataclass(frozen=True)
class NormSpec:
    """Parameters of a weighted L_p norm computation on the square."""

    p: float
    quadrature_points_per_axis: int = 2048
    refinement_tolerance: float = 1e-6
    max_refinements: int = 3

    def __post_init__(self):
        if not (np.isfinite(self.p) and self.p >= 1):
            raise DomainError(f"p must be finite and >= 1, got {self.p}")
        if self.quadrature_points_per_axis < 8:
            raise DomainError("quadrature grid too small")
        if not self.refinement_tolerance > 0:
            raise DomainError("refinement tolerance must be positive")


@dataclass(frozen=True)
class MzReport:
    degrees: DegreePair
    p: float
    ratio_min: float
    ratio_max: float
    trials: int
    seed: int


@dataclass(frozen=True)
class RateReport:
    experiment: str
    records: tuple
    fitted_slope: float
    fit_window: tuple


def midpoint_angles(points: int, period: float = np.pi) -> np.ndarray:
    """Composite-midpoint abscissas on [0, period)."""
    return (np.arange(points) + 0.5) * (period / points)


def _refine_norms(
    norms_at: Callable[[int], dict],
    points: int,
    tol: float,
    max_refinements: int,
) -> dict:
    """Double the grid until every requested norm stabilizes."""
    prev = norms_at(points)
    for _ in range(max_refinements):
        points *= 2
        cur = norms_at(points)
        if all(abs(cur[p] - prev[p]) <= tol * cur[p] + _NORM_ATOL for p in cur):
            return cur
        prev = cur
    raise QuadratureError(
        f"norm did not stabilize to rel. tol {tol} within {max_refinements} refinements"
    )


def trig_norm_2d(
    field: Callable[[np.ndarray, np.ndarray], np.ndarray],
    ps: Sequence[float],
    points: int = 2048,
    tol: float = 1e-6,
    max_refinements: int = 3,
    jacobian: tuple = (False, False),
) -> dict:
    """L_p norms (one per p) of a field given in trigonometric variables.

    ``field(phis, psis)`` must return the 2-d value array on the tensor
    midpoint grid.  ``jacobian`` switches a sin factor on per axis, for
    norms in which the Chebyshev weight does not cancel that axis.
    """

    def norms_at(n_pts: int) -> dict:
        phis = midpoint_angles(n_pts)
        vals = np.abs(np.asarray(field(phis, phis), dtype=float))
        cell = (np.pi / n_pts) ** 2
        jx = np.sin(phis)[:, None] if jacobian[0] else 1.0
        jy = np.sin(phis)[None, :] if jacobian[1] else 1.0
        return {p: float((np.sum(vals**p * jx * jy) * cell) ** (1.0 / p)) for p in ps}

    return _refine_norms(norms_at, points, tol, max_refinements)


def lp_weighted_norm_2d(f: Callable, spec: NormSpec) -> float:
    """Chebyshev-weighted L_p norm of ``f`` on the square.

    Under x = cos(phi), y = cos(psi) the weight cancels the Jacobian, so
    this is the plain L_p norm of f(cos phi, cos psi) on [0, pi]^2.
    """
    fn = getattr(f, "eval", f)

    def field(phis, psis):
        return fn(np.cos(phis)[:, None], np.cos(psis)[None, :])

    return trig_norm_2d(
        field,
        [spec.p],
        spec.quadrature_points_per_axis,
        spec.refinement_tolerance,
        spec.max_refinements,
    )[spec.p]


def interp_error_norms(
    f: Callable,
    ip: Interpolant,
    ps: Sequence[float],
    points: int = 2048,
    tol: float = 1e-3,
    max_refinements: int = 3,
) -> dict:
    """Weighted L_p norms of f minus its interpolant, sharing one field."""
    fn = getattr(f, "eval", f)

    def field(phis, psis):
        xs, ys = np.cos(phis), np.cos(psis)
        return fn(xs[:, None], ys[None, :]) - evaluate_grid(ip, xs, ys)

    return trig_norm_2d(field, ps, points, tol, max_refinements)


def torus_norm_1d(
    field: Callable[[np.ndarray], np.ndarray],
    ps: Sequence[float],
    points: int = 2**14,
    tol: float = 5e-2,
    max_refinements: int = 1,
) -> dict:
    """L_p norms of a 2*pi-periodic field, composite midpoint on [0, 2*pi).

    Midpoint on an integrand with jumps converges only ~ 1/N with an
    oscillating constant, so the default single halving at a coarse
    tolerance is a guard against gross failure, not an accuracy claim;
    smooth integrands stabilize far below it.
    """

    def norms_at(n_pts: int) -> dict:
        phis = midpoint_angles(n_pts, period=2 * np.pi)
        vals = np.abs(np.asarray(field(phis), dtype=float))
        cell = 2 * np.pi / n_pts
        return {p: float((np.sum(vals**p) * cell) ** (1.0 / p)) for p in ps}

    return _refine_norms(norms_at, points, tol, max_refinements)


def discrete_lp_norm(values, p: float) -> float:
    """Mean-normalized discrete norm ((1/N) * sum |a_k|^p)^(1/p)."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise DataError("discrete norm of an empty array")
    if not (np.isfinite(p) and p >= 1):
        raise DomainError(f"p must be finite and >= 1, got {p}")
    return float((np.mean(np.abs(values) ** p)) ** (1.0 / p))


def node_weighted_lp(coeff_matrix: np.ndarray, d: DegreePair, p: float) -> float:
    """Weight-summed node norm (sum lambda_kl |P(node)|^p)^(1/p) of a series."""
    vals = eval_series_grid(coeff_matrix, cgl_points(d.m), cgl_points(d.n))
    lam = weight_grid(d)
    return float(np.sum(lam * np.abs(vals) ** p) ** (1.0 / p))


def polynomial_mz_ratio(coeff_matrix: np.ndarray, d: DegreePair, p: float, spec: NormSpec) -> float:
    """Node-norm over continuum-norm ratio for one polynomial in the space."""

    def field(phis, psis):
        return eval_series_grid(coeff_matrix, np.cos(phis), np.cos(psis))

    continuum = trig_norm_2d(
        field,
        [p],
        spec.quadrature_points_per_axis,
        spec.refinement_tolerance,
        spec.max_refinements,
    )[p]
    return node_weighted_lp(coeff_matrix, d, p) / continuum


def mz_ratio(
    d: DegreePair,
    p: float,
    trials: int,
    seed: int,
    spec: NormSpec | None = None,
) -> MzReport:
    """Ratio band over a seeded ensemble of random unit polynomials.

    Coefficients are i.i.d. uniform on [-1, 1] over the spectral exponent
    set, normalized in coefficient l2.  The integrands are (powers of)
    polynomials, so a modest quadrature grid already converges; the
    default is 512 points per axis at tolerance 1e-5.
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    if spec is None:
        spec = NormSpec(p, quadrature_points_per_axis=512, refinement_tolerance=1e-5)
    rng = np.random.default_rng(seed)
    mask = spectral_mask(d)
    lo, hi = np.inf, 0.0
    for _ in range(trials):
        mat = np.zeros(mask.shape)
        mat[mask] = rng.uniform(-1.0, 1.0, int(mask.sum()))
        mat /= np.linalg.norm(mat)
        r = polynomial_mz_ratio(mat, d, p, spec)
        lo, hi = min(lo, r), max(hi, r)
    return MzReport(d, p, lo, hi, trials, seed)


def lebesgue_constant(d: DegreePair, grid_per_axis: int) -> float:
    """Max over an evaluation grid of the summed absolute cardinal functions.

    The evaluation grid is Chebyshev-distributed (Gauss-Lobatto with
    ``grid_per_axis`` points per axis), so doubling the underlying degree
    refines the grid nestedly and the estimate is monotone nondecreasing.
    """
    if grid_per_axis < 64:
        raise DomainError(f"evaluation grid must have >= 64 points per axis, got {grid_per_axis}")
    m, n = d.m, d.n
    pts = cgl_points(grid_per_axis - 1)
    u = hat_basis(m - 1, pts).T        # (P, m)
    v = hat_basis(n, pts).T            # (P, n+1)
    a = hat_basis(m - 1, cgl_points(m)).T   # (m+1, m)
    b = hat_basis(n, cgl_points(n)).T       # (n+1, n+1)
    scaled = np.where(spectral_mask(d), 1.0, 0.0)
    scaled[0, n] = 0.5
    lam = weight_grid(d)

    # cardinal values factor through W[i, q, l] = sum_j scaled_ij V_qj B_lj
    w = np.einsum("ij,qj,lj->iql", scaled, v, b, optimize=True)
    w_flat = w.reshape(m, -1)
    n_pts = len(pts)
    best = 0.0
    block = max(1, int(2e7 // ((m + 1) * n_pts * (n + 1))))
    for start in range(0, n_pts, block):
        ub = u[start : start + block]
        z = (ub[:, None, :] * a[None, :, :]).reshape(-1, m)
        card = (z @ w_flat).reshape(len(ub), m + 1, n_pts, n + 1)
        sums = np.einsum("pkql,kl->pq", np.abs(card), lam)
        best = max(best, float(sums.max()))
    return best


def fit_rate(
    records: Sequence[tuple],
    window: tuple | None = None,
    experiment: str = "",
) -> RateReport:
    """Least-squares slope of log(error) against log(max(m, n)).

    ``records`` is a sequence of (m, n, error) triples; ``window`` is a
    half-open index range into it, defaulting to the last five records.
    """
    records = tuple((int(m), int(n), float(e)) for m, n, e in records)
    if window is None:
        window = (max(0, len(records) - 5), len(records))
    lo, hi = int(window[0]), int(window[1])
    picked = records[lo:hi]
    if len(picked) < 3:
        raise DataError(f"need at least 3 records in the fit window, got {len(picked)}")
    errs = np.array([e for _, _, e in picked])
    if np.any(errs <= 0) or not np.all(np.isfinite(errs)):
        raise DataError("errors in the fit window must be positive and finite")
    sizes = np.array([max(m, n) for m, n, _ in picked], dtype=float)
    slope = float(np.polyfit(np.log(sizes), np.log(errs), 1)[0])
    return RateReport(experiment, records, slope, (lo, hi))
