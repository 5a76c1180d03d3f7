"""Variation functionals and weighted modulus-of-smoothness estimators.

The variation quantities here are grid-restricted: they sum increments
over a partition the caller supplies, which bounds the true supremum
from below and matches it exactly whenever the partition contains every
breakpoint and local extremum of the function.  The test corpus registers
those points so the estimators are exact on it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb
from typing import Callable

import numpy as np

from .errors import CapabilityError, DataError, DomainError
from .measure import midpoint_angles

# central-difference steps in the angle variables (truncation ~ rounding):
# first-order differences balance at ~eps^(1/3), second-order at ~eps^(1/4)
_FD_STEP = 1e-5
_FD_STEP2 = 1e-4


class Axis(enum.Enum):
    X = "x"
    Y = "y"
    MIXED = "mixed"


@dataclass(frozen=True)
class Partition1D:
    points: np.ndarray
    interval: tuple = (-1.0, 1.0)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size < 2:
            raise DomainError("a partition needs at least 2 points")
        if not np.all(np.isfinite(pts)) or np.any(np.diff(pts) <= 0):
            raise DomainError("partition points must be finite and strictly increasing")
        lo, hi = self.interval
        if pts[0] < lo or pts[-1] > hi:
            raise DomainError(f"partition points must stay within [{lo}, {hi}]")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class GridFunction2D:
    xs: Partition1D
    ys: Partition1D
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        shape = (self.xs.points.size, self.ys.points.size)
        if vals.shape != shape:
            raise DomainError(f"values must have shape {shape}, got {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise DataError("grid values must be finite")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class SmoothnessQuery:
    nu: int
    alpha: float
    t: float
    p: float
    h_grid_size: int = 64
    x_grid_size: int = 2048

    def __post_init__(self):
        if self.nu < 1:
            raise DomainError("difference order must be >= 1")
        if not (0 < self.t <= 1):
            raise DomainError("step cap t must lie in (0, 1]")
        if not (np.isfinite(self.p) and self.p >= 1):
            raise DomainError(f"p must be finite and >= 1, got {self.p}")
        if self.h_grid_size < 1 or self.x_grid_size < 8:
            raise DomainError("grid sizes too small")


def total_variation_1d(samples) -> float:
    """Sum of absolute increments of the samples along their partition."""
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 1 or samples.size < 2:
        raise DomainError("variation needs at least 2 samples")
    return float(np.abs(np.diff(samples)).sum())


def hardy_krause(g: GridFunction2D) -> float:
    """Sum of absolute mixed second differences over the grid cells."""
    return float(np.abs(np.diff(np.diff(g.values, axis=0), axis=1)).sum())


def _trig_pullback(f: Callable) -> Callable:
    fn = getattr(f, "eval", f)

    def pulled(phi, psi):
        return fn(np.cos(phi), np.cos(psi))

    return pulled


def d_tilde(f, r: int, s: int):
    """Mixed derivative in the angle variables, pulled back to the square.

    Registered closed forms (``f.trig_derivatives``) are used when
    available; otherwise central differences with step 1e-5 cover
    r + s <= 2, and anything higher raises :class:`CapabilityError`.
    Returns a new function object on the square.
    """
    from .testbed import SampledFunction  # local import to avoid a cycle

    if r < 0 or s < 0:
        raise DomainError("derivative orders must be non-negative")
    if r == 0 and s == 0:
        return f

    registered = getattr(f, "trig_derivatives", {}) or {}
    if (r, s) in registered:
        closed = registered[(r, s)]

        def eval_closed(x, y):
            return closed(np.arccos(np.clip(x, -1, 1)), np.arccos(np.clip(y, -1, 1)))

        body = eval_closed
    elif r + s <= 2:
        pulled = _trig_pullback(f)
        h = _FD_STEP if r + s == 1 else _FD_STEP2

        def eval_numeric(x, y):
            phi = np.arccos(np.clip(x, -1, 1))
            psi = np.arccos(np.clip(y, -1, 1))
            if (r, s) in ((1, 0), (0, 1)):
                dphi, dpsi = (h, 0.0) if r == 1 else (0.0, h)
                return (pulled(phi + dphi, psi + dpsi) - pulled(phi - dphi, psi - dpsi)) / (2 * h)
            if (r, s) in ((2, 0), (0, 2)):
                dphi, dpsi = (h, 0.0) if r == 2 else (0.0, h)
                return (
                    pulled(phi + dphi, psi + dpsi)
                    - 2.0 * pulled(phi, psi)
                    + pulled(phi - dphi, psi - dpsi)
                ) / h**2
            return (
                pulled(phi + h, psi + h)
                - pulled(phi + h, psi - h)
                - pulled(phi - h, psi + h)
                + pulled(phi - h, psi - h)
            ) / (4 * h**2)

        body = eval_numeric
    else:
        raise CapabilityError(
            f"derivative order ({r}, {s}) needs a registered closed form "
            "(numeric differencing covers r + s <= 2)"
        )

    base_id = getattr(f, "id", getattr(f, "__name__", "f"))
    return SampledFunction(id=f"{base_id}:d({r},{s})", eval=body)


def weight_W(delta: float, x):
    """Step-dependent endpoint weight; clamped to 0 outside its domain."""
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    x = np.asarray(x, dtype=float)
    half_step = delta * np.sqrt(np.clip(1.0 - x**2, 0.0, None)) / 2.0
    f1 = 1.0 - x - half_step
    f2 = 1.0 + x - half_step
    out = np.where((f1 > 0) & (f2 > 0), np.sqrt(np.clip(f1 * f2, 0.0, None)), 0.0)
    return out if out.ndim else float(out)


def _difference_field(fn, nu, h, phis, psis, axis):
    """nu-th symmetric difference with step h*sin(angle) along one axis.

    The difference is set to 0 wherever the extreme arguments would leave
    the square.  Works on the tensor midpoint grid in the angle variables,
    where sqrt(1 - x^2) is exactly sin(phi).
    """
    signs = np.array([comb(nu, i) * (-1) ** (nu - i) for i in range(nu + 1)])
    offsets = np.arange(nu + 1) - nu / 2.0
    if axis is Axis.X:
        x = np.cos(phis)
        step = h * np.sin(phis)
        ok = (x + nu * step / 2.0 <= 1.0) & (x - nu * step / 2.0 >= -1.0)
        acc = np.zeros((phis.size, psis.size))
        y_row = np.cos(psis)[None, :]
        for sgn, off in zip(signs, offsets):
            acc += sgn * fn(np.clip(x + off * step, -1, 1)[:, None], y_row)
        return np.where(ok[:, None], acc, 0.0), ok
    # Axis.Y mirrors Axis.X with the roles swapped
    y = np.cos(psis)
    step = h * np.sin(psis)
    ok = (y + nu * step / 2.0 <= 1.0) & (y - nu * step / 2.0 >= -1.0)
    acc = np.zeros((phis.size, psis.size))
    x_col = np.cos(phis)[:, None]
    for sgn, off in zip(signs, offsets):
        acc += sgn * fn(x_col, np.clip(y + off * step, -1, 1)[None, :])
    return np.where(ok[None, :], acc, 0.0), ok


def modulus_estimate(f, q: SmoothnessQuery, axis: Axis) -> float:
    """Discretized weighted modulus of smoothness along one or both axes.

    Maximizes over a log-spaced step grid in (0, t] the L_p norm (in the
    angle variables, with the appropriate axis Jacobians) of the weighted
    symmetric difference.  A lower bound for the true supremum.
    """
    fn = getattr(f, "eval", f)
    # log-spaced steps in (0, t], largest first so h = t is always included
    h_values = np.geomspace(q.t, q.t * 1e-3, q.h_grid_size)
    phis = midpoint_angles(q.x_grid_size)
    cell = (np.pi / q.x_grid_size) ** 2
    sin_phi = np.sin(phis)
    best = 0.0
    for h in h_values:
        if axis is Axis.MIXED:
            # difference in y of the x-difference, weights and sin Jacobians on both axes
            def diffed(xv, yv):
                sub_phis = np.arccos(np.clip(xv[:, 0], -1, 1))
                field_x, _ = _difference_field(
                    fn, q.nu, h, sub_phis, np.arccos(np.clip(yv[0], -1, 1)), Axis.X
                )
                return field_x

            field, _ = _difference_field(diffed, q.nu, h, phis, phis, Axis.Y)
            wx = weight_W(q.nu * h, np.cos(phis)) ** q.alpha
            field = field * wx[:, None] * wx[None, :]
            integrand = np.abs(field) ** q.p * sin_phi[:, None] * sin_phi[None, :]
        else:
            field, _ = _difference_field(fn, q.nu, h, phis, phis, axis)
            w = weight_W(q.nu * h, np.cos(phis)) ** q.alpha
            if axis is Axis.X:
                field = field * w[:, None]
                integrand = np.abs(field) ** q.p * sin_phi[:, None]
            else:
                field = field * w[None, :]
                integrand = np.abs(field) ** q.p * sin_phi[None, :]
        best = max(best, float((integrand.sum() * cell) ** (1.0 / q.p)))
    return best
