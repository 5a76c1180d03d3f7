"""Registered corpus of test functions with known regularity metadata.

Breakpoint offsets (0.37, -0.21, 0.3, -0.4) are deliberately far from
every low-order Chebyshev-Gauss-Lobatto point, so that jumps never land
on interpolation nodes; registration verifies the clearance up to degree
129.  Registered analytic facts (variations, mixed variation, torus
variation) are re-derived by dense-grid estimators in the tests.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Callable, Mapping

import numpy as np

from .cheb import cgl_points
from .errors import ConsistencyError, DomainError

_MAX_CLEARANCE_DEGREE = 129
_MIN_CLEARANCE = 1e-6


class Regularity(enum.Enum):
    MEMBER_OF_SPACE = "member_of_space"
    ANALYTIC = "analytic"
    SMOOTH_BV = "smooth_bv"
    HBV_ONLY = "hbv_only"


@dataclass(frozen=True)
class SampledFunction:
    """A test function plus whatever is known about its regularity.

    ``eval`` is vectorized; for ``domain == "square"`` it maps (x, y) in
    [-1, 1]^2 to reals, for ``domain == "torus"`` it is a 1-argument
    2*pi-periodic function and ``breakpoints_x`` holds its jump angles.
    """

    id: str
    eval: Callable
    domain: str = "square"
    regularity: Regularity = Regularity.ANALYTIC
    breakpoints_x: tuple = ()
    breakpoints_y: tuple = ()
    smooth_orders: tuple | None = None
    analytic_facts: Mapping[str, float] = dc_field(default_factory=dict)
    trig_derivatives: Mapping[tuple, Callable] = dc_field(default_factory=dict)

    def __call__(self, *args):
        return self.eval(*args)


def _const_one(x, y):
    return np.ones_like(np.asarray(x, dtype=float) + np.asarray(y, dtype=float))


def _coord_x(x, y):
    return np.asarray(x, dtype=float) + 0.0 * np.asarray(y, dtype=float)


def _cheb_product(x, y):
    # That_1(x) * That_1(y) = 2 x y
    return 2.0 * np.asarray(x, dtype=float) * np.asarray(y, dtype=float)


def _wave(x, y):
    return np.cos(3.0 * np.asarray(x, dtype=float) + 2.0 * np.asarray(y, dtype=float))


def _wave_arg(phi, psi):
    return 3.0 * np.cos(phi) + 2.0 * np.cos(psi)


_WAVE_TRIG_DERIVATIVES = {
    (1, 0): lambda phi, psi: 3.0 * np.sin(phi) * np.sin(_wave_arg(phi, psi)),
    (0, 1): lambda phi, psi: 2.0 * np.sin(psi) * np.sin(_wave_arg(phi, psi)),
    (1, 1): lambda phi, psi: -6.0 * np.sin(phi) * np.sin(psi) * np.cos(_wave_arg(phi, psi)),
    (2, 0): lambda phi, psi: 3.0 * np.cos(phi) * np.sin(_wave_arg(phi, psi))
    - 9.0 * np.sin(phi) ** 2 * np.cos(_wave_arg(phi, psi)),
    (0, 2): lambda phi, psi: 2.0 * np.cos(psi) * np.sin(_wave_arg(phi, psi))
    - 4.0 * np.sin(psi) ** 2 * np.cos(_wave_arg(phi, psi)),
}


def _hbv_step(x, y):
    return np.where(
        (np.asarray(x, dtype=float) >= 0.37) & (np.asarray(y, dtype=float) >= -0.21), 1.0, 0.0
    )


def _kink(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return (x - 0.3) * np.abs(x - 0.3) / 2.0 + (y + 0.4) * np.abs(y + 0.4) / 2.0


_KINK_TRIG_DERIVATIVES = {
    (1, 0): lambda phi, psi: -np.sin(phi) * np.abs(np.cos(phi) - 0.3)
    + 0.0 * np.asarray(psi, dtype=float),
    (0, 1): lambda phi, psi: -np.sin(psi) * np.abs(np.cos(psi) + 0.4)
    + 0.0 * np.asarray(phi, dtype=float),
    (1, 1): lambda phi, psi: 0.0 * (np.asarray(phi, dtype=float) + np.asarray(psi, dtype=float)),
}

_TORUS_JUMPS = (0.87, 3.71)


def _torus_step(phi):
    ph = np.mod(np.asarray(phi, dtype=float), 2.0 * np.pi)
    return np.where((ph >= _TORUS_JUMPS[0]) & (ph < _TORUS_JUMPS[1]), 1.0, 0.0)


def _check_square_clearance(breaks: tuple) -> None:
    for degree in range(1, _MAX_CLEARANCE_DEGREE + 1):
        pts = cgl_points(degree)
        for b in breaks:
            if np.min(np.abs(pts - b)) < _MIN_CLEARANCE:
                raise ConsistencyError(
                    f"breakpoint {b} collides with a degree-{degree} Lobatto point"
                )


def _check_torus_clearance(jumps: tuple) -> None:
    # jump angles must miss the mean-operator parameters pi*k/(3n) up to n = 128
    for n in range(1, 129):
        spacing = math.pi / (3 * n)
        for j in jumps:
            if abs(j / spacing - round(j / spacing)) * spacing < _MIN_CLEARANCE:
                raise ConsistencyError(f"torus jump {j} collides with an order-{n} parameter")


@lru_cache(maxsize=1)
def corpus() -> tuple:
    """The registered test functions, in a fixed order."""
    entries = (
        SampledFunction(
            id="const_one",
            eval=_const_one,
            regularity=Regularity.MEMBER_OF_SPACE,
        ),
        SampledFunction(
            id="coord_x",
            eval=_coord_x,
            regularity=Regularity.MEMBER_OF_SPACE,
            analytic_facts={"tv_x": 2.0},
        ),
        SampledFunction(
            id="cheb_product",
            eval=_cheb_product,
            regularity=Regularity.MEMBER_OF_SPACE,
        ),
        SampledFunction(
            id="cos_3x_2y",
            eval=_wave,
            regularity=Regularity.ANALYTIC,
            trig_derivatives=_WAVE_TRIG_DERIVATIVES,
        ),
        SampledFunction(
            id="hbv_step",
            eval=_hbv_step,
            regularity=Regularity.HBV_ONLY,
            breakpoints_x=(0.37,),
            breakpoints_y=(-0.21,),
            analytic_facts={"hardy_krause": 1.0},
        ),
        SampledFunction(
            id="kink_xy",
            eval=_kink,
            regularity=Regularity.SMOOTH_BV,
            smooth_orders=(1, 1),
            breakpoints_x=(0.3,),
            breakpoints_y=(-0.4,),
            analytic_facts={"tv_x_partial": 2.0, "tv_y_partial": 2.0},
            trig_derivatives=_KINK_TRIG_DERIVATIVES,
        ),
        SampledFunction(
            id="torus_step",
            eval=_torus_step,
            domain="torus",
            regularity=Regularity.HBV_ONLY,
            breakpoints_x=_TORUS_JUMPS,
            analytic_facts={"tv_torus": 2.0},
        ),
    )
    for entry in entries:
        if entry.domain == "square":
            _check_square_clearance(entry.breakpoints_x + entry.breakpoints_y)
        else:
            _check_torus_clearance(entry.breakpoints_x)
    return entries


def get(function_id: str) -> SampledFunction:
    for entry in corpus():
        if entry.id == function_id:
            return entry
    known = ", ".join(e.id for e in corpus())
    raise DomainError(f"unknown corpus function {function_id!r} (known: {known})")


def square_corpus() -> tuple:
    return tuple(e for e in corpus() if e.domain == "square")
