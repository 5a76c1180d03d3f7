"""Chebyshev polynomials, Chebyshev-Gauss-Lobatto points, and series evaluation.

The basis used throughout the package is the normalized first-kind family
``That_0 = 1`` and ``That_k = sqrt(2) * T_k`` for ``k >= 1``, which is
orthonormal (up to a factor pi per axis) under the Chebyshev measure.
All evaluation is recurrence-based; the ``cos(k*arccos(x))`` form is kept
out of the library and used only as an independent oracle in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import DataError, DomainError

SQRT2 = math.sqrt(2.0)


def _as_checked_points(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("evaluation points must be finite")
    if np.any(np.abs(x) > 1.0):
        raise DomainError("evaluation points must lie in [-1, 1]")
    return x


def cgl_points(n: int) -> np.ndarray:
    """Chebyshev-Gauss-Lobatto points cos(k*pi/n), k = 0..n, decreasing.

    The raw cosines are antisymmetrized, ``x_k <- (x_k - x_{n-k}) / 2``, so
    that ``x_k == -x_{n-k}`` holds bit-exactly and the midpoint is exactly
    zero for even ``n``.
    """
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    raw = np.cos(np.arange(n + 1) * (np.pi / n))
    return (raw - raw[::-1]) / 2.0


def cheb_T(k: int, x):
    """First-kind Chebyshev polynomial T_k(x) on [-1, 1], by recurrence."""
    if k < 0:
        raise DomainError(f"polynomial degree must be >= 0, got {k}")
    x = _as_checked_points(x)
    prev = np.ones_like(x)
    if k == 0:
        return prev if prev.ndim else float(prev)
    cur = x.copy()
    for _ in range(k - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur if cur.ndim else float(cur)


def cheb_That(k: int, x):
    """Normalized Chebyshev polynomial: 1 for k = 0, sqrt(2)*T_k otherwise."""
    t = cheb_T(k, x)
    return t if k == 0 else SQRT2 * t


def hat_basis(kmax: int, x) -> np.ndarray:
    """Stack That_0(x) .. That_kmax(x) as rows, for array-valued x.

    Returns an array of shape ``(kmax + 1,) + x.shape`` computed with the
    three-term recurrence (no trigonometric calls).
    """
    if kmax < 0:
        raise DomainError(f"basis order must be >= 0, got {kmax}")
    x = np.asarray(x, dtype=float)
    out = np.empty((kmax + 1,) + x.shape)
    out[0] = 1.0
    if kmax >= 1:
        out[1] = x
    for k in range(2, kmax + 1):
        out[k] = 2.0 * x * out[k - 1] - out[k - 2]
    out[1:] *= SQRT2
    return out


@dataclass(frozen=True)
class ChebSeries1D:
    """A univariate series sum_k c_k That_k(x), c indexed 0..max_degree."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=float))
        if c.ndim != 1 or c.size == 0:
            raise DataError("coefficients must form a non-empty 1-d array")
        if not np.all(np.isfinite(c)):
            raise DataError("coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    @property
    def max_degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, x):
        """Evaluate by the Clenshaw backward recurrence."""
        x = _as_checked_points(x)
        # fold the normalization into plain T_k coefficients
        a = self.coeffs.copy()
        a[1:] *= SQRT2
        b1 = np.zeros_like(x)
        b2 = np.zeros_like(x)
        for k in range(a.size - 1, 0, -1):
            b1, b2 = a[k] + 2.0 * x * b1 - b2, b1
        out = a[0] + x * b1 - b2
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class ChebSeries2D:
    """A bivariate series sum c_{ij} That_i(x) That_j(y) over a fixed exponent set."""

    index_set: frozenset
    coeffs: Mapping[tuple, float] = field(compare=False)

    def __post_init__(self):
        index_set = frozenset((int(i), int(j)) for i, j in self.index_set)
        coeffs = {(int(i), int(j)): float(c) for (i, j), c in dict(self.coeffs).items()}
        extra = set(coeffs) - index_set
        if extra:
            raise DataError(f"coefficient keys outside the exponent set: {sorted(extra)[:4]}")
        if any(not math.isfinite(c) for c in coeffs.values()):
            raise DataError("series coefficients must be finite")
        if any(i < 0 or j < 0 for i, j in index_set):
            raise DomainError("exponents must be non-negative")
        object.__setattr__(self, "index_set", index_set)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree_x(self) -> int:
        return max(i for i, _ in self.index_set)

    @property
    def degree_y(self) -> int:
        return max(j for _, j in self.index_set)

    def to_matrix(self) -> np.ndarray:
        """Dense (degree_x+1, degree_y+1) coefficient matrix, zero off the set."""
        mat = np.zeros((self.degree_x + 1, self.degree_y + 1))
        for (i, j), c in self.coeffs.items():
            mat[i, j] = c
        return mat


def eval_series_matrix(mat: np.ndarray, x, y):
    """Evaluate a dense coefficient matrix at matched point arrays x, y."""
    x = _as_checked_points(x)
    y = _as_checked_points(y)
    x, y = np.broadcast_arrays(x, y)
    u = hat_basis(mat.shape[0] - 1, x.ravel())
    v = hat_basis(mat.shape[1] - 1, y.ravel())
    vals = np.einsum("ip,ip->p", u, mat @ v)
    return vals.reshape(x.shape) if x.ndim else float(vals[0])


def eval_series_grid(mat: np.ndarray, xs, ys) -> np.ndarray:
    """Evaluate on the tensor grid xs x ys; returns shape (len(xs), len(ys))."""
    u = hat_basis(mat.shape[0] - 1, _as_checked_points(np.atleast_1d(xs)))
    v = hat_basis(mat.shape[1] - 1, _as_checked_points(np.atleast_1d(ys)))
    return u.T @ mat @ v


def eval_series_2d(s: ChebSeries2D, x, y):
    """Value of the series at (x, y) in the square, scalars or arrays."""
    return eval_series_matrix(s.to_matrix(), x, y)
