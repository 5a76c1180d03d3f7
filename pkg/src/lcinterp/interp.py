"""Lagrange interpolation on Lissajous-Chebyshev nodes.

The primary representation is the coefficient transform

    c_{ij} = sum over nodes of  weight * f(node) * That_i(x_k) * That_j(y_l),

taken over the spectral exponent set, with the single coefficient at
exponent (0, n) halved afterwards.  The halving mirrors the correction
term in the fundamental-polynomial form, which subtracts half of the
(0, n) basis contribution; both forms are implemented and tested against
each other.  Evaluation goes through dense coefficient matrices so that
scans over large point grids are two matrix products.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .cheb import (
    ChebSeries2D,
    cgl_points,
    eval_series_grid,
    eval_series_matrix,
    hat_basis,
)
from .errors import DataError, DomainError
from .nodes import DegreePair, Node, parity_indices, spectral_mask, weight_grid


@dataclass(frozen=True)
class Interpolant:
    degrees: DegreePair
    series: ChebSeries2D
    node_values: dict = field(compare=False)
    coeff_matrix: np.ndarray = field(repr=False, compare=False)


def _node_basis_matrices(d: DegreePair) -> tuple:
    # A[i, k] = That_i(x_k) for i < m;  B[j, l] = That_j(y_l) for j <= n
    return hat_basis(d.m - 1, cgl_points(d.m)), hat_basis(d.n, cgl_points(d.n))


def _masked_coeff_matrix(d: DegreePair, raw: np.ndarray) -> np.ndarray:
    mat = np.where(spectral_mask(d), raw, 0.0)
    mat[0, d.n] *= 0.5
    return mat


def _series_from_matrix(d: DegreePair, mat: np.ndarray) -> ChebSeries2D:
    mask = spectral_mask(d)
    idx = frozenset(zip(*np.nonzero(mask)))
    coeffs = {(int(i), int(j)): float(mat[i, j]) for i, j in idx}
    return ChebSeries2D(idx, coeffs)


def interpolate(f: Callable, d: DegreePair) -> Interpolant:
    """Interpolant of ``f`` on the node set of ``d``, in coefficient form.

    ``f`` must be evaluable (vectorized) at the node coordinates; a
    non-finite sample raises :class:`DataError` naming the node.
    """
    xs, ys = cgl_points(d.m), cgl_points(d.n)
    ki, lj = parity_indices(d)
    samples = np.asarray(f(xs[ki], ys[lj]), dtype=float)
    bad = ~np.isfinite(samples)
    if np.any(bad):
        k, l = int(ki[bad][0]), int(lj[bad][0])
        raise DataError(f"non-finite sample value at node (i={k}, j={l})")

    grid = np.zeros((d.m + 1, d.n + 1))
    grid[ki, lj] = samples
    grid *= weight_grid(d)
    basis_x, basis_y = _node_basis_matrices(d)
    mat = _masked_coeff_matrix(d, basis_x @ grid @ basis_y.T)

    node_values = {(int(k), int(l)): float(v) for k, l, v in zip(ki, lj, samples)}
    return Interpolant(d, _series_from_matrix(d, mat), node_values, mat)


def fundamental_polynomial(d: DegreePair, node: Node) -> ChebSeries2D:
    """Cardinal polynomial of ``node``: 1 there, 0 at every other node."""
    k, l = node.i, node.j
    if not (0 <= k <= d.m and 0 <= l <= d.n) or (k + l) % 2 != 0:
        raise DomainError(f"({k}, {l}) is not a node index of the ({d.m}, {d.n}) set")
    basis_x, basis_y = _node_basis_matrices(d)
    raw = node.weight * np.outer(basis_x[:, k], basis_y[:, l])
    return _series_from_matrix(d, _masked_coeff_matrix(d, raw))


def evaluate(ip: Interpolant, x, y):
    """Interpolant value at (x, y) in the square; scalars or arrays."""
    return eval_series_matrix(ip.coeff_matrix, x, y)


def evaluate_grid(ip: Interpolant, xs, ys) -> np.ndarray:
    """Interpolant values on the tensor grid xs x ys."""
    return eval_series_grid(ip.coeff_matrix, xs, ys)


def residual_at_nodes(ip: Interpolant) -> float:
    """Max over nodes of |interpolant - sample|; a construction health check."""
    d = ip.degrees
    vals = evaluate_grid(ip, cgl_points(d.m), cgl_points(d.n))
    res = 0.0
    for (k, l), sample in ip.node_values.items():
        res = max(res, abs(vals[k, l] - sample))
    return res
