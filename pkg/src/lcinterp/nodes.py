"""Lissajous-Chebyshev node sets and the matching spectral exponent sets.

A node set for a coprime degree pair (m, n) is the parity-constrained
tensor Chebyshev grid: all (x_i, y_j) with 0 <= i <= m, 0 <= j <= n and
i + j even, where x_i = cos(i*pi/m) and y_j = cos(j*pi/n).  The same set
arises by sampling the closed curve t -> (cos(n t), cos(m t)) at the
m*n + 1 equispaced parameters pi*k/(m*n); both constructions are provided
and the curve one is cross-checked against the grid one.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cheb import cgl_points
from .errors import ConsistencyError, CoprimalityError, DomainError


class NodeClass(enum.Enum):
    VERTEX = "vertex"
    EDGE = "edge"
    INTERIOR = "interior"


@dataclass(frozen=True)
class DegreePair:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise DomainError(f"degrees must be positive, got ({self.m}, {self.n})")
        if math.gcd(self.m, self.n) != 1:
            raise CoprimalityError(
                f"degrees must be relatively prime, got ({self.m}, {self.n}) "
                f"with gcd {math.gcd(self.m, self.n)}"
            )


def make_degree_pair(m: int, n: int) -> DegreePair:
    """Validated coprime degree pair."""
    return DegreePair(int(m), int(n))


@dataclass(frozen=True)
class Node:
    i: int
    j: int
    x: float
    y: float
    node_class: NodeClass
    weight: float


@dataclass(frozen=True)
class NodeSet:
    degrees: DegreePair
    nodes: tuple

    def __len__(self) -> int:
        return len(self.nodes)

    @cached_property
    def index_map(self) -> dict:
        return {(node.i, node.j): node for node in self.nodes}

    @cached_property
    def weight_sum(self) -> float:
        return float(sum(node.weight for node in self.nodes))

    def coords(self) -> np.ndarray:
        """(N, 2) array of node coordinates, in node order."""
        return np.array([(node.x, node.y) for node in self.nodes])


@dataclass(frozen=True)
class SpectralIndexSet:
    degrees: DegreePair
    exponents: frozenset

    def __len__(self) -> int:
        return len(self.exponents)

    def sorted(self) -> list:
        return sorted(self.exponents)


def _classify(i: int, j: int, d: DegreePair) -> NodeClass:
    on_x = i in (0, d.m)
    on_y = j in (0, d.n)
    if on_x and on_y:
        return NodeClass.VERTEX
    if on_x or on_y:
        return NodeClass.EDGE
    return NodeClass.INTERIOR


def _weight(cls: NodeClass, d: DegreePair) -> float:
    mn = d.m * d.n
    if cls is NodeClass.VERTEX:
        return 1.0 / (2 * mn)
    if cls is NodeClass.EDGE:
        return 1.0 / mn
    return 2.0 / mn


def node_set_from_grid(d: DegreePair) -> NodeSet:
    """Canonical construction: enumerate the even-parity index grid."""
    xs = cgl_points(d.m)
    ys = cgl_points(d.n)
    nodes = []
    for i in range(d.m + 1):
        for j in range(i % 2, d.n + 1, 2):
            cls = _classify(i, j, d)
            nodes.append(Node(i, j, float(xs[i]), float(ys[j]), cls, _weight(cls, d)))
    return NodeSet(d, tuple(nodes))


def _fold(k: int, q: int) -> int:
    # index of cos(k*pi/q) among cos(r*pi/q), r = 0..q, using evenness of cos
    r = k % (2 * q)
    return r if r <= q else 2 * q - r


def node_set_from_curve(d: DegreePair, tol: float = 1e-12) -> NodeSet:
    """Sample the curve at the m*n + 1 equispaced parameters and deduplicate.

    Node identity is decided by integer congruence arithmetic on the
    parameter index; the floating-point distance between the curve sample
    and the grid point is checked against ``tol`` as a secondary assertion.
    """
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    m, n = d.m, d.n
    xs = cgl_points(m)
    ys = cgl_points(n)
    seen: dict = {}
    for k in range(m * n + 1):
        t = math.pi * k / (m * n)
        i, j = _fold(k, m), _fold(k, n)
        sample = (math.cos(n * t), math.cos(m * t))
        err = max(abs(sample[0] - xs[i]), abs(sample[1] - ys[j]))
        if err > tol:
            raise ConsistencyError(
                f"curve sample k={k} deviates from grid point ({i}, {j}) by {err:.3e}"
            )
        seen.setdefault((i, j), k)
    expected = (m + 1) * (n + 1) // 2
    if len(seen) != expected:
        raise ConsistencyError(
            f"curve sampling produced {len(seen)} distinct points, expected {expected}"
        )
    nodes = []
    for i, j in sorted(seen):
        cls = _classify(i, j, d)
        nodes.append(Node(i, j, float(xs[i]), float(ys[j]), cls, _weight(cls, d)))
    return NodeSet(d, tuple(nodes))


def spectral_set(d: DegreePair) -> SpectralIndexSet:
    """Exponent set {i/m + j/n < 1} plus the extra pair (0, n)."""
    m, n = d.m, d.n
    exps = {(i, j) for i in range(m) for j in range(n) if i * n + j * m < m * n}
    exps.add((0, n))
    return SpectralIndexSet(d, frozenset(exps))


def spectral_mask(d: DegreePair) -> np.ndarray:
    """Boolean (m, n+1) matrix marking the spectral exponent set."""
    m, n = d.m, d.n
    i = np.arange(m)[:, None]
    j = np.arange(n + 1)[None, :]
    mask = (i * n + j * m) < m * n
    mask[0, n] = True
    return mask


def weight_grid(d: DegreePair) -> np.ndarray:
    """(m+1, n+1) matrix of node weights, zero at odd-parity positions."""
    m, n = d.m, d.n
    i = np.arange(m + 1)[:, None]
    j = np.arange(n + 1)[None, :]
    on_x = (i == 0) | (i == m)
    on_y = (j == 0) | (j == n)
    lam = np.where(on_x & on_y, 0.5, np.where(on_x | on_y, 1.0, 2.0)) / (m * n)
    return np.where((i + j) % 2 == 0, lam, 0.0)


def parity_indices(d: DegreePair) -> tuple:
    """Index arrays (I, J) of the even-parity grid positions, in node order."""
    pairs = [(i, j) for i in range(d.m + 1) for j in range(i % 2, d.n + 1, 2)]
    arr = np.array(pairs, dtype=int)
    return arr[:, 0], arr[:, 1]
