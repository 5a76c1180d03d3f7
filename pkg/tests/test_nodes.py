"""Node sets: both constructions, classification, weights, exponent sets."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lcinterp.errors import CoprimalityError, DomainError
from lcinterp.nodes import (
    NodeClass,
    make_degree_pair,
    node_set_from_curve,
    node_set_from_grid,
    parity_indices,
    spectral_mask,
    spectral_set,
    weight_grid,
)

coprime_pairs = st.tuples(st.integers(1, 40), st.integers(1, 40)).filter(
    lambda mn: math.gcd(*mn) == 1
)


class TestDegreePair:
    def test_accepts_coprime(self):
        assert make_degree_pair(7, 5).m == 7
        assert make_degree_pair(1, 1).n == 1

    def test_rejects_common_factor(self):
        with pytest.raises(CoprimalityError):
            make_degree_pair(4, 2)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            make_degree_pair(0, 3)
        with pytest.raises(DomainError):
            make_degree_pair(3, -1)


class TestGridConstruction:
    def test_32_index_pairs(self):
        ns = node_set_from_grid(make_degree_pair(3, 2))
        assert {(n.i, n.j) for n in ns.nodes} == {(0, 0), (0, 2), (1, 1), (2, 0), (2, 2), (3, 1)}

    def test_75_count(self):
        assert len(node_set_from_grid(make_degree_pair(7, 5))) == 24

    def test_32_weights(self):
        ns = node_set_from_grid(make_degree_pair(3, 2))
        w = {(n.i, n.j): n.weight for n in ns.nodes}
        assert w[(0, 0)] == pytest.approx(1 / 12, abs=1e-16)
        assert w[(1, 1)] == pytest.approx(1 / 3, abs=1e-16)
        assert w[(2, 0)] == pytest.approx(1 / 6, abs=1e-16)

    def test_32_classes(self):
        ns = node_set_from_grid(make_degree_pair(3, 2))
        cls = {(n.i, n.j): n.node_class for n in ns.nodes}
        assert cls[(0, 0)] is NodeClass.VERTEX
        assert cls[(1, 1)] is NodeClass.INTERIOR
        assert cls[(2, 0)] is NodeClass.EDGE
        # (1, 1) maps to the point (1/2, 0), strictly inside the square
        node = ns.index_map[(1, 1)]
        assert (node.x, node.y) == pytest.approx((0.5, 0.0), abs=1e-15)

    def test_coordinates_distinct(self):
        for m, n in [(3, 2), (7, 5), (5, 4), (1, 1)]:
            coords = node_set_from_grid(make_degree_pair(m, n)).coords()
            assert len({tuple(row) for row in coords}) == len(coords)

    def test_padua_special_case_count(self):
        for k in (2, 4, 8, 16):
            ns = node_set_from_grid(make_degree_pair(k, k + 1))
            assert len(ns) == (k + 1) * (k + 2) // 2


class TestCurveConstruction:
    def test_first_sample_is_corner(self):
        ns = node_set_from_curve(make_degree_pair(3, 2))
        assert ns.index_map[(0, 0)].x == 1.0 and ns.index_map[(0, 0)].y == 1.0

    def test_75_dedup_from_36_samples(self):
        assert len(node_set_from_curve(make_degree_pair(7, 5))) == 24

    def test_matches_grid_form(self):
        for m, n in [(3, 2), (7, 5), (5, 4), (1, 2), (13, 12)]:
            d = make_degree_pair(m, n)
            a = node_set_from_grid(d)
            b = node_set_from_curve(d)
            assert [(x.i, x.j) for x in a.nodes] == [(x.i, x.j) for x in b.nodes]
            assert np.max(np.abs(a.coords() - b.coords())) <= 1e-12
            assert [x.node_class for x in a.nodes] == [x.node_class for x in b.nodes]

    def test_parameter_reflection_hits_boundary_indices(self):
        # the curve retraces itself: parameters 0 and pi land on boundary nodes
        for m, n in [(3, 2), (7, 5)]:
            ns = node_set_from_curve(make_degree_pair(m, n))
            first = ns.index_map[(0, 0)]
            assert first.node_class in (NodeClass.VERTEX, NodeClass.EDGE)
            # the final sample (parameter pi) reflects onto the grid boundary too
            boundary = [x for x in ns.nodes if x.node_class is not NodeClass.INTERIOR]
            assert all(x.i in (0, m) or x.j in (0, n) for x in boundary)

    def test_rejects_bad_tolerance(self):
        with pytest.raises(DomainError):
            node_set_from_curve(make_degree_pair(3, 2), tol=0.0)


class TestSpectralSet:
    def test_32_exact(self):
        s = spectral_set(make_degree_pair(3, 2))
        assert s.exponents == {(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (0, 2)}

    def test_axis_endpoints(self):
        for m, n in [(3, 2), (7, 5), (12, 13)]:
            exps = spectral_set(make_degree_pair(m, n)).exponents
            assert (m, 0) not in exps
            assert (0, n) in exps

    def test_mask_agrees_with_set(self):
        for m, n in [(3, 2), (7, 5), (1, 1), (1, 2)]:
            d = make_degree_pair(m, n)
            mask = spectral_mask(d)
            from_mask = {(int(i), int(j)) for i, j in zip(*np.nonzero(mask))}
            assert from_mask == spectral_set(d).exponents


@settings(max_examples=60, deadline=None)
@given(coprime_pairs)
def test_structure_properties(mn):
    d = make_degree_pair(*mn)
    ns = node_set_from_grid(d)
    expected = (d.m + 1) * (d.n + 1) // 2
    assert len(ns) == expected
    assert abs(ns.weight_sum - 1.0) <= 1e-12
    assert len(spectral_set(d)) == expected
    nc = node_set_from_curve(d)
    assert np.max(np.abs(ns.coords() - nc.coords())) <= 1e-12


@settings(max_examples=30, deadline=None)
@given(coprime_pairs)
def test_grid_helpers_consistent(mn):
    d = make_degree_pair(*mn)
    lam = weight_grid(d)
    ki, lj = parity_indices(d)
    ns = node_set_from_grid(d)
    assert np.allclose(lam[ki, lj], [x.weight for x in ns.nodes], rtol=0, atol=0)
    assert abs(lam.sum() - 1.0) <= 1e-12
    # odd-parity positions carry no weight
    full = np.add.outer(np.arange(d.m + 1), np.arange(d.n + 1))
    assert np.all(lam[full % 2 == 1] == 0.0)
