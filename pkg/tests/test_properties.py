"""Hypothesis-driven invariants across the numerical kernels."""
import numpy as np
from hypothesis import assume, given, settings, strategies as st

from arccoord import corpus, hexagon, poisson, spine
from arccoord.errors import NonFlippable

side = st.floats(min_value=0.05, max_value=20.0)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@given(side, side, side)
def test_width_routes_agree(a_i, a_j, a_k):
    seg = hexagon.hexagon_boundary_segment
    w = hexagon.oriented_width_from_segments(seg(a_k, a_i, a_j), seg(a_j, a_k, a_i),
                                             seg(a_i, a_j, a_k))
    assert abs(w - hexagon.oriented_width_direct(a_i, a_j, a_k)) <= 1e-10


@given(side, side, side)
def test_widths_of_a_hexagon_sum_to_half_its_boundary(a, b, c):
    seg = hexagon.hexagon_boundary_segment
    total = seg(a, b, c) + seg(b, c, a) + seg(c, a, b)
    w = (hexagon.oriented_width_direct(a, b, c) + hexagon.oriented_width_direct(b, c, a)
         + hexagon.oriented_width_direct(c, a, b))
    assert np.isclose(w, total / 2, rtol=1e-10, atol=1e-12)


@given(st.floats(min_value=1e-3, max_value=40.0))
def test_t_involution(a):
    assert np.isclose(hexagon.t_length(hexagon.t_length(a)), a, rtol=1e-9)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_eta_antisymmetric_and_casimir(seed):
    m = corpus.random_surface(np.random.default_rng(seed), max_genus=2, max_boundary=3)
    eta = poisson.poisson_bivector(m)
    assert eta.antisymmetry_error() == 0
    for k in range(m.ribbon.signature.n_boundary):
        assert poisson.casimir_residual(m, k) < 1e-5


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(min_value=0, max_value=50))
def test_flip_preserves_boundary(seed, k):
    m = corpus.random_surface(np.random.default_rng(seed))
    k %= m.ribbon.n_arcs
    try:
        m2 = spine.flip(m, k)
    except NonFlippable:
        assume(False)
    np.testing.assert_allclose(m2.boundary_lengths, m.boundary_lengths, rtol=1e-10)
    m2.check_convention()


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_spine_widths_nonnegative_and_total(seed):
    m = corpus.random_surface(np.random.default_rng(seed), max_genus=2, max_boundary=3)
    s = spine.find_spine(m)
    assert np.all(s.weights > 0)
    assert np.isclose(2 * s.weights.sum(), m.boundary_lengths.sum(), rtol=1e-10)
