import mpmath as mp
import numpy as np
import pytest

from arccoord import hexagon
from arccoord.errors import DegenerateHexagon, NonPositiveLength

mp.mp.dps = 40


def mp_segment(opposite, adj1, adj2):
    a, b, c = (mp.mpf(x) for x in (opposite, adj1, adj2))
    return mp.acosh((mp.cosh(b) * mp.cosh(c) + mp.cosh(a)) / (mp.sinh(b) * mp.sinh(c)))


def mp_width(a_i, a_j, a_k):
    # half the sum of the two segments beside arc i minus the one across from it
    return (mp_segment(a_k, a_i, a_j) + mp_segment(a_j, a_k, a_i)
            - mp_segment(a_i, a_j, a_k)) / 2


def test_t_length_fixed_point():
    x = 2 * np.arcsinh(1.0)
    assert hexagon.t_length(x) == pytest.approx(1.7627471740390860, abs=1e-12)
    assert x == pytest.approx(1.7627471740390860, abs=1e-15)


def test_t_length_large_argument():
    assert hexagon.t_length(10.0) == pytest.approx(2.69521958772133e-2, rel=1e-12)


@pytest.mark.parametrize("a", [0.01, 0.3, 1.0, 4.0, 25.0])
def test_t_length_is_an_involution(a):
    assert hexagon.t_length(hexagon.t_length(a)) == pytest.approx(a, rel=1e-10)


def test_t_length_derivative_matches_finite_difference():
    for a in (0.2, 1.0, 3.0):
        h = 1e-6
        fd = (hexagon.t_length(a + h) - hexagon.t_length(a - h)) / (2 * h)
        assert hexagon.t_length_derivative(a) == pytest.approx(fd, rel=1e-7)


def test_symmetric_segment():
    a = float(mp.acosh(2))
    assert hexagon.hexagon_boundary_segment(a, a, a) == pytest.approx(1.3169578969248167, abs=1e-14)


def test_segment_against_mpmath():
    got = hexagon.hexagon_boundary_segment(3.1, 0.7, 1.9)
    assert got == pytest.approx(2.5137910505910529, abs=1e-13)


def test_segment_tiny_sides_keep_precision():
    # very long arcs make the opposite segment tiny; arccosh would lose it
    got = hexagon.hexagon_boundary_segment(30.0, 30.0, 30.0)
    want = float(mp_segment(30, 30, 30))
    assert got == pytest.approx(want, rel=1e-12)


@pytest.mark.parametrize("sides, want", [
    ((0.7, 1.9, 3.1), 1.7302472929356214),
    ((3.1, 0.7, 1.9), -0.37483129148855518),
    ((1.9, 3.1, 0.7), 0.78354375765543144),
    ((3.0, 0.5, 0.5), -0.69464262575401466),
])
def test_oriented_width_frozen(sides, want):
    assert hexagon.oriented_width_direct(*sides) == pytest.approx(want, abs=1e-13)
    assert float(mp_width(*sides)) == pytest.approx(want, abs=1e-13)


def test_torus_width():
    a = 2 * np.arcsinh(1.0)
    assert hexagon.oriented_width_direct(a, a, a) == pytest.approx(0.48121182505960345, abs=1e-14)


def test_width_routes_agree_vectorized(rng):
    a = rng.uniform(0.05, 20.0, size=(3, 2000))
    ai, aj, ak = a
    seg = hexagon.hexagon_boundary_segment
    w_seg = hexagon.oriented_width_from_segments(seg(ak, ai, aj), seg(aj, ak, ai), seg(ai, aj, ak))
    w_dir = hexagon.oriented_width_direct(ai, aj, ak)
    assert np.max(np.abs(w_seg - w_dir)) < 1e-10


def test_scalar_in_scalar_out():
    assert isinstance(hexagon.t_length(1.0), float)
    assert hexagon.t_length(np.array([1.0, 2.0])).shape == (2,)


def test_bad_lengths():
    with pytest.raises(NonPositiveLength):
        hexagon.hexagon_boundary_segment(-1.0, 1.0, 1.0)
    with pytest.raises(NonPositiveLength):
        hexagon.t_length(np.nan)
    with pytest.raises(DegenerateHexagon):
        hexagon.oriented_width_direct(0.0, 1.0, 1.0)
