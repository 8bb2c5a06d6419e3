import mpmath as mp
import numpy as np
import pytest

from arccoord import corpus, poisson, surface
from arccoord.errors import NotTrivalent
from arccoord.surface import MaximalCoordinates


def brute_force_eta(m):
    """Sum sinh(p/2 - d)/sinh(p/2) over endpoint pairs on a common circle."""
    layout = surface.boundary_layout(m)
    n = m.ribbon.n_arcs
    P = np.zeros((n, n))
    for x in range(m.ribbon.n_darts):
        for y in range(m.ribbon.n_darts):
            i, j = x // 2, y // 2
            if i == j or m.ribbon.circle_of_dart[x] != m.ribbon.circle_of_dart[y]:
                continue
            c = layout.circles[layout.dart_circle[x]]
            p = mp.mpf(c.circumference)
            d = mp.mpf(layout.dart_position[y] - layout.dart_position[x]) % p
            P[i, j] += float(mp.sinh(p / 2 - d) / mp.sinh(p / 2)) / 2
    return P


def test_symmetric_torus_matrix(torus):
    eta = poisson.poisson_bivector(torus)
    want = np.array([[0, 0.25, -0.25], [-0.25, 0, 0.25], [0.25, -0.25, 0]])
    np.testing.assert_allclose(eta.matrix, want, atol=1e-13)
    assert eta.antisymmetry_error() == 0


def test_matches_brute_force(rng):
    for _ in range(5):
        m = corpus.random_surface(rng, max_genus=2, max_boundary=3)
        np.testing.assert_allclose(poisson.poisson_bivector(m).matrix, brute_force_eta(m),
                                   atol=1e-12)


def test_pants_bivector_vanishes(pants):
    # all three seams are functions of the boundary lengths
    m = MaximalCoordinates(pants, [1.0, 2.0, 3.0])
    assert np.all(poisson.poisson_bivector(m).matrix == 0)


def test_sinh_ratio_stable_for_long_circles():
    p, d = 2000.0, np.array([1.0, 1000.0, 1999.0])
    want = [float(mp.sinh(mp.mpf(p) / 2 - x) / mp.sinh(mp.mpf(p) / 2)) for x in d]
    np.testing.assert_allclose(poisson.sinh_ratio(p, d), want, rtol=1e-12, atol=1e-300)


def test_casimirs(rng):
    for _ in range(10):
        m = corpus.random_surface(rng)
        for k in range(m.ribbon.signature.n_boundary):
            assert poisson.casimir_residual(m, k) < 1e-6


def test_kontsevich_torus(torus):
    H = poisson.kontsevich_bivector(torus.ribbon).matrix
    np.testing.assert_array_equal(H, [[0, 1, -1], [-1, 0, 1], [1, -1, 0]])


def test_penner_form_is_opposite_sign(torus):
    d = surface.lambda_lengths(corpus.symmetric_torus(20.0))
    A = poisson.penner_form(d).matrix
    np.testing.assert_array_equal(A, -poisson.kontsevich_bivector(torus.ribbon).matrix)


def test_kontsevich_needs_trivalent():
    with pytest.raises(NotTrivalent):
        poisson.kontsevich_bivector(corpus.one_holed_torus_two_arcs())


def test_normalized_bivector_torus(torus):
    M = poisson.normalized_bivector(torus).matrix
    assert M[0, 1] == pytest.approx(1.1329077831, abs=1e-6)
    assert poisson.limit_deviation(torus) == pytest.approx(0.1329077831, abs=1e-6)


def test_t_coordinate_round_trip(torus):
    P = poisson.poisson_bivector(torus).matrix
    back = poisson.from_t_coordinates(torus, poisson.to_t_coordinates(torus, P))
    np.testing.assert_allclose(back, P, atol=1e-15)
