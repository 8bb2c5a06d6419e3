import math
import xml.etree.ElementTree as ET
from fractions import Fraction

import numpy as np
import pytest

from arccoord import corpus, strebel
from arccoord.errors import ImproperSystem
from arccoord.strebel import WeightedRibbonGraph, build_flat_surface


def test_torus_equal_weights():
    c = build_flat_surface(WeightedRibbonGraph(corpus.one_holed_torus(), [1, 1, 1]))
    (cyl,) = c.cylinders
    assert cyl.circumference == 6
    assert cyl.residue == pytest.approx(-(3 / math.pi) ** 2)
    assert strebel.zero_orders(c) == [(3, 1), (3, 1)]
    assert strebel.degree_identity(c) == (2, 2)
    assert c.euler_characteristic() == 2 - 2 * 1


def test_pants_three_cylinders():
    c = build_flat_surface(WeightedRibbonGraph(corpus.pair_of_pants(), [1, 2, 3]))
    assert [cy.circumference for cy in c.cylinders] == [3, 4, 5]
    assert len(c.vertices) == 2
    assert strebel.degree_identity(c) == (2, 2)
    assert c.euler_characteristic() == 2


def test_exact_fractions():
    w = [Fraction(1, 3), Fraction(2, 7), Fraction(5, 11)]
    c = build_flat_surface(WeightedRibbonGraph(corpus.one_holed_torus(), w))
    assert c.cylinders[0].circumference == 2 * sum(w)
    assert isinstance(c.cylinders[0].circumference, Fraction)


def test_zero_weight_arc_dropped():
    c = build_flat_surface(WeightedRibbonGraph(corpus.one_holed_torus(), [1, 1, 0]))
    assert c.support == (0, 1)
    assert [len(v) for v in c.vertices] == [4]
    assert strebel.zero_orders(c) == [(4, 2)]
    assert strebel.degree_identity(c) == (2, 2)


def test_improper_weights():
    with pytest.raises(ImproperSystem):
        build_flat_surface(WeightedRibbonGraph(corpus.one_holed_torus(), [1, 0, 0]))
    with pytest.raises(ImproperSystem):
        WeightedRibbonGraph(corpus.one_holed_torus(), [1, -1, 1])


def test_gluings_are_involution_and_boundary_successor():
    r = corpus.pair_of_pants()
    c = build_flat_surface(WeightedRibbonGraph(r, [1, 1, 1]))
    assert all(c.bottom_gluing[c.bottom_gluing[d]] == d for d in range(6))
    assert list(c.side_gluing) == r.sigma_inf.tolist()
    assert len(strebel.horizontal_loops(c, 0.5)) == 3
    with pytest.raises(ValueError):
        strebel.horizontal_loops(c, 0.0)


def test_svg_net():
    c = build_flat_surface(WeightedRibbonGraph(corpus.one_holed_torus(), [1, 1, 1]))
    svg = strebel.render_svg(c, truncation_height=2.0)
    root = ET.fromstring(svg)
    ns = "{http://www.w3.org/2000/svg}"
    rects = root.findall(f".//{ns}rect")
    assert len(rects) == 6
    assert {r.get("height") for r in rects} == {"120.00"}
    labels = sorted(t.text for t in root.findall(f".//{ns}text[@class='gluing']"))
    assert labels == ["0+", "0-", "1+", "1-", "2+", "2-"]
    assert svg == strebel.render_svg(c, truncation_height=2.0)


def test_random_proper_graphs_bookkeeping(rng):
    for _ in range(50):
        r = corpus.random_proper_ribbon(rng)
        w = [Fraction(int(k), 7) for k in rng.integers(1, 20, r.n_arcs)]
        c = build_flat_surface(WeightedRibbonGraph(r, w))
        lhs, rhs = strebel.degree_identity(c)
        assert lhs == rhs
        assert sum(cy.circumference for cy in c.cylinders) == 2 * sum(w)
        assert c.euler_characteristic() == 2 - 2 * r.signature.genus
        np.testing.assert_allclose(strebel.quadratic_residues(c),
                                   [-(float(cy.circumference) / (2 * math.pi)) ** 2
                                    for cy in c.cylinders])
