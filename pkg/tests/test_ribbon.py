import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arccoord import corpus
from arccoord.errors import CircleMismatch, InvalidPermutation
from arccoord.ribbon import (RibbonStructure, SurfaceSignature, classify_complement,
                             find_isomorphism, is_maximal, perm_orbits, validate)


def test_signature_counts():
    sig = SurfaceSignature(2, 3)
    assert sig.euler_characteristic == -5
    assert sig.maximal_arcs == 15
    assert sig.maximal_regions == 10
    with pytest.raises(ValueError):
        SurfaceSignature(0, 2)


def test_perm_orbits():
    assert perm_orbits([1, 2, 0, 4, 3]) == [(0, 1, 2), (3, 4)]


def test_torus_structure():
    t = corpus.one_holed_torus()
    assert t.sigma_inf.tolist() == [5, 4, 1, 0, 3, 2]
    assert t.faces() == [(0, 2, 4), (1, 3, 5)]
    assert t.boundary_cycles() == [(0, 3, 4, 1, 2, 5)]
    rep = validate(t)
    assert (rep.sigma0_orbits, rep.sigma_inf_orbits, rep.connected) == (2, 1, True)
    assert is_maximal(t)


def test_pants_boundary_cycles():
    p = corpus.pair_of_pants()
    assert p.boundary_cycles() == [(0, 3), (1, 4), (2, 5)]
    assert p.circle_of_dart.tolist() == [0, 1, 2, 0, 1, 2]
    assert is_maximal(p)


def test_two_arc_torus_is_one_octagon():
    rep = classify_complement(corpus.one_holed_torus_two_arcs())
    assert rep.proper
    assert [r.kind for r in rep.regions] == ["octagon"]
    assert not is_maximal(corpus.one_holed_torus_two_arcs())


def test_single_arc_on_torus_is_not_proper():
    # one non-separating arc leaves an annulus, not a polygon
    r = RibbonStructure.from_sigma0(SurfaceSignature(1, 1), [1, 0], check=False)
    assert not classify_complement(r).proper


def test_arrays_are_readonly():
    t = corpus.one_holed_torus()
    with pytest.raises(ValueError):
        t.sigma_inf[0] = 1
    with pytest.raises(AttributeError):
        t.signature = None


def test_invalid_permutation():
    with pytest.raises(InvalidPermutation):
        RibbonStructure(SurfaceSignature(1, 1), [0, 0, 1, 2, 3, 4], [0] * 6)
    with pytest.raises(InvalidPermutation):
        RibbonStructure(SurfaceSignature(1, 1), [0, 1, 2], [0] * 3)


def test_circle_mismatch():
    t = corpus.one_holed_torus()
    with pytest.raises(CircleMismatch):
        RibbonStructure(t.signature, t.sigma_inf, [0, 0, 0, 0, 0, 1])
    p = corpus.pair_of_pants()
    with pytest.raises(CircleMismatch):
        RibbonStructure(p.signature, p.sigma_inf, [0, 1, 1, 0, 1, 1])


def test_json_round_trip():
    p = corpus.pair_of_pants()
    text = json.dumps(p.to_json())
    assert RibbonStructure.from_json(json.loads(text)) == p


def test_from_json_checks_arc_count():
    d = corpus.pair_of_pants().to_json()
    d["arcs"] = 4
    with pytest.raises(InvalidPermutation):
        RibbonStructure.from_json(d)


def test_restrict_to_octagon():
    t = corpus.one_holed_torus()
    sub, keep = t.restrict([0, 1])
    assert keep == [0, 1]
    assert classify_complement(sub).proper
    assert find_isomorphism(sub, corpus.one_holed_torus_two_arcs()) is not None


def test_relabel_is_isomorphic(rng):
    r = corpus.random_maximal_ribbon(1, 2, rng)
    perm = rng.permutation(r.n_arcs)
    rev = rng.integers(0, 2, r.n_arcs).astype(bool)
    r2 = r.relabel(perm, rev)
    phi = find_isomorphism(r, r2)
    assert phi is not None
    assert all(phi[d] // 2 == perm[d // 2] for d in range(r.n_darts))


def test_isomorphism_respects_weights():
    t = corpus.one_holed_torus()
    assert find_isomorphism(t, t, [1, 2, 3], [1, 2, 3]) is not None
    assert find_isomorphism(t, t, [1, 2, 3], [3, 3, 3]) is None


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), sig=st.sampled_from(corpus.SIGNATURES))
def test_random_maximal_ribbons_are_valid(seed, sig):
    r = corpus.random_maximal_ribbon(*sig, np.random.default_rng(seed))
    rep = validate(r)
    assert rep.connected
    assert rep.sigma_inf_orbits == sig[1]
    assert rep.sigma0_orbit_sizes == (3,) * r.signature.maximal_regions
    assert classify_complement(r).proper


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_random_proper_ribbons(seed):
    r = corpus.random_proper_ribbon(np.random.default_rng(seed))
    assert classify_complement(r).proper
    assert min(len(f) for f in r.faces()) >= 3
