"""Standard and random arc systems used by tests, scans and the CLI."""
from __future__ import annotations

import numpy as np

from .ribbon import RibbonStructure, SurfaceSignature, perm_orbits
from .surface import MaximalCoordinates

SYMMETRIC_TORUS_A = 2.0 * np.arcsinh(1.0)

# (g, n) pairs with g <= 3, n <= 4 and negative Euler characteristic
SIGNATURES = [(g, n) for g in range(4) for n in range(1, 5) if 2 - 2 * g - n < 0]


def one_holed_torus() -> RibbonStructure:
    """Maximal system on the one-holed torus: two hexagons (0 2 4)(1 3 5)."""
    return RibbonStructure.from_sigma0(SurfaceSignature(1, 1), [2, 3, 4, 5, 0, 1])


def one_holed_torus_two_arcs() -> RibbonStructure:
    """Two non-separating arcs; the complement is a single octagon."""
    return RibbonStructure.from_sigma0(SurfaceSignature(1, 1), [2, 3, 1, 0])


def pair_of_pants() -> RibbonStructure:
    """The three seams of a pair of pants, each joining two different circles."""
    # Theta graph on the sphere: the two faces (0 2 4) and (1 5 3).
    return RibbonStructure.from_sigma0(SurfaceSignature(0, 3), [2, 5, 4, 1, 0, 3])


def symmetric_torus(a=SYMMETRIC_TORUS_A) -> MaximalCoordinates:
    return MaximalCoordinates(one_holed_torus(), [a, a, a])


def _connected_from_sigma0(sigma0) -> bool:
    n = len(sigma0)
    seen = {0}
    stack = [0]
    while stack:
        d = stack.pop()
        for e in (d ^ 1, int(sigma0[d])):
            if e not in seen:
                seen.add(e)
                stack.append(e)
    return len(seen) == n


def random_maximal_ribbon(genus: int, n_boundary: int, rng: np.random.Generator,
                          max_tries: int = 100000) -> RibbonStructure:
    """Uniformly random labelled trivalent ribbon graph of the given type.

    Rejection sampling: random sigma0 made of 3-cycles, kept when connected
    with exactly ``n_boundary`` boundary cycles (the genus then follows).
    """
    sig = SurfaceSignature(genus, n_boundary)
    n_darts = 2 * sig.maximal_arcs
    for _ in range(max_tries):
        order = rng.permutation(n_darts)
        sigma0 = [0] * n_darts
        for i in range(0, n_darts, 3):
            x, y, z = (int(v) for v in order[i:i + 3])
            sigma0[x], sigma0[y], sigma0[z] = y, z, x
        if not _connected_from_sigma0(sigma0):
            continue
        inv = [0] * n_darts
        for d, e in enumerate(sigma0):
            inv[e] = d
        sigma_inf = [inv[d ^ 1] for d in range(n_darts)]
        if len(perm_orbits(sigma_inf)) != n_boundary:
            continue
        return RibbonStructure.from_sigma0(sig, sigma0)
    raise RuntimeError(f"no ribbon graph of type ({genus}, {n_boundary}) found")


def random_signature(rng: np.random.Generator, max_genus=3, max_boundary=4):
    choices = [(g, n) for g, n in SIGNATURES if g <= max_genus and n <= max_boundary]
    return choices[int(rng.integers(len(choices)))]


def random_surface(rng: np.random.Generator, max_genus=3, max_boundary=4,
                   a_range=(0.3, 3.0), signature=None) -> MaximalCoordinates:
    g, n = signature or random_signature(rng, max_genus, max_boundary)
    r = random_maximal_ribbon(g, n, rng)
    lo, hi = a_range
    a = np.exp(rng.uniform(np.log(lo), np.log(hi), size=r.n_arcs))
    return MaximalCoordinates(r, a)


def random_proper_ribbon(rng: np.random.Generator, max_arcs: int = 12,
                         max_tries: int = 10000) -> RibbonStructure:
    """Random connected ribbon graph whose vertices all have valence >= 3.

    Such a graph is a proper arc system on the surface it determines; the
    type (g, n) is read off from the Euler characteristic. Valences are drawn
    by splitting the darts into random cycles of length >= 3.
    """
    for _ in range(max_tries):
        n_arcs = int(rng.integers(2, max_arcs + 1))
        n_darts = 2 * n_arcs
        sizes = []
        left = n_darts
        while left:
            k = int(rng.integers(3, 7))
            if left - k < 3:
                k = left
            sizes.append(k)
            left -= k
        order = [int(v) for v in rng.permutation(n_darts)]
        sigma0 = [0] * n_darts
        i = 0
        for k in sizes:
            cyc = order[i:i + k]
            for j, d in enumerate(cyc):
                sigma0[d] = cyc[(j + 1) % k]
            i += k
        if not _connected_from_sigma0(sigma0):
            continue
        inv = [0] * n_darts
        for d, e in enumerate(sigma0):
            inv[e] = d
        n = len(perm_orbits([inv[d ^ 1] for d in range(n_darts)]))
        chi = len(sizes) - n_arcs          # V - E = 2 - 2g - n
        genus, rem = divmod(2 - n - chi, 2)
        if rem or 2 - 2 * genus - n >= 0:
            continue
        return RibbonStructure.from_sigma0(SurfaceSignature(genus, n), sigma0)
    raise RuntimeError("no proper ribbon graph found")
