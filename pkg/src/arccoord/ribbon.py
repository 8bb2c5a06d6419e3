r"""
Arc systems on bordered surfaces, encoded as dart permutations.

Every arc ``k`` carries two oriented copies, the darts ``2k`` and ``2k+1``,
so the orientation reversal ``sigma1`` is the fixed involution ``d -> d ^ 1``
and never stored. A dart *ends* on a boundary circle; ``circle_of_dart``
records which one.

``sigma_inf`` sends a dart to the dart whose endpoint comes just before it
along the boundary orientation induced by the surface. The face rotation is
derived as ``sigma0 = sigma1 o sigma_inf^{-1}``; its orbits are the
complementary regions (hexagons for a maximal system). Walking a dart ``x``
forward along the boundary from its endpoint, the next endpoint met is that of
``sigma1(sigma0(x)) = sigma_inf^{-1}(x)``, and the boundary segment in between
is a side of the region containing ``x``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import CircleMismatch, InvalidPermutation


@dataclass(frozen=True)
class SurfaceSignature:
    genus: int
    n_boundary: int

    def __post_init__(self):
        if self.genus < 0 or self.n_boundary < 1:
            raise ValueError(f"bad signature g={self.genus}, n={self.n_boundary}")
        if self.euler_characteristic >= 0:
            raise ValueError(
                f"surface (g={self.genus}, n={self.n_boundary}) is not hyperbolic"
            )

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.n_boundary

    @property
    def maximal_arcs(self) -> int:
        return 6 * self.genus - 6 + 3 * self.n_boundary

    @property
    def maximal_regions(self) -> int:
        return 4 * self.genus - 4 + 2 * self.n_boundary


def perm_orbits(perm) -> list[tuple[int, ...]]:
    """Cycles of ``perm``, each starting at its smallest element, sorted."""
    perm = [int(d) for d in perm]
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        cycles.append(tuple(cyc))
    return cycles


def _is_bijection(perm, n) -> bool:
    return len(perm) == n and sorted(perm) == list(range(n))


def _readonly(values) -> np.ndarray:
    arr = np.array(values, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ValidationReport:
    n_darts: int
    sigma0_orbits: int
    sigma1_orbits: int
    sigma_inf_orbits: int
    sigma0_orbit_sizes: tuple[int, ...]
    connected: bool


@dataclass(frozen=True)
class Region:
    darts: tuple[int, ...]
    sides: int  # 2m for a sigma0-orbit of size m

    @property
    def kind(self) -> str:
        return {6: "hexagon", 8: "octagon"}.get(self.sides, f"{self.sides}-gon")


@dataclass(frozen=True)
class ComplementReport:
    regions: list[Region] = field(default_factory=list)
    proper: bool = False
    euler_consistent: bool = False
    vertices: int = 0
    edges: int = 0
    faces: int = 0


class RibbonStructure:
    """Arc system on a genus ``g`` surface with ``n`` boundary circles.

    Immutable once built. ``sigma_inf`` and ``circle_of_dart`` are the stored
    data; ``sigma0`` and the inverse permutations are derived.
    """

    __slots__ = ("signature", "sigma_inf", "circle_of_dart", "sigma_inf_inv",
                 "sigma0", "sigma0_inv", "_hash")

    def __init__(self, signature: SurfaceSignature, sigma_inf, circle_of_dart,
                 check: bool = True):
        sigma_inf = [int(d) for d in sigma_inf]
        circle_of_dart = [int(c) for c in circle_of_dart]
        n = len(sigma_inf)
        if n % 2:
            raise InvalidPermutation("odd number of darts")
        if not _is_bijection(sigma_inf, n):
            raise InvalidPermutation("sigma_inf is not a permutation of the darts")
        if len(circle_of_dart) != n:
            raise CircleMismatch("circle_of_dart must list one circle per dart")
        inv = [0] * n
        for d, e in enumerate(sigma_inf):
            inv[e] = d
        s0 = [inv[d] ^ 1 for d in range(n)]
        s0_inv = [0] * n
        for d, e in enumerate(s0):
            s0_inv[e] = d
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "sigma_inf", _readonly(sigma_inf))
        object.__setattr__(self, "circle_of_dart", _readonly(circle_of_dart))
        object.__setattr__(self, "sigma_inf_inv", _readonly(inv))
        object.__setattr__(self, "sigma0", _readonly(s0))
        object.__setattr__(self, "sigma0_inv", _readonly(s0_inv))
        object.__setattr__(self, "_hash", hash((signature, tuple(sigma_inf),
                                                tuple(circle_of_dart))))
        if check:
            validate(self)

    def __setattr__(self, name, value):
        raise AttributeError("RibbonStructure is immutable")

    # -- basic accessors -------------------------------------------------

    @property
    def n_darts(self) -> int:
        return len(self.sigma_inf)

    @property
    def n_arcs(self) -> int:
        return self.n_darts // 2

    @property
    def sigma1(self) -> np.ndarray:
        return np.arange(self.n_darts) ^ 1

    @property
    def arc_of_dart(self) -> np.ndarray:
        return np.arange(self.n_darts) // 2

    def faces(self) -> list[tuple[int, ...]]:
        return perm_orbits(self.sigma0)

    def boundary_cycles(self) -> list[tuple[int, ...]]:
        """sigma_inf-orbits listed in positive boundary order.

        Each cycle starts at its smallest dart and follows ``sigma_inf^{-1}``,
        i.e. the order in which endpoints are met walking along the circle.
        """
        cycles = perm_orbits(self.sigma_inf_inv)
        return sorted(cycles, key=lambda c: int(self.circle_of_dart[c[0]]))

    def darts_on_circle(self, k: int) -> list[int]:
        return [d for d in range(self.n_darts) if self.circle_of_dart[d] == k]

    def __eq__(self, other):
        if not isinstance(other, RibbonStructure):
            return NotImplemented
        return (self.signature == other.signature
                and np.array_equal(self.sigma_inf, other.sigma_inf)
                and np.array_equal(self.circle_of_dart, other.circle_of_dart))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        g, n = self.signature.genus, self.signature.n_boundary
        return f"RibbonStructure(g={g}, n={n}, arcs={self.n_arcs}, faces={self.faces()})"

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_sigma0(cls, signature: SurfaceSignature, sigma0, check=True):
        """Build from a face rotation; circles are numbered by boundary cycle."""
        sigma0 = [int(d) for d in sigma0]
        n = len(sigma0)
        if n % 2 or not _is_bijection(sigma0, n):
            raise InvalidPermutation("sigma0 is not a permutation on an even dart set")
        s0_inv = [0] * n
        for d, e in enumerate(sigma0):
            s0_inv[e] = d
        # sigma_inf = sigma0^{-1} o sigma1
        sigma_inf = [s0_inv[d ^ 1] for d in range(n)]
        circle = [0] * n
        for k, cyc in enumerate(perm_orbits(sigma_inf)):
            for d in cyc:
                circle[d] = k
        return cls(signature, sigma_inf, circle, check=check)

    @classmethod
    def from_json(cls, data: dict, check=True) -> "RibbonStructure":
        sig = SurfaceSignature(int(data["genus"]), int(data["boundary"]))
        r = cls(sig, data["sigma_inf"], data["circle_of_dart"], check=check)
        if "arcs" in data and int(data["arcs"]) != r.n_arcs:
            raise InvalidPermutation(
                f"'arcs' is {data['arcs']} but sigma_inf has {r.n_darts} darts")
        return r

    def to_json(self) -> dict:
        return {
            "genus": self.signature.genus,
            "boundary": self.signature.n_boundary,
            "arcs": self.n_arcs,
            "sigma_inf": [int(d) for d in self.sigma_inf],
            "circle_of_dart": [int(c) for c in self.circle_of_dart],
        }

    # -- derived structures ----------------------------------------------

    def restrict(self, arcs) -> tuple["RibbonStructure", list[int]]:
        """Sub-system on ``arcs``; returns it with the old index of each new arc.

        The boundary predecessor of a kept dart is the first kept dart found
        by iterating ``sigma_inf``.
        """
        keep = sorted(set(int(a) for a in arcs))
        new_index = {a: i for i, a in enumerate(keep)}
        darts = [2 * a + o for a in keep for o in (0, 1)]
        kept = set(darts)

        def relabel(d):
            return 2 * new_index[d // 2] + (d & 1)

        sigma_inf = [0] * len(darts)
        circle = [0] * len(darts)
        for d in darts:
            e = int(self.sigma_inf[d])
            while e not in kept:
                e = int(self.sigma_inf[e])
            sigma_inf[relabel(d)] = relabel(e)
            circle[relabel(d)] = int(self.circle_of_dart[d])
        return RibbonStructure(self.signature, sigma_inf, circle), keep

    def relabel(self, arc_perm, reverse=None) -> "RibbonStructure":
        """Rename arc ``k`` to ``arc_perm[k]``, optionally reversing orientations."""
        n = self.n_darts
        if reverse is None:
            reverse = [False] * self.n_arcs
        if not _is_bijection(list(arc_perm), self.n_arcs):
            raise InvalidPermutation("arc_perm is not a permutation of the arcs")
        dmap = [2 * int(arc_perm[d // 2]) + ((d & 1) ^ int(bool(reverse[d // 2])))
                for d in range(n)]
        sigma_inf = [0] * n
        circle = [0] * n
        for d in range(n):
            sigma_inf[dmap[d]] = dmap[int(self.sigma_inf[d])]
            circle[dmap[d]] = int(self.circle_of_dart[d])
        return RibbonStructure(self.signature, sigma_inf, circle)


def _connected(r: RibbonStructure) -> bool:
    n = r.n_darts
    if n == 0:
        return True
    seen = {0}
    queue = deque([0])
    while queue:
        d = queue.popleft()
        for e in (d ^ 1, int(r.sigma_inf[d]), int(r.sigma_inf_inv[d])):
            if e not in seen:
                seen.add(e)
                queue.append(e)
    return len(seen) == n


def validate(r: RibbonStructure) -> ValidationReport:
    """Check the structural invariants and report orbit counts.

    Raises InvalidPermutation or CircleMismatch.
    """
    n = r.n_darts
    s1 = list(r.sigma1)
    if any(s1[d] == d or s1[s1[d]] != d for d in range(n)):
        raise InvalidPermutation("sigma1 must be a fixed-point-free involution")
    s0 = r.sigma0
    # sigma0 o sigma_inf = sigma1
    if any(int(s0[int(r.sigma_inf[d])]) != (d ^ 1) for d in range(n)):
        raise InvalidPermutation("sigma0 o sigma_inf != sigma1")
    nb = r.signature.n_boundary
    circle = r.circle_of_dart
    if n and (circle.min() < 0 or circle.max() >= nb):
        raise CircleMismatch(f"circle labels must lie in [0, {nb})")
    labels = []
    for cyc in perm_orbits(r.sigma_inf):
        lab = {int(circle[d]) for d in cyc}
        if len(lab) != 1:
            raise CircleMismatch(f"sigma_inf orbit {cyc} spans circles {sorted(lab)}")
        labels.append(lab.pop())
    if len(set(labels)) != len(labels):
        raise CircleMismatch("two sigma_inf orbits carry the same circle label")
    faces = perm_orbits(s0)
    return ValidationReport(
        n_darts=n,
        sigma0_orbits=len(faces),
        sigma1_orbits=n // 2,
        sigma_inf_orbits=len(labels),
        sigma0_orbit_sizes=tuple(sorted(len(f) for f in faces)),
        connected=_connected(r),
    )


def is_maximal(r: RibbonStructure) -> bool:
    if r.n_arcs != r.signature.maximal_arcs:
        return False
    return all(len(f) == 3 for f in r.faces())


def classify_complement(r: RibbonStructure) -> ComplementReport:
    """Describe the complementary regions and decide properness.

    Each sigma0-orbit of size m bounds a 2m-gon. The system is proper when the
    regions are genuine polygons (m >= 3), every boundary circle is met, the
    structure is connected and V - E matches the Euler characteristic.
    """
    faces = r.faces()
    regions = [Region(f, 2 * len(f)) for f in faces]
    n_cycles = len(perm_orbits(r.sigma_inf))
    V, E = len(faces), r.n_arcs
    euler_ok = E > 0 and V - E == r.signature.euler_characteristic
    proper = (
        euler_ok
        and n_cycles == r.signature.n_boundary
        and all(len(f) >= 3 for f in faces)
        and _connected(r)
    )
    return ComplementReport(regions=regions, proper=proper, euler_consistent=euler_ok,
                            vertices=V, edges=E, faces=n_cycles)


def find_isomorphism(r1: RibbonStructure, r2: RibbonStructure,
                     weights1=None, weights2=None, tol=1e-6):
    """Dart bijection r1 -> r2 commuting with sigma1 and sigma_inf, or None.

    When weights are given, the induced arc map must also match them within
    ``tol``. Both structures must be connected.
    """
    n = r1.n_darts
    if n != r2.n_darts or r1.signature != r2.signature:
        return None
    if n == 0:
        return []
    for target in range(n):
        phi = {0: target}
        queue = deque([0])
        ok = True
        while queue and ok:
            d = queue.popleft()
            e = phi[d]
            for dd, ee in ((d ^ 1, e ^ 1),
                           (int(r1.sigma_inf[d]), int(r2.sigma_inf[e])),
                           (int(r1.sigma_inf_inv[d]), int(r2.sigma_inf_inv[e]))):
                if dd in phi:
                    if phi[dd] != ee:
                        ok = False
                        break
                else:
                    phi[dd] = ee
                    queue.append(dd)
        if not ok or len(phi) != n or len(set(phi.values())) != n:
            continue
        if weights1 is not None and weights2 is not None:
            if any(abs(weights1[d // 2] - weights2[phi[d] // 2]) > tol for d in range(n)):
                continue
        return [phi[d] for d in range(n)]
    return None
