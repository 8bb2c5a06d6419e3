"""
Flat Jenkins-Strebel surfaces glued from tiles over a weighted ribbon graph.

Each dart ``e`` of arc ``alpha`` gets a half-infinite strip
``[0, w(alpha)] x [0, inf]``. The bottom of ``T_e`` is glued to the bottom of
``T_{sigma1 e}`` reversing ``u``; the right side of ``T_e`` is glued to the
left side of ``T_{sigma_inf e}``. Bottom segments form the critical graph G,
with vertices the sigma0-orbits; strips over one sigma_inf-orbit form a
cylinder around one point at infinity.

Weights may be Fractions, in which case circumferences are exact.
"""
from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from .errors import ImproperSystem
from .ribbon import RibbonStructure, classify_complement, perm_orbits


@dataclass(frozen=True)
class WeightedRibbonGraph:
    ribbon: RibbonStructure
    weights: tuple

    def __init__(self, ribbon, weights):
        weights = tuple(weights)
        if len(weights) != ribbon.n_arcs:
            raise ValueError(f"expected {ribbon.n_arcs} weights, got {len(weights)}")
        if any(w < 0 for w in weights):
            raise ImproperSystem("weights must be nonnegative")
        object.__setattr__(self, "ribbon", ribbon)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_json(cls, data):
        return cls(RibbonStructure.from_json(data), data["weights"])


@dataclass(frozen=True)
class Tile:
    dart: int
    arc: int
    width: object


@dataclass(frozen=True)
class CylinderData:
    circle: int
    circumference: object
    boundary_word: tuple[int, ...]  # darts in sigma_inf order, left to right

    @property
    def residue(self) -> float:
        return quadratic_residue(float(self.circumference))


@dataclass(frozen=True)
class GraphEdge:
    arc: int
    start: int   # vertex at u = 0 of tile 2*arc
    end: int     # vertex at u = w of tile 2*arc
    length: object


@dataclass(frozen=True)
class FlatTileComplex:
    ribbon: RibbonStructure           # support only
    support: tuple[int, ...]          # original arc index of each arc
    tiles: tuple[Tile, ...]
    vertices: tuple[tuple[int, ...], ...]   # sigma0-orbits
    edges: tuple[GraphEdge, ...]
    cylinders: tuple[CylinderData, ...]
    bottom_gluing: tuple[int, ...]    # dart -> dart glued along the bottom (u -> w - u)
    side_gluing: tuple[int, ...]      # dart -> dart whose left side meets its right side

    @property
    def genus(self) -> int:
        return self.ribbon.signature.genus

    def euler_characteristic(self) -> int:
        """Closed surface: V (graph vertices) - E + F (points at infinity)."""
        return len(self.vertices) - len(self.edges) + len(self.cylinders)

    def vertex_of(self, dart: int) -> int:
        for i, v in enumerate(self.vertices):
            if dart in v:
                return i
        raise KeyError(dart)

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "boundary": self.ribbon.signature.n_boundary,
            "support": list(self.support),
            "tiles": [{"dart": t.dart, "arc": self.support[t.arc], "width": float(t.width)}
                      for t in self.tiles],
            "vertices": [{"darts": list(v), "valence": len(v), "zero_order": len(v) - 2}
                         for v in self.vertices],
            "edges": [{"arc": self.support[e.arc], "start": e.start, "end": e.end,
                       "length": float(e.length)} for e in self.edges],
            "cylinders": [{"circle": c.circle, "circumference": float(c.circumference),
                           "residue": c.residue, "boundary_word": list(c.boundary_word)}
                          for c in self.cylinders],
            "bottom_gluing": list(self.bottom_gluing),
            "side_gluing": list(self.side_gluing),
        }


def build_flat_surface(g: WeightedRibbonGraph) -> FlatTileComplex:
    """Glue the tiles; zero-weight arcs are dropped first.

    Raises ImproperSystem if the positive-weight arcs do not quasi-fill.
    """
    support = [i for i, w in enumerate(g.weights) if w > 0]
    if not support:
        raise ImproperSystem("all weights are zero")
    ribbon, _ = g.ribbon.restrict(support)
    weights = [g.weights[i] for i in support]
    if not classify_complement(ribbon).proper:
        raise ImproperSystem("weighted arc system does not quasi-fill the surface")
    n = ribbon.n_darts
    tiles = tuple(Tile(d, d // 2, weights[d // 2]) for d in range(n))
    vertices = tuple(perm_orbits(ribbon.sigma0))
    vertex_index = {}
    for i, v in enumerate(vertices):
        for d in v:
            vertex_index[d] = i
    # u = 0 of tile e sits at the vertex of e, u = w at the vertex of sigma1(e)
    edges = tuple(GraphEdge(k, vertex_index[2 * k], vertex_index[2 * k + 1], weights[k])
                  for k in range(ribbon.n_arcs))
    cylinders = []
    for cyc in perm_orbits(ribbon.sigma_inf):
        total = sum((weights[d // 2] for d in cyc[1:]), weights[cyc[0] // 2])
        cylinders.append(CylinderData(int(ribbon.circle_of_dart[cyc[0]]), total, cyc))
    cylinders.sort(key=lambda c: c.circle)
    return FlatTileComplex(
        ribbon=ribbon,
        support=tuple(support),
        tiles=tiles,
        vertices=vertices,
        edges=edges,
        cylinders=tuple(cylinders),
        bottom_gluing=tuple(d ^ 1 for d in range(n)),
        side_gluing=tuple(int(e) for e in ribbon.sigma_inf),
    )


def zero_orders(c: FlatTileComplex) -> list[tuple[int, int]]:
    """(valence k, zero order k - 2) for each vertex of the critical graph."""
    return [(len(v), len(v) - 2) for v in c.vertices]


def degree_identity(c: FlatTileComplex) -> tuple[int, int]:
    """(sum of zero orders, 4g - 4 + 2 #cylinders); equal for a valid complex."""
    lhs = sum(order for _, order in zero_orders(c))
    return lhs, 4 * c.genus - 4 + 2 * len(c.cylinders)


def quadratic_residue(p: float) -> float:
    """Coefficient of du^2/u^2 at a cylinder of circumference p: -(p / 2 pi)^2."""
    return -((p / (2 * math.pi)) ** 2)


def quadratic_residues(c: FlatTileComplex) -> list[float]:
    return [quadratic_residue(float(cyl.circumference)) for cyl in c.cylinders]


def horizontal_loops(c: FlatTileComplex, height: float) -> list[tuple[int, ...]]:
    """Decompose the level set y = height into closed loops of tiles.

    For height > 0 the horizontal segments in the tiles join through the side
    gluing into one loop per cylinder; height = 0 is the critical graph.
    """
    if height <= 0:
        raise ValueError("height must be > 0 (y = 0 is the critical graph)")
    return perm_orbits(c.side_gluing)


def render_svg(c: FlatTileComplex, truncation_height: float = 1.0,
               scale: float = 60.0, margin: float = 20.0) -> str:
    """SVG net: one strip of tiles per cylinder, truncated at finite height."""
    widths = [float(t.width) for t in c.tiles]
    row_h = truncation_height * scale
    row_gap = 40.0
    total_w = max(sum(widths[d] for d in cyl.boundary_word) for cyl in c.cylinders)
    W = 2 * margin + total_w * scale
    H = 2 * margin + len(c.cylinders) * (row_h + row_gap)
    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg",
                     width=f"{W:.2f}", height=f"{H:.2f}",
                     viewBox=f"0 0 {W:.2f} {H:.2f}")
    ET.SubElement(svg, "title").text = "flat tile net"
    for row, cyl in enumerate(c.cylinders):
        y_top = margin + row * (row_h + row_gap)
        y_bottom = y_top + row_h
        group = ET.SubElement(svg, "g", id=f"cylinder-{cyl.circle}")
        label = ET.SubElement(group, "text", x=f"{margin:.2f}", y=f"{y_top - 4:.2f}",
                              **{"font-size": "10"})
        label.text = (f"circle {cyl.circle}: p = {float(cyl.circumference):.6g}, "
                      f"residue = {cyl.residue:.6g}")
        x = margin
        for d in cyl.boundary_word:
            w = widths[d] * scale
            arc = c.support[d // 2]
            ET.SubElement(group, "rect", x=f"{x:.2f}", y=f"{y_top:.2f}",
                          width=f"{w:.2f}", height=f"{row_h:.2f}",
                          fill="#eef3fb", stroke="#555", **{"stroke-width": "0.8",
                                                          "data-dart": str(d)})
            # critical graph edge at y = 0 (drawn at the strip bottom)
            ET.SubElement(group, "line", x1=f"{x:.2f}", y1=f"{y_bottom:.2f}",
                          x2=f"{x + w:.2f}", y2=f"{y_bottom:.2f}", stroke="#c0392b",
                          **{"stroke-width": "2.5", "class": "critical"})
            sign = "+" if d % 2 == 0 else "-"
            text = ET.SubElement(group, "text", x=f"{x + w / 2:.2f}",
                                 y=f"{y_bottom + 12:.2f}",
                                 **{"font-size": "10", "text-anchor": "middle",
                                    "class": "gluing",
                                    "data-glued-to": str(c.bottom_gluing[d])})
            text.text = f"{arc}{sign}"
            x += w
    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode")
