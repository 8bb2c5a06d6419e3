"""
Trigonometry of right-angled hyperbolic hexagons.

A maximal arc system cuts the surface into right-angled hexagons whose
alternate sides are arcs (lengths ``a``) and boundary segments (lengths
``d``). Everything here is vectorised over numpy arrays.
"""
import numpy as np

from .errors import DegenerateHexagon, NonPositiveLength


def _positive(*arrays, name="length"):
    out = []
    for x in arrays:
        x = np.asarray(x, dtype=float)
        if not np.all(np.isfinite(x)) or np.any(x <= 0):
            raise NonPositiveLength(f"{name} must be finite and > 0")
        out.append(x)
    return out


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def arccosh_guarded(x):
    """arccosh with arguments in [1 - 1e-12, 1) snapped to 1."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 1.0 - 1e-12):
        raise ValueError("arccosh argument below 1")
    x = np.maximum(x, 1.0)
    return _scalar(np.log(x + np.sqrt(x * x - 1.0)))


def s_length(a):
    return _scalar(np.cosh(np.asarray(a, dtype=float) / 2))


def t_length(a):
    """Transverse length T(a) = 2 arcsinh(1 / sinh(a/2)); an involution."""
    (a,) = _positive(a)
    with np.errstate(over="ignore"):
        return _scalar(2.0 * np.arcsinh(1.0 / np.sinh(a / 2)))


def t_length_derivative(a):
    """dT/da, which simplifies to -1 / sinh(a/2)."""
    (a,) = _positive(a)
    return _scalar(-1.0 / np.sinh(a / 2))


def hexagon_boundary_segment(opposite, adjacent1, adjacent2):
    """Length of the boundary side between the feet of two arcs.

    Uses cosh d = (cosh a' cosh a'' + cosh a) / (sinh a' sinh a''), evaluated
    through the half-angle identity
    2 sinh^2(d/2) = (cosh(a' - a'') + cosh a) / (sinh a' sinh a'')
    so that short segments keep full relative precision.
    """
    a, b, c = _positive(opposite, adjacent1, adjacent2)
    half = (np.cosh(b - c) + np.cosh(a)) / (2.0 * np.sinh(b) * np.sinh(c))
    return _scalar(2.0 * np.arcsinh(np.sqrt(half)))


def oriented_width_direct(a_i, a_j, a_k):
    """w(->alpha_i) from the three arc lengths of its hexagon.

    sinh w = (s_j^2 + s_k^2 - s_i^2) / (2 s_j s_k sqrt(s_i^2 - 1)) with
    s = cosh(a/2). Negative when s_i^2 > s_j^2 + s_k^2.
    """
    a_i, a_j, a_k = (np.asarray(x, dtype=float) for x in (a_i, a_j, a_k))
    if np.any(a_i == 0):
        raise DegenerateHexagon("a_i = 0 (s_i = 1)")
    a_i, a_j, a_k = _positive(a_i, a_j, a_k)
    # s^2 = 1 + sinh^2(a/2); keeps s_i^2 - 1 exact for tiny a_i
    hi, hj, hk = np.sinh(a_i / 2), np.sinh(a_j / 2), np.sinh(a_k / 2)
    num = 1.0 + hj * hj + hk * hk - hi * hi
    den = 2.0 * np.cosh(a_j / 2) * np.cosh(a_k / 2) * hi
    return _scalar(np.arcsinh(num / den))


def oriented_width_from_segments(d_near, d_far1, d_far2):
    """Oriented width from the three boundary segments of one hexagon.

    ``d_near`` and ``d_far1`` are the two segments adjacent to the arc (the
    one at its endpoint and the one at its start), ``d_far2`` the segment
    opposite to it: w = (d_near + d_far1 - d_far2) / 2.
    """
    d0, d1, d2 = (np.asarray(x, dtype=float) for x in (d_near, d_far1, d_far2))
    return _scalar(0.5 * (d0 + d1 - d2))
