"""Gauss–Legendre rules on elements and on mesh-split interaction balls."""

from typing import Iterable, Tuple

import numpy as np

from nli1d.shared_libraries import constants

_XI, _W = np.polynomial.legendre.leggauss(constants.GAUSS_POINTS)

# Reference rule on [0, 1]
GAUSS_T = 0.5 * (_XI + 1.0)
GAUSS_W = 0.5 * _W


def gauss_on_segments(lo: np.ndarray, hi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """3-point rule on each segment [lo_k, hi_k]; arrays of shape (segments, 3)."""
    lo = np.asarray(lo, dtype=float)[:, None]
    length = np.asarray(hi, dtype=float)[:, None] - lo
    return lo + length * GAUSS_T, length * GAUSS_W


def element_rule(nodes: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss points and weights of every element of a node array, shape (elements, 3)."""
    return gauss_on_segments(nodes[:-1], nodes[1:])


def inner_rule(mesh, center: float, radius: float, breaks: Iterable[float] = ()) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Rule for ∫ g(y) dy over [center − radius, center + radius] clipped to the mesh.

    The interval is split at every interior node and at the extra break points, then
    each piece gets the 3-point rule. Returns flat arrays (points, weights, elements),
    sorted by coordinate, where elements holds the mesh element of each point.
    """
    nodes = mesh.nodes
    lo = max(center - radius, nodes[0])
    hi = min(center + radius, nodes[-1])
    if hi <= lo:
        empty = np.empty(0)
        return empty, empty, np.empty(0, dtype=np.intp)

    first = np.searchsorted(nodes, lo, side="right")
    last = np.searchsorted(nodes, hi, side="left")
    cuts = [np.array([lo]), nodes[first:last], np.array([hi])]
    extra = [x for x in breaks if lo < x < hi]
    if extra:
        cuts.append(np.asarray(extra, dtype=float))
        cuts = np.unique(np.concatenate(cuts))
    else:
        cuts = np.concatenate(cuts)

    seg_lo, seg_hi = cuts[:-1], cuts[1:]
    keep = seg_hi > seg_lo
    seg_lo, seg_hi = seg_lo[keep], seg_hi[keep]

    points, weights = gauss_on_segments(seg_lo, seg_hi)
    elements = mesh.element_of(0.5 * (seg_lo + seg_hi))
    return points.ravel(), weights.ravel(), np.repeat(elements, constants.GAUSS_POINTS)
