"""
Domain layout, interaction regions and the interface-fitted mesh with a double node.

The global domain [a − δ₁, b + δ₂] is cut into Γ₁, Ω₁, Ω₂ and Γ₂. The mesh is uniform
with every region boundary on a node, and the interface node x_Γ carries two degrees of
freedom: the left one belongs to the element left of x_Γ only, the right one to the
element right of x_Γ only. Global DOF order is left to right with the left interface
DOF immediately before the right one.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from nli1d.shared_libraries import constants
from nli1d.shared_libraries.error_handling import NonCommensurateError, OutOfDomainError, ValidationError
from nli1d.shared_libraries.logging_config import get_logger
from nli1d.shared_libraries.types import DomainLayout, Interval, Region, RegionSet, Side

logger = get_logger(__name__)

_REGION_ORDER = (Region.GAMMA1, Region.OMEGA1, Region.OMEGA2, Region.GAMMA2)


@dataclass(frozen=True)
class Mesh1D:
    """Uniform interface-fitted mesh of [a − δ₁, b + δ₂]."""

    layout: DomainLayout
    h: float
    nodes: np.ndarray
    interface_node: int
    region_counts: tuple  # elements in Γ₁, Ω₁, Ω₂, Γ₂
    element_regions: tuple = field(repr=False)
    element_sides: np.ndarray = field(repr=False)
    element_dofs: np.ndarray = field(repr=False)

    @property
    def element_count(self) -> int:
        return len(self.nodes) - 1

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def dof_count(self) -> int:
        return len(self.nodes) + 1

    @property
    def interface_dof_left(self) -> int:
        return self.interface_node

    @property
    def interface_dof_right(self) -> int:
        return self.interface_node + 1

    @property
    def dof_coordinates(self) -> np.ndarray:
        """Coordinates of all DOFs; x_Γ appears twice."""
        return np.insert(self.nodes, self.interface_node, self.nodes[self.interface_node])

    @property
    def x0(self) -> float:
        return float(self.nodes[0])

    def element_of(self, x) -> np.ndarray:
        """Index of the element containing each point; points on a node go to the element on the right."""
        index = np.floor((np.asarray(x, dtype=float) - self.x0) / self.h).astype(np.intp)
        return np.clip(index, 0, self.element_count - 1)

    def constrained_dofs(self) -> np.ndarray:
        """DOFs on the closed constraint regions Γ₁ and Γ₂, in ascending order."""
        n_gamma1, _, _, n_gamma2 = self.region_counts
        left = np.arange(0, n_gamma1 + 1)
        right = np.arange(self.dof_count - n_gamma2 - 1, self.dof_count)
        return np.concatenate([left, right])

    def free_dofs(self) -> np.ndarray:
        n_gamma1, _, _, n_gamma2 = self.region_counts
        return np.arange(n_gamma1 + 1, self.dof_count - n_gamma2 - 1)


def commensurate_count(length: float, h: float, name: str) -> int:
    """Number of elements of size h in a segment, or NonCommensurateError if it is not integral."""
    ratio = length / h
    count = int(round(ratio))
    if count < 1 or abs(ratio - count) > constants.COMMENSURATE_RTOL * max(ratio, 1.0):
        raise NonCommensurateError(
            f"{name}/h = {ratio!r} is not a positive integer (length={length!r}, h={h!r})",
            user_message=f"{name} must be an integral multiple of the mesh size h.",
        )
    return count


def check_commensurate(layout: DomainLayout, h: float) -> tuple:
    """Element counts of Γ₁, Ω₁, Ω₂, Γ₂ for mesh size h."""
    if not h > 0:
        raise ValidationError(f"mesh size must be positive, got h={h!r}")
    return (
        commensurate_count(layout.delta1, h, "delta1"),
        commensurate_count(layout.x_gamma - layout.a, h, "x_gamma - a"),
        commensurate_count(layout.b - layout.x_gamma, h, "b - x_gamma"),
        commensurate_count(layout.delta2, h, "delta2"),
    )


def build_mesh(layout: DomainLayout, h: float) -> Mesh1D:
    """Build the interface-fitted mesh; raises NonCommensurateError when h does not divide every length."""
    counts = check_commensurate(layout, h)
    breaks = (layout.left_end, layout.a, layout.x_gamma, layout.b, layout.right_end)

    # Each region is meshed separately so its end points are nodes exactly.
    pieces = [np.linspace(breaks[k], breaks[k + 1], counts[k] + 1) for k in range(4)]
    nodes = np.concatenate([pieces[0]] + [piece[1:] for piece in pieces[1:]])

    gaps = np.diff(nodes)
    roundoff = 8 * np.finfo(float).eps * np.max(np.abs(nodes))
    if not np.allclose(gaps, h, rtol=constants.NODE_SPACING_RTOL, atol=roundoff):
        raise NonCommensurateError(f"node spacing deviates from h={h!r} by {np.max(np.abs(gaps - h))!r}")

    element_regions = tuple(region for region, count in zip(_REGION_ORDER, counts) for _ in range(count))
    element_sides = np.array([int(region.side) for region in element_regions], dtype=np.intp)
    interface_node = counts[0] + counts[1]

    first_dof = np.arange(len(nodes) - 1) + (np.arange(len(nodes) - 1) >= interface_node)
    element_dofs = np.stack([first_dof, first_dof + 1], axis=1)

    mesh = Mesh1D(
        layout=layout,
        h=h,
        nodes=nodes,
        interface_node=interface_node,
        region_counts=counts,
        element_regions=element_regions,
        element_sides=element_sides,
        element_dofs=element_dofs,
    )
    logger.debug(
        f"Built mesh: h={h!r}, elements={mesh.element_count}, nodes={mesh.node_count}, dofs={mesh.dof_count}"
    )
    return mesh


def classify(layout: DomainLayout, x: float, side: Optional[Side] = None) -> Region:
    """
    Region of a point: Γ₁ and Γ₂ are closed, Ω₁ and Ω₂ open.

    x = x_Γ belongs to neither open subdomain; the caller must say which side it means.
    """
    if not layout.left_end <= x <= layout.right_end:
        raise OutOfDomainError(f"x={x!r} outside [{layout.left_end!r}, {layout.right_end!r}]")
    if x <= layout.a:
        return Region.GAMMA1
    if x < layout.x_gamma:
        return Region.OMEGA1
    if x == layout.x_gamma:
        if side is None:
            raise ValidationError("x equals the interface coordinate; a side flag is required")
        return Region.OMEGA1 if Side(side) == Side.LEFT else Region.OMEGA2
    if x < layout.b:
        return Region.OMEGA2
    return Region.GAMMA2


def interaction_regions(layout: DomainLayout) -> RegionSet:
    """Interaction intervals around x_Γ, each intersected with its host subdomain."""
    xg = layout.x_gamma
    reach = layout.max_delta
    return RegionSet(
        gamma12=Interval(lo=xg, hi=min(xg + layout.delta1, layout.b)),
        gamma21=Interval(lo=max(xg - layout.delta2, layout.a), hi=xg),
        under_gamma12=Interval(lo=xg, hi=min(xg + layout.delta2, layout.b)),
        under_gamma21=Interval(lo=max(xg - layout.delta1, layout.a), hi=xg),
        gamma_star=Interval(lo=max(xg - reach, layout.a), hi=min(xg + reach, layout.b)),
    )
