"""L² errors, interface jumps and observed convergence orders."""

import math
from typing import Callable, List, Optional, Sequence

import numpy as np

from nli1d.discretization.quadrature import GAUSS_T, element_rule
from nli1d.pipeline import NonlocalSolution


def element_values(solution: NonlocalSolution) -> np.ndarray:
    """u_h at the Gauss points of every element, shape (elements, 3); the interface DOF follows the element."""
    coeffs = solution.coefficients[solution.mesh.element_dofs]
    return coeffs[:, :1] * (1.0 - GAUSS_T) + coeffs[:, 1:] * GAUSS_T


def l2_error(solution: NonlocalSolution, mesh, reference: Callable[[np.ndarray], np.ndarray]) -> float:
    """‖u_h − reference‖ over Ω ∪ Γ̃, 3 Gauss points per element; reference must accept arrays."""
    points, weights = element_rule(mesh.nodes)
    diff = element_values(solution) - reference(points)
    return math.sqrt(float(np.sum(weights * diff * diff)))


def l2_difference(coarse: NonlocalSolution, fine: NonlocalSolution) -> float:
    """‖u_coarse − u_fine‖ integrated on the fine mesh; coarse nodes must be fine nodes."""
    if coarse is fine:
        return 0.0
    points, weights = element_rule(fine.mesh.nodes)
    diff = coarse.evaluate(points) - element_values(fine)
    return math.sqrt(float(np.sum(weights * diff * diff)))


def l2_error_nodal(nodes: np.ndarray, values: np.ndarray, reference: Callable[[np.ndarray], np.ndarray]) -> float:
    """‖P1 interpolant of (nodes, values) − reference‖ over [nodes[0], nodes[-1]]."""
    points, weights = element_rule(nodes)
    u = values[:-1, None] * (1.0 - GAUSS_T) + values[1:, None] * GAUSS_T
    diff = u - reference(points)
    return math.sqrt(float(np.sum(weights * diff * diff)))


def jump_magnitude(solution: NonlocalSolution, mesh=None) -> float:
    """|u(left interface DOF) − u(right interface DOF)|."""
    mesh = mesh or solution.mesh
    return abs(float(solution.coefficients[mesh.interface_dof_left] - solution.coefficients[mesh.interface_dof_right]))


def observed_order(previous: Optional[float], current: Optional[float]) -> Optional[float]:
    """log₂(previous / current); absent when either value is missing or not positive."""
    if previous is None or current is None or previous <= 0.0 or current <= 0.0:
        return None
    return math.log2(previous / current)


def observed_orders(quantities: Sequence[Optional[float]]) -> List[Optional[float]]:
    """Orders of a halving sequence; the first row carries none."""
    orders: List[Optional[float]] = [None]
    for previous, current in zip(quantities, quantities[1:]):
        orders.append(observed_order(previous, current))
    return orders[: len(quantities)]
