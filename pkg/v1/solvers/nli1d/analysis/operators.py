"""
The nonlocal diffusion operator L u(x) = 2∫_{B(x,δ)} (u(y) − u(x)) C dy on smooth
functions, and the moment conditions behind its local limit κΔu.

Test functions take one array per coordinate: u(x) in 1D, u(x, y) in 2D.
"""

import math
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from nli1d.shared_libraries import constants
from nli1d.shared_libraries.error_handling import QuadratureDomainClippedError, ValidationError
from nli1d.discretization.quadrature import gauss_on_segments


def local_limit_amplitude(kappa: float, delta: float, dim: int) -> float:
    """(3/2)κ/δ³ in 1D, 4κ/(πδ⁴) in 2D."""
    if dim == 1:
        return 1.5 * kappa / delta ** 3
    if dim == 2:
        return 4.0 * kappa / (math.pi * delta ** 4)
    raise ValidationError(f"dimension must be 1 or 2, got {dim!r}")


def as_point(x, dim: int) -> tuple:
    point = (float(x),) if dim == 1 else tuple(float(c) for c in x)
    if len(point) != dim:
        raise ValidationError(f"expected a point with {dim} coordinates, got {x!r}")
    return point


def _check_inside(point: tuple, delta: float, domain: Optional[Sequence]) -> None:
    if domain is None:
        return
    boxes = [domain] if len(point) == 1 else list(domain)
    for c, (lo, hi) in zip(point, boxes):
        if c - delta < lo or c + delta > hi:
            raise QuadratureDomainClippedError(
                f"ball of radius {delta!r} around {point} leaves the domain {domain}"
            )


def nonlocal_operator_apply(u: Callable, x, amplitude: float, delta: float, dim: int,
                            domain: Optional[Sequence] = None, breakpoints: Iterable[float] = ()) -> float:
    """
    2∫_{B(x,δ)} (u(y) − u(x))·C dy.

    1D: 32 equal subintervals × 3 Gauss points, additionally split at breakpoints.
    2D: polar rule, 32 Gauss points in ρ times 64 equispaced angles.
    """
    point = as_point(x, dim)
    _check_inside(point, delta, domain)
    center_value = float(u(*point))

    if dim == 1:
        x0 = point[0]
        edges = np.linspace(x0 - delta, x0 + delta, constants.OPERATOR_SUBINTERVALS_1D + 1)
        extra = [b for b in breakpoints if x0 - delta < b < x0 + delta]
        if extra:
            edges = np.unique(np.concatenate([edges, extra]))
        y, w = gauss_on_segments(edges[:-1], edges[1:])
        integral = float(np.sum(w * (u(y) - center_value)))
        return 2.0 * amplitude * integral

    xi, wi = np.polynomial.legendre.leggauss(constants.OPERATOR_RADIAL_POINTS_2D)
    rho = 0.5 * delta * (xi + 1.0)
    w_rho = 0.5 * delta * wi
    n_theta = constants.OPERATOR_ANGULAR_POINTS_2D
    theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
    yx = point[0] + rho[:, None] * np.cos(theta)[None, :]
    yy = point[1] + rho[:, None] * np.sin(theta)[None, :]
    weights = (w_rho * rho)[:, None] * (2.0 * math.pi / n_theta)
    integral = float(np.sum(weights * (u(yx, yy) - center_value)))
    return 2.0 * amplitude * integral


def moment_condition(kappa: float, delta: float) -> float:
    """π·C̃·δ^β·∫₀^δ ρ³ dρ with C̃ = 4κ/π and β = −4; equals κ."""
    ctilde = 4.0 * kappa / math.pi
    beta = -4.0
    rho, w = gauss_on_segments(np.array([0.0]), np.array([delta]))
    return math.pi * ctilde * delta ** beta * float(np.sum(w * rho ** 3))


def second_moment_remainder(kappa: float, delta: float) -> float:
    """2π·C̃·δ^β·δ³·∫₀^δ ρ dρ = 4κδ; vanishes linearly in δ."""
    ctilde = 4.0 * kappa / math.pi
    beta = -4.0
    rho, w = gauss_on_segments(np.array([0.0]), np.array([delta]))
    return 2.0 * math.pi * ctilde * delta ** beta * delta ** 3 * float(np.sum(w * rho))
