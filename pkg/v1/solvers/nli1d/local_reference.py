"""
Local interface problem: closed-form solution and a piecewise-linear FEM oracle.

−κᵢ uᵢ″ = f on (a, x_Γ) and (x_Γ, b), u(a) = u(b) = 0, with continuity of u and of
κu′ across x_Γ.
"""

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict

from nli1d.shared_libraries.logging_config import get_logger
from nli1d.shared_libraries.types import Material, Quadratic, SourceTerm
from nli1d.discretization.banded import BandedSymmetricMatrix
from nli1d.discretization.geometry import commensurate_count
from nli1d.discretization.solver import factor, solve

logger = get_logger(__name__)


class LocalSolution(BaseModel):
    """Piecewise quadratic: left on x < x_Γ, right on x >= x_Γ (coefficients c₀, c₁, c₂)."""
    model_config = ConfigDict(frozen=True)

    left: Quadratic
    right: Quadratic
    x_gamma: float

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x < self.x_gamma, np.polynomial.polynomial.polyval(x, self.left),
                        np.polynomial.polynomial.polyval(x, self.right))

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x < self.x_gamma, self.left[1] + 2.0 * self.left[2] * x,
                        self.right[1] + 2.0 * self.right[2] * x)


def local_exact(material: Material, f: SourceTerm, a: float, x_gamma: float, b: float) -> LocalSolution:
    """Solve the 4×4 system for the linear coefficients; the quadratic ones are −fᵢ/(2κᵢ)."""
    k1, k2 = material.kappa1, material.kappa2
    alpha2 = -f.f1 / (2.0 * k1)
    beta2 = -f.f2 / (2.0 * k2)
    xg = x_gamma

    # unknowns: alpha0, alpha1, beta0, beta1
    system = np.array([
        [1.0, a, 0.0, 0.0],
        [0.0, 0.0, 1.0, b],
        [1.0, xg, -1.0, -xg],
        [0.0, k1, 0.0, -k2],
    ])
    rhs = np.array([
        -alpha2 * a * a,
        -beta2 * b * b,
        (beta2 - alpha2) * xg * xg,
        2.0 * xg * (k2 * beta2 - k1 * alpha2),
    ])
    alpha0, alpha1, beta0, beta1 = np.linalg.solve(system, rhs)
    return LocalSolution(
        left=(float(alpha0), float(alpha1), alpha2),
        right=(float(beta0), float(beta1), beta2),
        x_gamma=xg,
    )


@dataclass(frozen=True)
class LocalFEMSolution:
    """Nodal values of the P1 solution; x_Γ is a single ordinary node."""

    nodes: np.ndarray
    values: np.ndarray


def local_fem_solve(material: Material, f: SourceTerm, a: float, x_gamma: float, b: float, h: float) -> LocalFEMSolution:
    """Standard P1 FEM; flux continuity is natural at the interface node."""
    n_left = commensurate_count(x_gamma - a, h, "x_gamma - a")
    n_right = commensurate_count(b - x_gamma, h, "b - x_gamma")
    nodes = np.concatenate([np.linspace(a, x_gamma, n_left + 1), np.linspace(x_gamma, b, n_right + 1)[1:]])
    n_el = n_left + n_right

    kappa = np.where(np.arange(n_el) < n_left, material.kappa1, material.kappa2)
    source = np.where(np.arange(n_el) < n_left, f.f1, f.f2)
    lengths = np.diff(nodes)

    stiff = kappa / lengths
    diag = np.zeros(n_el + 1)
    diag[:-1] += stiff
    diag[1:] += stiff
    load = np.zeros(n_el + 1)
    load[:-1] += 0.5 * source * lengths
    load[1:] += 0.5 * source * lengths

    # Homogeneous Dirichlet at a and b: interior nodes only.
    band = np.zeros((2, n_el - 1))
    band[0] = diag[1:-1]
    band[1, :-1] = -stiff[1:-1]
    interior = solve(factor(BandedSymmetricMatrix(band)), load[1:-1])

    values = np.zeros(n_el + 1)
    values[1:-1] = interior
    logger.debug(f"Local FEM solve: h={h!r}, elements={n_el}")
    return LocalFEMSolution(nodes=nodes, values=values)
