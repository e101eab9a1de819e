"""
Solve pipeline: mesh → kernel → assembly → constraint elimination → banded Cholesky.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from nli1d.shared_libraries.logging_config import get_logger, log_function_call
from nli1d.shared_libraries.types import ConstraintData, RunConfig, SourceTerm
from nli1d.discretization.assembly import apply_constraints, assemble_load, assemble_stiffness
from nli1d.discretization.banded import BandedSymmetricMatrix
from nli1d.discretization.geometry import Mesh1D, build_mesh
from nli1d.discretization.kernels import Kernel, make_kernel

logger = get_logger(__name__)


@dataclass(frozen=True)
class NonlocalSolution:
    """Coefficients of u_h on every DOF of the mesh, both interface DOFs included."""

    mesh: Mesh1D
    coefficients: np.ndarray
    kernel: Kernel
    stiffness: Optional[BandedSymmetricMatrix] = field(default=None, repr=False)

    def evaluate(self, x) -> np.ndarray:
        """Piecewise-linear u_h at element-interior points."""
        x = np.asarray(x, dtype=float)
        elements = self.mesh.element_of(x)
        t = (x - self.mesh.nodes[elements]) / self.mesh.h
        dofs = self.mesh.element_dofs[elements]
        return self.coefficients[dofs[..., 0]] * (1.0 - t) + self.coefficients[dofs[..., 1]] * t


@log_function_call()
def solve_nonlocal(mesh: Mesh1D, kernel: Kernel, source: SourceTerm, constraints: ConstraintData,
                   keep_matrix: bool = False) -> NonlocalSolution:
    """Assemble, eliminate the volume constraints and solve."""
    stiffness = assemble_stiffness(mesh, kernel)
    load = assemble_load(mesh, source)
    system = apply_constraints(stiffness, load, mesh, constraints)
    coefficients = system.solve()
    return NonlocalSolution(
        mesh=mesh,
        coefficients=coefficients,
        kernel=kernel,
        stiffness=stiffness if keep_matrix else None,
    )


def solve_config(config: RunConfig, keep_matrix: bool = False) -> NonlocalSolution:
    """Solve the problem described by a run configuration at its mesh size h."""
    layout = config.layout()
    mesh = build_mesh(layout, config.h)
    kernel = make_kernel(config.kernel, config.material(), config.delta1, config.delta2, layout)
    logger.info(
        f"Solving kernel={config.kernel.value} kappa=({config.kappa1!r}, {config.kappa2!r}) "
        f"delta=({config.delta1!r}, {config.delta2!r}) h={config.h!r}"
    )
    return solve_nonlocal(mesh, kernel, config.source(), config.constraints(), keep_matrix=keep_matrix)
