"""
Nonlocal stiffness matrix, load vector and volume-constraint elimination.

A_ij = ∫∫ γ(x, y)(φ_j(x) − φ_j(y))(φ_i(x) − φ_i(y)) dy dx over (Ω ∪ Γ̃)², integrated
with 3 Gauss points per element in x and, for every outer point, 3 Gauss points per piece
of the interaction ball split at the mesh nodes. Piecewise-linear bases and a
piecewise-constant kernel make the inner rule exact.

The matrix is stored as a LAPACK lower band: band[i − j, j] = A_ij for 0 <= i − j <= u.
"""

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from nli1d.shared_libraries import constants
from nli1d.shared_libraries.error_handling import (
    AssemblyError,
    DimensionMismatchError,
    NotPositiveDefiniteError,
    SingularSystemError,
)
from nli1d.shared_libraries.logging_config import get_logger, log_function_call
from nli1d.shared_libraries.types import ConstraintData, SourceTerm
from nli1d.discretization.banded import BandedSymmetricMatrix
from nli1d.discretization.geometry import Mesh1D
from nli1d.discretization.kernels import Kernel
from nli1d.discretization.quadrature import GAUSS_T, GAUSS_W, inner_rule
from nli1d.discretization.solver import factor, solve

logger = get_logger(__name__)


@dataclass(frozen=True)
class ConstrainedSystem:
    """Reduced system on the free DOFs plus what is needed to rebuild the full vector."""

    matrix: BandedSymmetricMatrix
    rhs: np.ndarray
    free_dofs: np.ndarray
    constrained_dofs: np.ndarray
    constrained_values: np.ndarray
    dof_count: int

    def expand(self, free_values: np.ndarray) -> np.ndarray:
        full = np.empty(self.dof_count)
        full[self.constrained_dofs] = self.constrained_values
        full[self.free_dofs] = free_values
        return full

    def solve(self) -> np.ndarray:
        """Factor, solve and return the full DOF vector."""
        try:
            chol = factor(self.matrix)
        except NotPositiveDefiniteError as e:
            raise SingularSystemError(f"constrained system is not positive definite: {e}") from e
        return self.expand(solve(chol, self.rhs))


def required_half_bandwidth(mesh: Mesh1D) -> int:
    return int(np.ceil(mesh.layout.max_delta / mesh.h - constants.COMMENSURATE_RTOL)) + 2


def _scatter_lower(band: np.ndarray, rows: np.ndarray, cols: np.ndarray, values: np.ndarray) -> None:
    offsets = rows - cols
    if offsets.size and (offsets.min() < 0 or offsets.max() >= band.shape[0]):
        raise AssemblyError(
            f"entry offset {int(offsets.max())} outside the reserved half-bandwidth {band.shape[0] - 1}"
        )
    np.add.at(band, (offsets, cols), values)


@log_function_call()
def assemble_stiffness(mesh: Mesh1D, kernel: Kernel) -> BandedSymmetricMatrix:
    """Nonlocal stiffness matrix over all DOFs, constrained ones included."""
    if kernel.layout != mesh.layout:
        raise DimensionMismatchError("kernel and mesh were built from different layouts")

    n = mesh.dof_count
    half_bandwidth = required_half_bandwidth(mesh)
    band = np.zeros((half_bandwidth + 1, n))

    amplitudes = kernel.amplitudes()
    horizons = kernel.horizons()
    sides = mesh.element_sides
    dofs = mesh.element_dofs
    nodes = mesh.nodes
    h = mesh.h
    shape_x = np.stack([1.0 - GAUSS_T, GAUSS_T], axis=1)  # (gauss, local dof)

    for e in range(mesh.element_count):
        p = sides[e]
        d0 = dofs[e, 0]
        radius = horizons[p - 1]
        rows, cols, vals = [], [], []

        for k in range(len(GAUSS_T)):
            x = nodes[e] + h * GAUSS_T[k]
            wx = h * GAUSS_W[k]
            nx = shape_x[k]

            points, weights, elements = inner_rule(mesh, x, radius)
            w = wx * weights * amplitudes[p - 1, sides[elements] - 1]
            s = (points - nodes[elements]) / h
            ny0, ny1 = 1.0 - s, s

            # Per inner element sums; elements are sorted so the offsets are contiguous.
            first = elements[0]
            local = elements - first
            s0 = np.bincount(local, w * ny0)
            s1 = np.bincount(local, w * ny1)
            m00 = np.bincount(local, w * ny0 * ny0)
            m01 = np.bincount(local, w * ny0 * ny1)
            m11 = np.bincount(local, w * ny1 * ny1)
            q0 = dofs[first: first + len(s0), 0]
            q1 = q0 + 1
            total = w.sum()

            # φ_i(x)φ_j(x)
            rows.append(np.array([d0, d0 + 1, d0 + 1]))
            cols.append(np.array([d0, d0 + 1, d0]))
            vals.append(total * np.array([nx[0] * nx[0], nx[1] * nx[1], nx[0] * nx[1]]))

            # φ_i(y)φ_j(y)
            rows.extend([q0, q1, q1])
            cols.extend([q0, q1, q0])
            vals.extend([m00, m11, m01])

            # −φ_i(x)φ_j(y) − φ_i(y)φ_j(x); a coinciding pair lands twice on the diagonal
            for a in (0, 1):
                for qb, sb in ((q0, s0), (q1, s1)):
                    da = d0 + a
                    rows.append(np.maximum(qb, da))
                    cols.append(np.minimum(qb, da))
                    vals.append(-nx[a] * sb * np.where(qb == da, 2.0, 1.0))

        _scatter_lower(band, np.concatenate(rows), np.concatenate(cols), np.concatenate(vals))

    logger.info(f"Assembled stiffness: dim={n}, half_bandwidth={half_bandwidth}")
    return BandedSymmetricMatrix(band)


def assemble_load(mesh: Mesh1D, f: SourceTerm) -> np.ndarray:
    """f_i = ∫_Ω f φ_i dx; constraint-region elements contribute nothing."""
    load = np.zeros(mesh.dof_count)
    shape = np.stack([1.0 - GAUSS_T, GAUSS_T], axis=1)
    local = mesh.h * (GAUSS_W @ shape)  # ∫ N_a over one element
    for e, region in enumerate(mesh.element_regions):
        if region.constrained:
            continue
        value = f.value(region.side)
        load[mesh.element_dofs[e]] += value * local
    return load


def constraint_values(mesh: Mesh1D, g: ConstraintData) -> np.ndarray:
    """g1 on Γ₁ DOFs, g2 on Γ₂ DOFs, in the order of mesh.constrained_dofs()."""
    coords = mesh.dof_coordinates
    constrained = mesh.constrained_dofs()
    on_left = constrained < mesh.interface_dof_left
    values = np.where(
        on_left,
        ConstraintData.evaluate(g.g1, coords[constrained]),
        ConstraintData.evaluate(g.g2, coords[constrained]),
    )
    return values


def apply_constraints(A: BandedSymmetricMatrix, f: np.ndarray, mesh: Mesh1D, g: ConstraintData) -> ConstrainedSystem:
    """Eliminate the Γ₁ ∪ Γ₂ DOFs: rhs_free = f_free − A_free,constrained · g."""
    if A.dim != mesh.dof_count or len(f) != mesh.dof_count:
        raise DimensionMismatchError(
            f"matrix dim {A.dim} and load length {len(f)} must equal dof count {mesh.dof_count}"
        )
    constrained = mesh.constrained_dofs()
    free = mesh.free_dofs()
    values = constraint_values(mesh, g)

    lifted = np.zeros(mesh.dof_count)
    lifted[constrained] = values
    rhs = (np.asarray(f, dtype=float) - A.matvec(lifted))[free]

    reduced = A.principal_block(int(free[0]), int(free[-1]) + 1)
    logger.debug(f"Eliminated {len(constrained)} constrained DOFs, {len(free)} free")
    return ConstrainedSystem(
        matrix=reduced,
        rhs=rhs,
        free_dofs=free,
        constrained_dofs=constrained,
        constrained_values=values,
        dof_count=mesh.dof_count,
    )


def dump_coordinates(A: BandedSymmetricMatrix) -> Iterator[str]:
    """'i j value' lines of the stored lower triangle, 0-based, ordered by column then row."""
    fmt = constants.MATRIX_DUMP_FLOAT_FORMAT
    n = A.dim
    for j in range(n):
        for k in range(min(A.half_bandwidth, n - 1 - j) + 1):
            yield f"{j + k} {j} {format(float(A.band[k, j]), fmt)}"
