"""
Numeric checks of the nonlocal identities and of the local limit.

1. Nonlocal action matrices and the Green's identity residual
2. Pointwise residual of the strong form for a discrete solution
3. Built-in verification runs (green, operator-1d, operator-2d, local-fem) returning
   VerificationResult records for the command line
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from nli1d.shared_libraries import constants
from nli1d.shared_libraries.error_handling import DimensionMismatchError, ValidationError
from nli1d.shared_libraries.logging_config import get_logger, log_function_call
from nli1d.shared_libraries.types import (
    DomainLayout,
    Material,
    SourceTerm,
    VerificationResult,
    VerifyTarget,
)
from nli1d.analysis.norms import l2_error_nodal
from nli1d.analysis.operators import moment_condition
from nli1d.analysis.studies import operator_limit_study
from nli1d.discretization.assembly import assemble_stiffness
from nli1d.discretization.geometry import Mesh1D, build_mesh, interaction_regions
from nli1d.discretization.kernels import Kernel, single_material_kernel
from nli1d.discretization.quadrature import GAUSS_T, GAUSS_W, inner_rule
from nli1d.local_reference import local_exact, local_fem_solve
from nli1d.pipeline import NonlocalSolution

logger = get_logger(__name__)


# --- Green's identity ---

@log_function_call()
def nonlocal_action_matrix(mesh: Mesh1D, kernel: Kernel, region: str) -> np.ndarray:
    """
    Dense N_ij = ∫_X φ_i(x)·2∫(φ_j(y) − φ_j(x))γ(x, y) dy dx.

    region 'omega' integrates x over Ω₁ ∪ Ω₂, 'gamma' over Γ₁ ∪ Γ₂.
    """
    if region not in ("omega", "gamma"):
        raise ValidationError(f"region must be 'omega' or 'gamma', got {region!r}")
    n = mesh.dof_count
    action = np.zeros((n, n))
    amplitudes = kernel.amplitudes()
    horizons = kernel.horizons()
    sides = mesh.element_sides
    dofs = mesh.element_dofs
    h = mesh.h

    for e, element_region in enumerate(mesh.element_regions):
        if element_region.constrained != (region == "gamma"):
            continue
        p = sides[e]
        dx = dofs[e]
        for t, wt in zip(GAUSS_T, GAUSS_W):
            x = mesh.nodes[e] + h * t
            nx = np.array([1.0 - t, t])
            points, weights, elements = inner_rule(mesh, x, horizons[p - 1])
            w = 2.0 * h * wt * weights * amplitudes[p - 1, sides[elements] - 1]
            s = (points - mesh.nodes[elements]) / h
            for a in (0, 1):
                # +φ_i(x)φ_j(y)
                np.add.at(action[dx[a]], dofs[elements, 0], nx[a] * w * (1.0 - s))
                np.add.at(action[dx[a]], dofs[elements, 1], nx[a] * w * s)
                # −φ_i(x)φ_j(x)
                action[dx[a], dx] -= nx[a] * nx * w.sum()
    return action


@dataclass(frozen=True)
class GreenOperators:
    """Dense operators entering the Green's identity for one (mesh, kernel)."""

    omega: np.ndarray
    gamma: np.ndarray
    stiffness: np.ndarray

    @classmethod
    def build(cls, mesh: Mesh1D, kernel: Kernel) -> "GreenOperators":
        return cls(
            omega=nonlocal_action_matrix(mesh, kernel, "omega"),
            gamma=nonlocal_action_matrix(mesh, kernel, "gamma"),
            stiffness=assemble_stiffness(mesh, kernel).to_dense(),
        )

    def scale(self, u: np.ndarray, v: np.ndarray) -> float:
        magnitude = np.abs(self.omega) + np.abs(self.gamma) + np.abs(self.stiffness)
        return float(np.abs(v) @ magnitude @ np.abs(u))


def green_identity_residual(u: np.ndarray, v: np.ndarray, mesh: Mesh1D, kernel: Kernel,
                            operators: Optional[GreenOperators] = None) -> float:
    """
    |∫_Ω v·Lu dx − (−A(u, v) − ∫_Γ̃ v·Lu dx)| for nodal u and v.

    Only meaningful for a symmetric kernel; v is expected to vanish on Γ̃.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != (mesh.dof_count,) or v.shape != (mesh.dof_count,):
        raise DimensionMismatchError(f"nodal vectors must have length {mesh.dof_count}")
    operators = operators or GreenOperators.build(mesh, kernel)
    lhs = v @ operators.omega @ u
    rhs = -(v @ operators.stiffness @ u) - v @ operators.gamma @ u
    return float(abs(lhs - rhs))


# --- Strong form residual ---

@dataclass(frozen=True)
class StrongResidual:
    """Deviation |LHS(x) − f(x)| at each sample point and the governing equation there."""

    samples: np.ndarray
    deviations: np.ndarray
    labels: List[str]

    @property
    def max_deviation(self) -> float:
        return float(np.max(self.deviations)) if len(self.deviations) else 0.0


def strong_residual(solution: NonlocalSolution, kernel: Kernel, mesh: Mesh1D, samples: Sequence[float],
                    source: SourceTerm) -> StrongResidual:
    """
    LHS(x) = −∫ (γ(x, y) + γ(y, x))(u_h(y) − u_h(x)) dy at element-interior samples.

    The inner integral is split at the nodes and at x ± δ₁, x ± δ₂ so the truncation
    of both kernel terms is integrated exactly.
    """
    samples = np.asarray(samples, dtype=float)
    amplitudes = kernel.amplitudes()
    horizons = kernel.horizons()
    regions = interaction_regions(mesh.layout)
    reach = float(horizons.max())

    deviations = np.empty(len(samples))
    labels = []
    for k, x in enumerate(samples):
        element = int(mesh.element_of(x))
        p = mesh.element_sides[element]
        ux = float(solution.evaluate(x))
        breaks = [x - horizons[0], x + horizons[0], x - horizons[1], x + horizons[1]]
        points, weights, elements = inner_rule(mesh, x, reach, breaks)
        q = mesh.element_sides[elements]
        distance = np.abs(points - x)
        forward = amplitudes[p - 1, q - 1] * (distance <= horizons[p - 1])
        backward = amplitudes[q - 1, p - 1] * (distance <= horizons[q - 1])
        lhs = -float(np.sum(weights * (forward + backward) * (solution.evaluate(points) - ux)))
        deviations[k] = abs(lhs - source.value(p))
        labels.append(regions.label(x))
    return StrongResidual(samples=samples, deviations=deviations, labels=labels)


# --- Built-in verification runs ---

def _green_layout() -> DomainLayout:
    delta = constants.GREEN_DELTA
    return DomainLayout(a=constants.DEFAULT_A, x_gamma=constants.DEFAULT_X_GAMMA, b=constants.DEFAULT_B,
                        delta1=delta, delta2=delta)


def verify_green(trials: int = constants.GREEN_TRIALS, seed: int = constants.GREEN_SEED) -> VerificationResult:
    """Worst scale-relative Green's identity residual over seeded random (u, v)."""
    layout = _green_layout()
    mesh = build_mesh(layout, constants.GREEN_H)
    kernel = single_material_kernel(constants.GREEN_KAPPA, constants.GREEN_DELTA, layout)
    operators = GreenOperators.build(mesh, kernel)
    free = mesh.free_dofs()

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        u = rng.standard_normal(mesh.dof_count)
        v = np.zeros(mesh.dof_count)
        v[free] = rng.standard_normal(len(free))
        residual = green_identity_residual(u, v, mesh, kernel, operators)
        worst = max(worst, residual / operators.scale(u, v))
    return VerificationResult(
        name="green",
        passed=worst <= constants.GREEN_TOLERANCE,
        measured=worst,
        threshold=constants.GREEN_TOLERANCE,
        detail=f"{trials} random pairs, kappa={constants.GREEN_KAPPA}, delta={constants.GREEN_DELTA}, h={constants.GREEN_H}",
    )


def _order_check(name: str, report, detail: str) -> VerificationResult:
    final = report.rows[-1].order
    deviation = abs(final - constants.OPERATOR_EXPECTED_ORDER) if final is not None else float("inf")
    return VerificationResult(
        name=name,
        passed=deviation <= constants.OPERATOR_ORDER_TOLERANCE,
        measured=final if final is not None else float("nan"),
        threshold=constants.OPERATOR_ORDER_TOLERANCE,
        detail=detail,
    )


def _exactness_check(name: str, reports: Dict[str, object]) -> VerificationResult:
    worst = max(max(row.quantity for row in report.rows) for report in reports.values())
    return VerificationResult(
        name=name,
        passed=worst <= constants.OPERATOR_EXACTNESS_TOLERANCE,
        measured=worst,
        threshold=constants.OPERATOR_EXACTNESS_TOLERANCE,
        detail="max |L u - kappa Lap u| over " + ", ".join(reports),
    )


def verify_operator_1d() -> List[VerificationResult]:
    kappa = constants.OPERATOR_KAPPA
    deltas = constants.OPERATOR_DELTAS
    quartic = operator_limit_study(lambda x: x ** 4, lambda x: 12.0 * x ** 2, 0.3, kappa, deltas, dim=1)
    quadratic = operator_limit_study(lambda x: 1.0 - 2.0 * x + 3.0 * x ** 2, lambda x: 6.0, 0.3, kappa, deltas, dim=1)
    return [
        _order_check("operator-1d order", quartic, "u = x^4 at x = 0.3"),
        _exactness_check("operator-1d quadratic", {"1 - 2x + 3x^2": quadratic}),
    ]


def verify_operator_2d() -> List[VerificationResult]:
    kappa = constants.OPERATOR_KAPPA
    deltas = constants.OPERATOR_DELTAS
    point = (0.3, -0.2)
    quartic = operator_limit_study(lambda x, y: x ** 4, lambda x, y: 12.0 * x ** 2, point, kappa, deltas, dim=2)
    exact = {
        "x^2 + y^2": operator_limit_study(lambda x, y: x ** 2 + y ** 2, lambda x, y: 4.0, point, kappa, deltas, dim=2),
        "x^3": operator_limit_study(lambda x, y: x ** 3, lambda x, y: 6.0 * x, point, kappa, deltas, dim=2),
    }
    moments = [abs(moment_condition(k, 0.3) - k) for k in (0.5, 1.0, 3.0)]
    return [
        _order_check("operator-2d order", quartic, "u = x^4 at (0.3, -0.2)"),
        _exactness_check("operator-2d exact", exact),
        VerificationResult(
            name="operator-2d moment",
            passed=max(moments) <= constants.OPERATOR_EXACTNESS_TOLERANCE,
            measured=max(moments),
            threshold=constants.OPERATOR_EXACTNESS_TOLERANCE,
            detail="first moment condition, kappa in (0.5, 1, 3)",
        ),
    ]


def verify_local_fem(h: float = constants.LOCAL_FEM_H) -> VerificationResult:
    material = Material(kappa1=constants.DEFAULT_KAPPA1, kappa2=constants.DEFAULT_KAPPA2)
    source = SourceTerm.constant(constants.DEFAULT_SOURCE)
    a, xg, b = constants.DEFAULT_A, constants.DEFAULT_X_GAMMA, constants.DEFAULT_B
    fem = local_fem_solve(material, source, a, xg, b, h)
    error = l2_error_nodal(fem.nodes, fem.values, local_exact(material, source, a, xg, b))
    return VerificationResult(
        name="local-fem",
        passed=error <= constants.LOCAL_FEM_TOLERANCE,
        measured=error,
        threshold=constants.LOCAL_FEM_TOLERANCE,
        detail=f"L2 error of the P1 solution at h={h!r}",
    )


VERIFIERS: Dict[VerifyTarget, Callable[[], List[VerificationResult]]] = {
    VerifyTarget.GREEN: lambda: [verify_green()],
    VerifyTarget.OPERATOR_1D: verify_operator_1d,
    VerifyTarget.OPERATOR_2D: verify_operator_2d,
    VerifyTarget.LOCAL_FEM: lambda: [verify_local_fem()],
}


def run_verification(target: VerifyTarget) -> List[VerificationResult]:
    """Run one verifier, or all of them in a fixed order."""
    target = VerifyTarget(target)
    targets = list(VERIFIERS) if target == VerifyTarget.ALL else [target]
    results: List[VerificationResult] = []
    for item in targets:
        logger.info(f"Running verifier {item.value}")
        results.extend(VERIFIERS[item]())
    return results
