"""End-to-end solves: constants, scaling invariance and the default problem."""

import numpy as np
import pytest

from nli1d.shared_libraries.error_handling import NonCommensurateError
from nli1d.shared_libraries.types import ConstraintData, KernelFamily, SourceTerm
from nli1d.analysis.norms import jump_magnitude, l2_error
from nli1d.discretization.geometry import build_mesh
from nli1d.discretization.kernels import make_kernel
from nli1d.local_reference import local_exact
from nli1d.pipeline import solve_config, solve_nonlocal


@pytest.mark.parametrize("family", list(KernelFamily))
def test_constant_solution(default_material, default_layout, family):
    mesh = build_mesh(default_layout, 2.0 ** -6)
    kernel = make_kernel(family, default_material, 2.0 ** -5, 2.0 ** -4, default_layout)

    solution = solve_nonlocal(mesh, kernel, SourceTerm.constant(0.0), ConstraintData.constant(0.7))
    np.testing.assert_allclose(solution.coefficients, 0.7, rtol=0.0, atol=1e-10)
    assert jump_magnitude(solution) <= 1e-10


@pytest.mark.parametrize("scale", [0.1, 7.0])
def test_scaling_invariance(default_material, default_layout, scale):
    mesh = build_mesh(default_layout, 2.0 ** -6)
    kernel = make_kernel(KernelFamily.K1, default_material, 2.0 ** -5, 2.0 ** -4, default_layout)
    source = SourceTerm.constant(1.0)
    constraints = ConstraintData(g1=(1.0 / 16, -1.0 / 8, -1.0 / 2), g2=(1.0 / 16, -1.0 / 24, -1.0 / 6))

    reference = solve_nonlocal(mesh, kernel, source, constraints).coefficients
    scaled = solve_nonlocal(mesh, kernel.scaled(scale), source.scaled(scale), constraints).coefficients
    assert np.max(np.abs(scaled - reference)) <= 1e-12 * np.max(np.abs(reference))


def test_default_problem(coarse_config):
    solution = solve_config(coarse_config, keep_matrix=True)
    mesh = solution.mesh

    assert len(solution.coefficients) == round((1.0 + 2.0 ** -5 + 2.0 ** -4) / 2.0 ** -6) + 2
    assert solution.stiffness is not None and solution.stiffness.dim == mesh.dof_count

    exact = local_exact(coarse_config.material(), coarse_config.source(), -0.5, 0.0, 0.5)
    constrained = mesh.constrained_dofs()
    np.testing.assert_allclose(
        solution.coefficients[constrained], exact(mesh.dof_coordinates[constrained]), atol=1e-15
    )
    assert l2_error(solution, mesh, exact) < 1e-3
    assert 0.0 < jump_magnitude(solution) < 1e-3


def test_matrix_dropped_by_default(coarse_config):
    assert solve_config(coarse_config).stiffness is None


def test_evaluate_matches_coefficients_at_element_points(coarse_config):
    solution = solve_config(coarse_config)
    mesh = solution.mesh
    e = mesh.interface_node
    midpoint = mesh.nodes[e] + 0.5 * mesh.h
    first, second = mesh.element_dofs[e]
    expected = 0.5 * (solution.coefficients[first] + solution.coefficients[second])
    assert float(solution.evaluate(midpoint)) == pytest.approx(expected, rel=1e-14)


def test_large_contrast_runs(coarse_config):
    config = coarse_config.model_copy(update={"kappa2": 100.0, "delta1": 2.0 ** -3, "delta2": 2.0 ** -2})
    solution = solve_config(config)
    assert np.all(np.isfinite(solution.coefficients))


def test_non_commensurate_config(coarse_config):
    with pytest.raises(NonCommensurateError):
        solve_config(coarse_config.model_copy(update={"h": 0.3}))
