"""Tests for the nonlocal identities and the built-in verification runs."""

import numpy as np
import pytest

from nli1d.shared_libraries import constants
from nli1d.shared_libraries.error_handling import QuadratureDomainClippedError, ValidationError
from nli1d.shared_libraries.types import ConstraintData, DomainLayout, KernelFamily, Material, SourceTerm
from nli1d.analysis.operators import (
    local_limit_amplitude,
    moment_condition,
    nonlocal_operator_apply,
    second_moment_remainder,
)
from nli1d.analysis.verifiers import (
    GreenOperators,
    green_identity_residual,
    nonlocal_action_matrix,
    run_verification,
    strong_residual,
    verify_green,
    verify_local_fem,
    verify_operator_1d,
    verify_operator_2d,
)
from nli1d.discretization.geometry import build_mesh
from nli1d.discretization.kernels import make_kernel, single_material_kernel
from nli1d.pipeline import solve_nonlocal


def _symmetric_setup(delta=2.0 ** -4, h=2.0 ** -6):
    layout = DomainLayout(a=-0.5, x_gamma=0.0, b=0.5, delta1=delta, delta2=delta)
    return build_mesh(layout, h), single_material_kernel(1.0, delta, layout)


def test_green_identity_single_pair():
    mesh, kernel = _symmetric_setup()
    operators = GreenOperators.build(mesh, kernel)
    rng = np.random.default_rng(1)
    u = rng.standard_normal(mesh.dof_count)
    v = np.zeros(mesh.dof_count)
    v[mesh.free_dofs()] = rng.standard_normal(len(mesh.free_dofs()))

    residual = green_identity_residual(u, v, mesh, kernel, operators)
    assert residual <= 1e-10 * operators.scale(u, v)


def test_action_matrices_annihilate_constants():
    mesh, kernel = _symmetric_setup()
    ones = np.ones(mesh.dof_count)
    for region in ("omega", "gamma"):
        action = nonlocal_action_matrix(mesh, kernel, region)
        assert np.max(np.abs(action @ ones)) <= 1e-10 * np.max(np.abs(action))


def test_action_matrix_region():
    mesh, kernel = _symmetric_setup()
    with pytest.raises(ValidationError):
        nonlocal_action_matrix(mesh, kernel, "interface")


def test_moment_conditions():
    for kappa in (0.5, 1.0, 3.0):
        assert moment_condition(kappa, 0.25) == pytest.approx(kappa, rel=1e-14)
        assert second_moment_remainder(kappa, 0.25) == pytest.approx(4.0 * kappa * 0.25, rel=1e-14)


def test_operator_on_quadratics_is_exact():
    delta = 2.0 ** -4
    value = nonlocal_operator_apply(lambda x: 3.0 * x ** 2 - x, 0.1, local_limit_amplitude(2.0, delta, 1), delta, 1)
    assert value == pytest.approx(2.0 * 6.0, rel=1e-10)


def test_operator_ball_leaves_domain():
    with pytest.raises(QuadratureDomainClippedError):
        nonlocal_operator_apply(lambda x: x, 0.45, 1.0, 0.1, 1, domain=(-0.5, 0.5))
    with pytest.raises(QuadratureDomainClippedError):
        nonlocal_operator_apply(lambda x, y: x, (0.0, -0.45), 1.0, 0.1, 2, domain=[(-0.5, 0.5), (-0.5, 0.5)])


def test_operator_dimension_checks():
    with pytest.raises(ValidationError):
        local_limit_amplitude(1.0, 0.1, 3)
    with pytest.raises(ValidationError):
        nonlocal_operator_apply(lambda x, y: x, (0.0,), 1.0, 0.1, 2)


def test_strong_residual_converges_at_second_order():
    delta = 2.0 ** -3
    layout = DomainLayout(a=-0.5, x_gamma=0.0, b=0.5, delta1=delta, delta2=delta)
    kernel = make_kernel(KernelFamily.K3, Material(kappa1=1.0, kappa2=1.0), delta, delta, layout)
    source = SourceTerm.constant(1.0)
    constraints = ConstraintData(g1=(0.125, 0.0, -0.5), g2=(0.125, 0.0, -0.5))
    samples = -0.5 + (np.arange(16) + 1.0 / 3.0) / 16.0

    deviations = []
    for h in (2.0 ** -6, 2.0 ** -7):
        mesh = build_mesh(layout, h)
        solution = solve_nonlocal(mesh, kernel, source, constraints)
        residual = strong_residual(solution, kernel, mesh, samples, source)
        assert len(residual.labels) == len(samples)
        deviations.append(residual.max_deviation)
    assert 3.0 < deviations[0] / deviations[1] < 5.0


def test_strong_residual_matches_operator_in_the_interior():
    delta = 2.0 ** -3
    layout = DomainLayout(a=-0.5, x_gamma=0.0, b=0.5, delta1=delta, delta2=delta)
    kernel = make_kernel(KernelFamily.K3, Material(kappa1=1.0, kappa2=1.0), delta, delta, layout)
    mesh = build_mesh(layout, 2.0 ** -6)
    source = SourceTerm.constant(1.0)
    solution = solve_nonlocal(mesh, kernel, source, ConstraintData(g1=(0.125, 0.0, -0.5), g2=(0.125, 0.0, -0.5)))

    x = -0.2 + mesh.h / 3.0
    residual = strong_residual(solution, kernel, mesh, [x], source)
    applied = nonlocal_operator_apply(solution.evaluate, x, kernel.c11, delta, 1, breakpoints=mesh.nodes)
    assert residual.deviations[0] == pytest.approx(abs(-applied - 1.0), abs=1e-10)


def test_strong_residual_labels(coarse_config):
    layout = coarse_config.layout()
    mesh = build_mesh(layout, coarse_config.h)
    kernel = make_kernel(coarse_config.kernel, coarse_config.material(), layout.delta1, layout.delta2, layout)
    solution = solve_nonlocal(mesh, kernel, coarse_config.source(), coarse_config.constraints())
    residual = strong_residual(solution, kernel, mesh, [-0.3, -0.01, 0.01, 0.3], coarse_config.source())
    assert residual.labels == ["domain", "interface", "interface", "domain"]


def test_verify_green():
    result = verify_green(trials=5)
    assert result.name == "green"
    assert result.passed
    assert result.threshold == constants.GREEN_TOLERANCE


@pytest.mark.parametrize("verifier", [verify_operator_1d, verify_operator_2d])
def test_verify_operator(verifier):
    results = verifier()
    assert results and all(result.passed for result in results), [r.model_dump() for r in results]


def test_verify_local_fem():
    result = verify_local_fem()
    assert result.passed
    assert result.measured <= constants.LOCAL_FEM_TOLERANCE


def test_run_all_verifications():
    results = run_verification("all")
    names = [result.name for result in results]
    assert names[0] == "green" and names[-1] == "local-fem"
    assert len(names) == 7
    assert all(result.passed for result in results)


@pytest.mark.parametrize("family", list(KernelFamily))
def test_strong_residual_of_constant_solution(default_material, default_layout, family):
    mesh = build_mesh(default_layout, 2.0 ** -6)
    kernel = make_kernel(family, default_material, 2.0 ** -5, 2.0 ** -4, default_layout)
    source = SourceTerm.constant(0.0)
    solution = solve_nonlocal(mesh, kernel, source, ConstraintData.constant(0.7))
    inside = [e for e, region in enumerate(mesh.element_regions) if not region.constrained]
    samples = mesh.nodes[inside] + 0.5 * mesh.h

    residual = strong_residual(solution, kernel, mesh, samples, source)
    bound = 1e-10 * np.linalg.norm(kernel.amplitudes()) * float(kernel.horizons().max())
    assert residual.max_deviation <= bound
