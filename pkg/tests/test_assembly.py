"""Tests for stiffness assembly, the load vector and constraint elimination."""

import numpy as np
import pytest

from nli1d.shared_libraries.error_handling import AssemblyError, DimensionMismatchError
from nli1d.shared_libraries.types import ConstraintData, DomainLayout, KernelFamily, Material, SourceTerm
from nli1d.discretization.assembly import (
    _scatter_lower,
    apply_constraints,
    assemble_load,
    assemble_stiffness,
    constraint_values,
    dump_coordinates,
    required_half_bandwidth,
)
from nli1d.discretization.banded import BandedSymmetricMatrix
from nli1d.discretization.geometry import build_mesh
from nli1d.discretization.kernels import make_kernel, single_material_kernel


def _unit_layout(delta: float) -> DomainLayout:
    return DomainLayout(a=-0.5, x_gamma=0.0, b=0.5, delta1=delta, delta2=delta)


def _basis_on_segment(mesh, j, lo, hi):
    """φ_j at both ends of a segment that lies inside one element."""
    e = int(mesh.element_of(0.5 * (lo + hi)))
    t = (np.array([lo, hi]) - mesh.nodes[e]) / mesh.h
    first, second = mesh.element_dofs[e]
    return (1.0 - t) * (first == j) + t * (second == j)


def _basis_integral(mesh, j, lo, hi):
    """∫_lo^hi φ_j dy by the trapezoidal rule between nodes (exact for hats)."""
    inner = mesh.nodes[(mesh.nodes > lo) & (mesh.nodes < hi)]
    cuts = np.concatenate([[lo], inner, [hi]])
    return sum(0.5 * (b - a) * _basis_on_segment(mesh, j, a, b).sum() for a, b in zip(cuts[:-1], cuts[1:]))


def dense_single_material_oracle(mesh, amplitude, delta):
    """
    A_ij = 2c∫ φ_i φ_j m dx − 2c∫ φ_i(x) Φ_j(x) dx for a symmetric constant kernel, with
    m(x) the clipped ball length and Φ_j(x) the integral of φ_j over the clipped ball.
    """
    n = mesh.dof_count
    xi, wi = np.polynomial.legendre.leggauss(4)
    ts, ws = 0.5 * (xi + 1.0), 0.5 * wi
    lo_end, hi_end = mesh.nodes[0], mesh.nodes[-1]
    dense = np.zeros((n, n))
    for e in range(mesh.element_count):
        for t, w in zip(ts, ws):
            x = mesh.nodes[e] + mesh.h * t
            phi = np.zeros(n)
            phi[mesh.element_dofs[e, 0]] += 1.0 - t
            phi[mesh.element_dofs[e, 1]] += t
            lo, hi = max(x - delta, lo_end), min(x + delta, hi_end)
            ball = np.array([_basis_integral(mesh, j, lo, hi) for j in range(n)])
            dense += 2.0 * amplitude * mesh.h * w * ((hi - lo) * np.outer(phi, phi) - np.outer(phi, ball))
    return dense


def test_hand_integrated_entries():
    layout = _unit_layout(0.5)
    mesh = build_mesh(layout, 0.5)
    stiffness = assemble_stiffness(mesh, single_material_kernel(1.0, 0.5, layout))

    assert stiffness.entry(0, 0) == pytest.approx(1.0, abs=1e-13)
    assert stiffness.entry(0, 1) == pytest.approx(-0.75, abs=1e-13)
    assert stiffness.entry(0, 2) == pytest.approx(-0.25, abs=1e-13)
    assert stiffness.entry(0, 3) == pytest.approx(0.0, abs=1e-13)


def test_matches_dense_oracle():
    layout = _unit_layout(0.25)
    mesh = build_mesh(layout, 0.125)
    kernel = single_material_kernel(1.0, 0.25, layout)

    assembled = assemble_stiffness(mesh, kernel).to_dense()
    oracle = dense_single_material_oracle(mesh, kernel.c11, 0.25)
    np.testing.assert_allclose(assembled, oracle, rtol=0.0, atol=1e-11 * np.abs(oracle).max())


def _random_configs(count: int, seed: int):
    rng = np.random.default_rng(seed)
    horizons = [2.0 ** -k for k in range(3, 7)]
    for _ in range(count):
        delta1, delta2 = rng.choice(horizons, size=2)
        h = min(delta1, delta2) / rng.choice([1, 2, 4])
        material = Material(kappa1=rng.uniform(0.5, 10.0), kappa2=rng.uniform(0.5, 10.0))
        family = KernelFamily(rng.choice([family.value for family in KernelFamily]))
        yield family, material, float(delta1), float(delta2), float(h)


@pytest.mark.parametrize("family, material, delta1, delta2, h", list(_random_configs(10, seed=5)))
def test_constants_in_kernel(family, material, delta1, delta2, h):
    layout = DomainLayout(a=-0.5, x_gamma=0.0, b=0.5, delta1=delta1, delta2=delta2)
    mesh = build_mesh(layout, h)
    stiffness = assemble_stiffness(mesh, make_kernel(family, material, delta1, delta2, layout))

    residual = stiffness.matvec(np.ones(mesh.dof_count))
    assert np.max(np.abs(residual)) <= 1e-12 * stiffness.norm_inf()


def test_symmetric_read_back(default_material, default_layout):
    mesh = build_mesh(default_layout, 2.0 ** -7)
    stiffness = assemble_stiffness(
        mesh, make_kernel(KernelFamily.K1, default_material, 2.0 ** -5, 2.0 ** -4, default_layout)
    )
    rng = np.random.default_rng(0)
    pairs = rng.integers(0, mesh.dof_count, size=(1000, 2))
    assert all(stiffness.entry(i, j) == stiffness.entry(j, i) for i, j in pairs)
    dense = stiffness.to_dense()
    np.testing.assert_array_equal(dense, dense.T)


def test_entries_stay_in_band(default_material, default_layout):
    mesh = build_mesh(default_layout, 2.0 ** -7)
    stiffness = assemble_stiffness(
        mesh, make_kernel(KernelFamily.K2, default_material, 2.0 ** -5, 2.0 ** -4, default_layout)
    )
    assert stiffness.half_bandwidth == required_half_bandwidth(mesh) == 8 + 2
    # The outermost diagonal is reached only by pairs straddling the double node.
    assert np.any(stiffness.band[-1] != 0.0)
    straddling = np.nonzero(stiffness.band[-1])[0]
    assert np.all(straddling <= mesh.interface_dof_left)
    assert np.all(straddling + 10 >= mesh.interface_dof_right)


def test_scatter_outside_band():
    band = np.zeros((2, 4))
    with pytest.raises(AssemblyError):
        _scatter_lower(band, np.array([3]), np.array([0]), np.array([1.0]))


def test_layout_mismatch(default_material, default_layout):
    mesh = build_mesh(default_layout, 2.0 ** -5)
    other = _unit_layout(2.0 ** -5)
    kernel = make_kernel(KernelFamily.K1, default_material, 2.0 ** -5, 2.0 ** -5, other)
    with pytest.raises(DimensionMismatchError):
        assemble_stiffness(mesh, kernel)


def test_load_vector():
    mesh = build_mesh(_unit_layout(0.5), 0.5)
    load = assemble_load(mesh, SourceTerm.constant(1.0))
    np.testing.assert_allclose(load, [0.0, 0.25, 0.25, 0.25, 0.25, 0.0], atol=1e-15)


def test_load_vector_per_side(default_layout):
    mesh = build_mesh(default_layout, 2.0 ** -5)
    load = assemble_load(mesh, SourceTerm(f1=2.0, f2=-1.0))
    assert load[: mesh.interface_dof_left + 1].sum() == pytest.approx(2.0 * 0.5)
    assert load[mesh.interface_dof_right:].sum() == pytest.approx(-1.0 * 0.5)
    assert np.all(load[mesh.constrained_dofs()[[0, -1]]] == 0.0)


def test_constraint_values(default_layout):
    mesh = build_mesh(default_layout, 2.0 ** -5)
    data = ConstraintData(g1=(1.0, 2.0, 0.0), g2=(0.0, 0.0, 4.0))
    coords = mesh.dof_coordinates[mesh.constrained_dofs()]
    expected = np.where(coords < 0.0, 1.0 + 2.0 * coords, 4.0 * coords ** 2)
    np.testing.assert_allclose(constraint_values(mesh, data), expected, rtol=1e-15)


def test_apply_constraints(default_material, default_layout):
    mesh = build_mesh(default_layout, 2.0 ** -5)
    kernel = make_kernel(KernelFamily.K1, default_material, 2.0 ** -5, 2.0 ** -4, default_layout)
    stiffness = assemble_stiffness(mesh, kernel)
    load = assemble_load(mesh, SourceTerm.constant(1.0))
    data = ConstraintData(g1=(1.0 / 16, -1.0 / 8, -1.0 / 2), g2=(1.0 / 16, -1.0 / 24, -1.0 / 6))

    system = apply_constraints(stiffness, load, mesh, data)
    free = mesh.free_dofs()
    dense = stiffness.to_dense()
    lifted = np.zeros(mesh.dof_count)
    lifted[system.constrained_dofs] = system.constrained_values

    np.testing.assert_allclose(system.matrix.to_dense(), dense[np.ix_(free, free)], rtol=0.0, atol=0.0)
    np.testing.assert_allclose(system.rhs, (load - dense @ lifted)[free], rtol=1e-10, atol=1e-12)

    full = system.solve()
    np.testing.assert_allclose(full[system.constrained_dofs], system.constrained_values)
    np.testing.assert_allclose(dense[np.ix_(free, free)] @ full[free], system.rhs, rtol=1e-8, atol=1e-10)


def test_apply_constraints_dimension_mismatch(default_layout):
    mesh = build_mesh(default_layout, 2.0 ** -5)
    with pytest.raises(DimensionMismatchError):
        apply_constraints(BandedSymmetricMatrix.identity(3), np.zeros(3), mesh, ConstraintData.constant(0.0))


def test_dump_coordinates():
    lines = list(dump_coordinates(BandedSymmetricMatrix.identity(2, 1)))
    assert lines == ["0 0 1", "1 0 0", "1 1 1"]


@pytest.mark.parametrize("family", [KernelFamily.K1, KernelFamily.K3, KernelFamily.K4])
def test_deep_row_ignores_other_material(default_layout, family):
    mesh = build_mesh(default_layout, 2.0 ** -6)
    deep = int(np.argmin(np.abs(mesh.dof_coordinates + 0.25)))
    rows = []
    for kappa2 in (3.0, 30.0):
        kernel = make_kernel(family, Material(kappa1=1.0, kappa2=kappa2), 2.0 ** -5, 2.0 ** -4, default_layout)
        rows.append(assemble_stiffness(mesh, kernel).to_dense()[deep])

    assert np.count_nonzero(rows[0]) > 1
    np.testing.assert_array_equal(rows[0], rows[1])


@pytest.mark.parametrize("h", [2.0 ** -5, 2.0 ** -6, 2.0 ** -8])
def test_constrained_dof_count(default_material, default_layout, h):
    mesh = build_mesh(default_layout, h)
    kernel = make_kernel(KernelFamily.K2, default_material, 2.0 ** -5, 2.0 ** -4, default_layout)
    system = apply_constraints(
        assemble_stiffness(mesh, kernel), assemble_load(mesh, SourceTerm.constant(1.0)), mesh,
        ConstraintData.constant(0.0),
    )
    expected = round(2.0 ** -5 / h + 1) + round(2.0 ** -4 / h + 1)

    assert len(mesh.constrained_dofs()) == expected
    assert len(system.constrained_dofs) == expected
    assert len(system.free_dofs) + expected == mesh.dof_count
