# coding=utf-8
import numpy as np
import pytest

from core import grid_clock, weyl
from core.exceptions import WindowTooSmall
from core.history import ConstraintOperator
from core.system import qubit, random_hermitian, random_state, uniform


@pytest.fixture(scope='module')
def gaussian_report():
    h = qubit(1.0)
    return weyl.gaussian_point(h, uniform(2), 4, 0.05)


def test_gaussian_sweep_grid(gaussian_report):
    assert gaussian_report.n_points == 400
    assert gaussian_report.window == pytest.approx(20.0)
    assert gaussian_report.boundary_ok


def test_gaussian_state_is_normalised(gaussian_report):
    assert gaussian_report.norm_sq == pytest.approx(1.0, rel=1e-10)


def test_constraint_norm_vanishes_like_one_over_n(gaussian_report):
    assert gaussian_report.constraint_norm_sq == pytest.approx(0.25, rel=1e-6)
    assert gaussian_report.constraint_norm_sq_target == 0.25


def test_time_amplified_norm_stays_at_three_quarters(gaussian_report):
    assert gaussian_report.t_amplified_norm_sq == pytest.approx(0.75, rel=1e-6)


def test_sandwich_orderings(gaussian_report):
    assert gaussian_report.sandwich_tj == pytest.approx(0.5j, abs=1e-6)
    assert gaussian_report.sandwich_jt == pytest.approx(-0.5j, abs=1e-6)
    assert gaussian_report.commutator_check == pytest.approx(1j, abs=1e-6)
    assert gaussian_report.adjoint_residual < 1e-10


def test_jt_residuals(gaussian_report):
    assert gaussian_report.jt_residual_zero == pytest.approx(0.75, rel=1e-6)
    assert gaussian_report.jt_residual_sandwich == pytest.approx(0.5, rel=1e-6)


@pytest.mark.parametrize('n', [4.0, 16.0])
def test_sweep_quantities_do_not_depend_on_system(n):
    h = random_hermitian(3, 1)
    report = weyl.gaussian_point(h, random_state(3, 2), n, 0.05)
    assert report.constraint_norm_sq * n == pytest.approx(1.0, rel=1e-4)
    assert report.t_amplified_norm_sq == pytest.approx(0.75, rel=1e-4)


def test_window_too_small():
    grid = grid_clock.make_grid(64, 10.0)
    with pytest.raises(WindowTooSmall, match='need L >= 20') as info:
        weyl.make_weyl(grid, qubit(1.0), uniform(2), weyl.WeylKind.gaussian(4))
    assert info.value.required == pytest.approx(20.0)


def test_weyl_kind_validation():
    with pytest.raises(ValueError):
        weyl.WeylKind('lorentzian', 1.0)
    with pytest.raises(ValueError):
        weyl.WeylKind.box(0)
    assert weyl.WeylKind.box(8).required_window() == pytest.approx(10.0)


def test_box_norm_with_half_weight_edges():
    grid = grid_clock.grid_for_spacing(0.05, 25.0)
    w = weyl.make_weyl(grid, qubit(1.0), uniform(2), weyl.WeylKind.box(10))
    assert w.edge_on_grid
    assert w.boundary_ok
    assert w.norm_sq == pytest.approx(1 - grid.dt / 20, rel=1e-12)
    assert w.state.normalization == 'unit'


def test_box_edge_off_grid_flagged():
    grid = grid_clock.grid_for_spacing(0.05, 25.0)
    assert not weyl.box_edge_on_grid(grid, 10.03)
    assert not weyl.make_weyl(grid, qubit(1.0), uniform(2), weyl.WeylKind.box(10.03)).edge_on_grid


def test_box_constraint_norm_falls_with_width():
    grid = grid_clock.grid_for_spacing(0.05, 25.0)
    h, psi0 = qubit(1.0), uniform(2)
    j = ConstraintOperator(grid, h)
    reports = [weyl.weyl_report(weyl.make_weyl(grid, h, psi0, weyl.WeylKind.box(m)), j) for m in (10, 20)]
    assert reports[1].constraint_norm_sq < reports[0].constraint_norm_sq
    assert all(report.t_amplified_norm_sq > 0.5 for report in reports)
    assert reports[0].constraint_norm_sq_target is None


def test_theta_profiles_are_normalised():
    grid = grid_clock.make_grid(1280, 64.0)
    for shape in ('gaussian', 'power'):
        theta = weyl.make_theta(grid, shape)
        assert grid_clock.ClockVector(theta(grid.times), grid).norm() == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(ValueError):
        weyl.make_theta(grid, 'power', epsilon=0)


@pytest.fixture(scope='module')
def probe_grid():
    return grid_clock.make_grid(1280, 64.0)


def test_weak_probe_gaussian_theta(probe_grid):
    h, psi0 = qubit(1.0), uniform(2)
    rows = weyl.weak_convergence_probe(probe_grid, weyl.make_theta(probe_grid, 'gaussian'), h, psi0, [5, 10, 20])
    assert [row.m for row in rows] == [5.0, 10.0, 20.0]
    assert all(row.edge_on_grid for row in rows)
    for row in rows[:2]:
        assert row.a_ratio == pytest.approx(1.0, abs=0.05)
        assert row.b_ratio == pytest.approx(1.0, abs=0.05)
    assert abs(rows[1].a) * 10 <= abs(rows[0].a)
    assert abs(rows[2].a) * 10 <= abs(rows[1].a) or abs(rows[2].a) < weyl.ROUNDOFF_FLOOR


def test_weak_probe_power_theta_stays_finite(probe_grid):
    h, psi0 = qubit(1.0), uniform(2)
    rows = weyl.weak_convergence_probe(probe_grid, weyl.make_theta(probe_grid, 'power'), h, psi0, [5, 10, 20])
    for row in rows:
        assert 0.8 <= row.b_ratio <= 1.25
    moduli = [abs(row.b) for row in rows]
    assert moduli[-1] > 0.5 * moduli[0]


def test_weak_probe_rejects_wide_boxes(probe_grid):
    with pytest.raises(WindowTooSmall):
        weyl.weak_convergence_probe(probe_grid, weyl.make_theta(probe_grid), qubit(1.0), uniform(2), [10, 60])
    with pytest.raises(ValueError):
        weyl.weak_convergence_probe(probe_grid, weyl.make_theta(probe_grid), qubit(1.0), uniform(2), [10, 5])


def test_report_row_is_flat(gaussian_report):
    row = gaussian_report.as_row()
    assert row['kind'] == 'gaussian'
    assert row['sandwich_tj_im'] == pytest.approx(0.5, abs=1e-6)
    assert not any(isinstance(value, complex) for value in row.values())


@pytest.mark.parametrize('n', [64.0, 256.0])
def test_large_n_sweep_points(n):
    report = weyl.gaussian_point(qubit(1.0), uniform(2), n, 0.05)
    assert report.boundary_ok
    assert report.constraint_norm_sq * n == pytest.approx(1.0, rel=1e-4)
    assert report.t_amplified_norm_sq == pytest.approx(0.75, rel=1e-4)
