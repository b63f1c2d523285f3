# coding=utf-8
import numpy as np
import pytest

from core import grid_clock, history
from core.exceptions import DimensionMismatch, GridError, NoSupportError
from core.system import SystemState, evolve, oscillator, qubit, random_hermitian, uniform, zero


def test_history_norm_equals_window(fine_grid, qubit_system):
    h, psi0 = qubit_system
    psi = history.build_history(fine_grid, h, psi0)
    assert psi.normalization == 'raw'
    assert psi.norm() ** 2 == pytest.approx(fine_grid.window, rel=1e-12)
    assert psi.unit().norm() == pytest.approx(1.0, rel=1e-12)
    assert psi.unit().normalization == 'unit'


@pytest.mark.parametrize('k', [0, 100, 256, 511])
def test_conditioning_recovers_schrodinger_evolution(fine_grid, k):
    h = random_hermitian(4, 11)
    psi0 = uniform(4)
    conditioned = history.condition(history.build_history(fine_grid, h, psi0), k)
    expected = evolve(h, psi0, fine_grid.times[k])
    assert conditioned.time == fine_grid.times[k]
    assert conditioned.weight == pytest.approx(1.0)
    assert conditioned.state.fidelity(expected) == pytest.approx(1.0, abs=1e-12)


def test_condition_at_nearest_reading(fine_grid, qubit_system):
    h, psi0 = qubit_system
    conditioned = history.condition_at(history.build_history(fine_grid, h, psi0), 1.0)
    assert conditioned.time == fine_grid.times[fine_grid.index_of(1.0)]
    assert abs(conditioned.time - 1.0) <= fine_grid.dt / 2
    assert conditioned.state.fidelity(evolve(h, psi0, conditioned.time)) == pytest.approx(1.0, abs=1e-12)


def test_condition_errors(small_grid):
    empty = history.HistoryState(small_grid, np.zeros((small_grid.n_points, 2)))
    with pytest.raises(NoSupportError, match='no support'):
        history.condition(empty, 3)
    with pytest.raises(GridError):
        history.condition(empty, small_grid.n_points)


def test_history_shape_checked(small_grid):
    with pytest.raises(DimensionMismatch):
        history.HistoryState(small_grid, np.zeros((10, 2)))


def test_time_and_hamiltonian_commute(small_grid):
    h = random_hermitian(3, 2)
    for seed in range(5):
        psi = history.random_history(small_grid, 3, seed)
        assert history.commutator_residual(psi, h) < 1e-12


def test_apply_hamiltonian_dimension_check(small_grid):
    psi = history.random_history(small_grid, 3, 0)
    with pytest.raises(DimensionMismatch):
        history.apply_hamiltonian(qubit(1.0), psi)
    with pytest.raises(DimensionMismatch):
        history.ConstraintOperator(small_grid, qubit(1.0)).apply(psi)


def test_constraint_is_hermitian(small_grid):
    j = history.ConstraintOperator(small_grid, random_hermitian(3, 9))
    for seed in range(5):
        a = history.random_history(small_grid, 3, 2 * seed)
        b = history.random_history(small_grid, 3, 2 * seed + 1)
        assert abs(a.inner(j.apply(b)) - j.apply(a).inner(b)) < 1e-10


def test_constraint_matches_dense_oracle():
    grid = grid_clock.make_grid(16, 8.0)
    j = history.ConstraintOperator(grid, qubit(1.0))
    dense = j.dense()
    assert dense.shape == (32, 32)
    for seed in range(20):
        psi = history.random_history(grid, 2, seed)
        np.testing.assert_allclose(history.apply_constraint(j, psi).amplitudes.ravel(),
                                   dense @ psi.amplitudes.ravel(), atol=1e-12)


def test_dense_oracle_limits():
    with pytest.raises(GridError):
        history.ConstraintOperator(grid_clock.make_grid(64, 8.0), qubit(1.0)).dense()
    with pytest.raises(GridError):
        history.ConstraintOperator(grid_clock.make_grid(16, 8.0), oscillator(5, 1.0)).dense()


def test_history_solves_schrodinger_equation(fine_grid):
    for h in (qubit(1.0), oscillator(8, 1.0), random_hermitian(16, 7)):
        psi = history.build_history(fine_grid, h, uniform(h.dim))
        assert history.schrodinger_residual(psi, h) < 1e-6


def test_wrap_discontinuity_only_affects_periodic_residual(fine_grid, qubit_system):
    h, psi0 = qubit_system
    residual = history.constraint_residual(history.ConstraintOperator(fine_grid, h),
                                           history.build_history(fine_grid, h, psi0))
    assert residual.periodic > 1e-3
    assert residual.interior < 1e-8


def test_commensurate_history_is_annihilated(fine_grid):
    h = oscillator(4, 2 * np.pi / fine_grid.window)
    residual = history.constraint_residual(history.ConstraintOperator(fine_grid, h),
                                           history.build_history(fine_grid, h, uniform(4)))
    assert residual.periodic < 1e-10
    assert residual.interior < 1e-10


def test_constraint_convergence_improves_with_points(qubit_system):
    h, psi0 = qubit_system
    points = history.constraint_convergence(h, psi0, 20.0, [64, 128, 256, 512])
    assert [p.n_points for p in points] == [64, 128, 256, 512]
    assert points[0].order is None
    interior = [p.interior for p in points]
    assert all(b < a or b < 1e-10 for a, b in zip(interior, interior[1:]))
    assert interior[-1] < 1e-8


def test_spectral_lines_sit_at_negative_eigenfrequencies():
    grid = grid_clock.make_grid(4096, 200.0)
    h = qubit(1.0)
    report = history.spectral_support(history.build_history(grid, h, uniform(2)), h, capture_spacings=2, hann=True)
    assert report.nyquist_ok
    assert report.captured >= 0.99
    assert [line.frequency for line in report.lines] == [0.0, -1.0]
    assert report.lines[1].fraction == pytest.approx(0.5, abs=0.01)
    assert report.radius == pytest.approx(2 * grid.d_omega)


def test_stationary_history_sits_at_zero_frequency(small_grid):
    h = zero(2)
    report = history.spectral_support(history.build_history(small_grid, h, uniform(2)), h)
    assert report.captured == pytest.approx(1.0, abs=1e-12)
    mass = history.frequency_mass(history.build_history(small_grid, h, uniform(2)))
    assert small_grid.freqs[np.argmax(mass)] == 0.0


def test_nyquist_violation_flagged():
    grid = grid_clock.make_grid(16, 8.0)
    h = qubit(100.0)
    report = history.spectral_support(history.build_history(grid, h, SystemState([1, 0])), h)
    assert not report.nyquist_ok


def test_constant_history_residual_is_hamiltonian_action(fine_grid, qubit_system):
    h, psi0 = qubit_system
    constant = history.HistoryState(fine_grid, np.tile(psi0.amplitudes, (fine_grid.n_points, 1)))
    assert history.schrodinger_residual(constant, h) == pytest.approx(1 / np.sqrt(2), rel=1e-8)


def test_eigenstate_history_has_a_single_line():
    grid = grid_clock.make_grid(512, 200.0)
    h = qubit(1.0)
    line = history.build_history(grid, h, SystemState([0, 1]))
    report = history.spectral_support(line, h)
    assert report.lines[0].fraction < 0.05
    assert report.captured == pytest.approx(report.lines[1].fraction)
    assert 0.9 < report.captured < 0.99
    assert history.spectral_support(line, h, capture_spacings=2, hann=True).captured > report.captured


def test_spectral_support_needs_mass(small_grid):
    empty = history.HistoryState(small_grid, np.zeros((small_grid.n_points, 2)))
    with pytest.raises(NoSupportError):
        history.spectral_support(empty, qubit(1.0))
