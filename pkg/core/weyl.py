# coding=utf-8
"""
Weyl sequences for the constraint operator.

Two regularisations of the improper history state are built by modulating the clock index with an envelope:

- ``gaussian(n)``: ``f(t) = (2/(πn))^{1/4}·e^{-t²/n}``
- ``box(m)``: ``f(t) = β(t/m)/√m`` with ``β = 1`` inside ``(-1/2, 1/2)``, ``1/2`` on the edges, 0 outside

For the Gaussian family ``‖𝕁Ψₙ‖² = 1/n`` vanishes while ``‖T̂𝕁Ψₙ‖² = 3/4`` for every ``n``, so the sequence that
certifies ``0`` in the essential spectrum of ``𝕁`` does not certify it for ``T̂𝕁``. Both operator orderings are
reported; they are complex conjugates of each other and differ by ``i``.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from core import grid_clock
from core.exceptions import WindowTooSmall
from core.history import ConstraintOperator, apply_time, build_history

GAUSSIAN_WINDOW_SCALE = 10      # L >= 10·√n
BOX_WINDOW_FRACTION = 0.8       # m <= 0.8·L
EDGE_TOLERANCE = 1e-6
ROUNDOFF_FLOOR = 1e-13

logger = logging.getLogger('numerics')


@dataclass(frozen=True)
class WeylKind:
    """
    :ivar name: ``'gaussian'`` or ``'box'``.
    :ivar parameter: ``n`` for the Gaussian, ``m`` for the box.
    """
    name: str
    parameter: float

    def __post_init__(self):
        if self.name not in ('gaussian', 'box'):
            raise ValueError("Weyl kind must be 'gaussian' or 'box', got {!r}".format(self.name))
        if not self.parameter > 0:
            raise ValueError("Weyl parameter must be positive, got {!r}".format(self.parameter))

    @classmethod
    def gaussian(cls, n):
        return cls('gaussian', float(n))

    @classmethod
    def box(cls, m):
        return cls('box', float(m))

    def required_window(self):
        if self.name == 'gaussian':
            return GAUSSIAN_WINDOW_SCALE * np.sqrt(self.parameter)
        return self.parameter / BOX_WINDOW_FRACTION


def gaussian_envelope(times, n):
    return (2 / (np.pi * n)) ** 0.25 * np.exp(-times ** 2 / n)


def box_envelope(times, m, atol=1e-9):
    """``β(t/m)/√m`` with half weight on grid points that land on ``±m/2``."""
    distance = np.abs(times) - m / 2
    beta = np.where(distance < -atol, 1.0, 0.0)
    beta[np.abs(distance) <= atol] = 0.5
    return beta / np.sqrt(m)


def box_edge_on_grid(grid, m):
    """True when ``±m/2`` coincide with grid points."""
    cells = m / 2 / grid.dt
    return bool(abs(cells - round(cells)) <= 1e-9)


@dataclass(frozen=True)
class WeylState:
    """
    :ivar kind: Envelope family and parameter.
    :ivar state: Envelope-modulated history, tagged ``'unit'``; not renormalised, see ``norm_sq``.
    :ivar envelope: ``f(t_k)``.
    :ivar norm_sq: Quadrature norm² of ``state``.
    :ivar boundary_ok: Envelope negligible in the window edge zone.
    :ivar edge_on_grid: For boxes, whether the edges fall on grid points (always True for Gaussians).
    """
    kind: WeylKind
    state: object
    envelope: np.ndarray
    norm_sq: float
    boundary_ok: bool
    edge_on_grid: bool = True


def make_weyl(grid, h, psi0, kind, edge_tolerance=EDGE_TOLERANCE):
    """
    Modulates the history of ``(h, psi0)`` with the envelope of ``kind``.

    :type grid: core.grid_clock.TimeGrid
    :type h: core.system.Hamiltonian
    :type psi0: core.system.SystemState
    :type kind: WeylKind
    :param edge_tolerance: Relative envelope size allowed in the edge zone.
    :type edge_tolerance: float
    :rtype: WeylState
    :raise WindowTooSmall: when the window cannot hold the envelope; ``required`` names the smallest window.
    """
    required = kind.required_window()
    if grid.window < required * (1 - 1e-12):
        raise WindowTooSmall("window too small for {}({:g}), need L >= {:g}"
                             .format(kind.name, kind.parameter, required), required)
    edge_on_grid = True
    if kind.name == 'gaussian':
        envelope = gaussian_envelope(grid.times, kind.parameter)
    else:
        envelope = box_envelope(grid.times, kind.parameter)
        edge_on_grid = box_edge_on_grid(grid, kind.parameter)
        if not edge_on_grid:
            logger.warning('Box edges ±{:g} fall between grid points (dt={:g}); edge smeared over one cell.'
                           .format(kind.parameter / 2, grid.dt))
    boundary_ok = grid_clock.boundary_negligible(grid, envelope, tolerance=edge_tolerance)
    if not boundary_ok:
        logger.warning('{}({:g}) envelope is not negligible at the window edge (L={:g}).'
                       .format(kind.name, kind.parameter, grid.window))
    history = build_history(grid, h, psi0)
    state = history.with_amplitudes(envelope[:, None] * history.amplitudes, 'unit')
    return WeylState(kind, state, envelope, state.norm() ** 2, boundary_ok, edge_on_grid)


@dataclass(frozen=True)
class WeylReport:
    """
    Norms and sandwiches of one Weyl state. ``*_target`` fields are closed forms, set only for Gaussians.

    :ivar constraint_norm_sq: ``‖𝕁Ψ‖²``.
    :ivar t_amplified_norm_sq: ``‖T̂𝕁Ψ‖²``.
    :ivar sandwich_tj: ``⟨Ψ|T̂𝕁|Ψ⟩``.
    :ivar sandwich_jt: ``⟨Ψ|𝕁T̂|Ψ⟩``.
    :ivar commutator_check: ``sandwich_tj - sandwich_jt``, ``i·‖Ψ‖²`` in the continuum.
    :ivar adjoint_residual: ``|sandwich_tj - conj(sandwich_jt)|``.
    :ivar jt_residual_zero: ``‖𝕁T̂Ψ‖²``.
    :ivar jt_residual_sandwich: ``‖(𝕁T̂ - λ)Ψ‖²`` at ``λ = sandwich_jt``.
    """
    kind: str
    n_or_m: float
    n_points: int
    window: float
    norm_sq: float
    constraint_norm_sq: float
    t_amplified_norm_sq: float
    sandwich_tj: complex
    sandwich_jt: complex
    commutator_check: complex
    adjoint_residual: float
    jt_residual_zero: float
    jt_residual_sandwich: float
    boundary_ok: bool
    edge_on_grid: bool
    constraint_norm_sq_target: Optional[float] = None
    t_amplified_target: Optional[float] = None
    sandwich_modulus_target: Optional[float] = None

    def as_row(self):
        """Flat mapping for CSV tables."""
        return {
            'kind': self.kind, 'n_or_m': self.n_or_m, 'N': self.n_points, 'L': self.window,
            'norm_sq': self.norm_sq,
            'constraint_norm_sq': self.constraint_norm_sq, 'constraint_norm_sq_target': self.constraint_norm_sq_target,
            't_amplified_norm_sq': self.t_amplified_norm_sq, 't_amplified_target': self.t_amplified_target,
            'sandwich_tj_re': self.sandwich_tj.real, 'sandwich_tj_im': self.sandwich_tj.imag,
            'sandwich_jt_re': self.sandwich_jt.real, 'sandwich_jt_im': self.sandwich_jt.imag,
            'commutator_re': self.commutator_check.real, 'commutator_im': self.commutator_check.imag,
            'jt_residual_zero': self.jt_residual_zero, 'jt_residual_sandwich': self.jt_residual_sandwich,
        }


def weyl_report(w, j):
    """
    :type w: WeylState
    :type j: core.history.ConstraintOperator
    :rtype: WeylReport
    """
    psi = w.state
    j_psi = j.apply(psi)
    t_j_psi = apply_time(j_psi)
    j_t_psi = j.apply(apply_time(psi))
    sandwich_tj = psi.inner(t_j_psi)
    sandwich_jt = psi.inner(j_t_psi)
    shifted = j_t_psi.with_amplitudes(j_t_psi.amplitudes - sandwich_jt * psi.amplitudes)
    targets = {}
    if w.kind.name == 'gaussian':
        targets = dict(constraint_norm_sq_target=1 / w.kind.parameter, t_amplified_target=0.75,
                       sandwich_modulus_target=0.5)
    return WeylReport(
        kind=w.kind.name, n_or_m=w.kind.parameter, n_points=psi.grid.n_points, window=psi.grid.window,
        norm_sq=w.norm_sq,
        constraint_norm_sq=j_psi.norm() ** 2,
        t_amplified_norm_sq=t_j_psi.norm() ** 2,
        sandwich_tj=sandwich_tj,
        sandwich_jt=sandwich_jt,
        commutator_check=sandwich_tj - sandwich_jt,
        adjoint_residual=abs(sandwich_tj - np.conj(sandwich_jt)),
        jt_residual_zero=j_t_psi.norm() ** 2,
        jt_residual_sandwich=shifted.norm() ** 2,
        boundary_ok=w.boundary_ok,
        edge_on_grid=w.edge_on_grid,
        **targets)


def gaussian_point(h, psi0, n, spacing, edge_tolerance=EDGE_TOLERANCE):
    """
    Report for ``gaussian(n)`` on the sweep grid ``L = 10·√n`` at fixed spacing.

    :rtype: WeylReport
    """
    grid = grid_clock.grid_for_spacing(spacing, GAUSSIAN_WINDOW_SCALE * np.sqrt(n))
    w = make_weyl(grid, h, psi0, WeylKind.gaussian(n), edge_tolerance)
    return weyl_report(w, ConstraintOperator(grid, h))


@dataclass(frozen=True)
class ThetaProfile:
    """
    Normalised clock test function ``θ``, evaluable off the grid for the boundary predictions.

    :ivar shape: ``'gaussian'`` (``e^{-(t-t0)²/2}``) or ``'power'`` (``(1+t²)^{-(1/2+ε)}``).
    :ivar center: ``t0`` for the Gaussian.
    :ivar epsilon: ``ε`` for the power law.
    :ivar scale: Normalisation constant on the grid it was built for.
    """
    shape: str
    center: float
    epsilon: float
    scale: float

    def raw(self, t):
        t = np.asarray(t, dtype=float)
        if self.shape == 'gaussian':
            return np.exp(-(t - self.center) ** 2 / 2)
        return (1 + t ** 2) ** -(0.5 + self.epsilon)

    def __call__(self, t):
        return self.scale * self.raw(t)


def make_theta(grid, shape='gaussian', center=0.5, epsilon=0.05):
    """
    :param shape: ``'gaussian'`` or ``'power'``.
    :type shape: str
    :rtype: ThetaProfile
    """
    if shape not in ('gaussian', 'power'):
        raise ValueError("theta shape must be 'gaussian' or 'power', got {!r}".format(shape))
    if shape == 'power' and not epsilon > 0:
        raise ValueError("power-law theta needs epsilon > 0 to be square integrable")
    profile = ThetaProfile(shape, float(center), float(epsilon), 1.0)
    norm = grid_clock.ClockVector(profile.raw(grid.times), grid).norm()
    return ThetaProfile(shape, float(center), float(epsilon), 1 / norm)


@dataclass(frozen=True)
class ProbeRow:
    """
    One ``m`` of the weak-convergence probe.

    :ivar a: ``⟨Θ|𝕁B_m⟩`` with ``B_m = √m·Ψ'_m``.
    :ivar b: ``⟨Θ|T̂𝕁B_m⟩``.
    :ivar a_pred: ``i·c·[θ*(m/2) - θ*(-m/2)]``.
    :ivar b_pred: ``i·c·(m/2)·[θ*(m/2) + θ*(-m/2)]``.
    """
    m: float
    a: complex
    a_pred: complex
    b: complex
    b_pred: complex
    edge_on_grid: bool

    @property
    def a_ratio(self):
        return _ratio(self.a, self.a_pred)

    @property
    def b_ratio(self):
        return _ratio(self.b, self.b_pred)


def _ratio(value, predicted):
    if abs(predicted) < ROUNDOFF_FLOOR:
        return None
    return abs(value) / abs(predicted)


def weak_convergence_probe(grid, theta, h, psi0, m_values, phi0=None):
    """
    Overlaps of the test state ``Θ = θ(t)·e^{-iHt}|φ0⟩`` with ``𝕁`` and ``T̂𝕁`` applied to the box sequence.

    For square-integrable ``θ`` the first tends to zero; the second tends to ``i(m/2)[θ*(m/2)+θ*(-m/2)]``, which
    only vanishes when ``θ`` decays faster than ``1/√t``.

    :type grid: core.grid_clock.TimeGrid
    :type theta: ThetaProfile
    :type h: core.system.Hamiltonian
    :type psi0: core.system.SystemState
    :param m_values: Increasing box widths, each at most ``0.8·L``.
    :param phi0: System part of the test state, ``psi0`` when omitted.
    :rtype: list[ProbeRow]
    """
    m_values = [float(m) for m in m_values]
    if any(b <= a for a, b in zip(m_values, m_values[1:])):
        raise ValueError("m values must be strictly increasing")
    if m_values and m_values[-1] > BOX_WINDOW_FRACTION * grid.window:
        required = m_values[-1] / BOX_WINDOW_FRACTION
        raise WindowTooSmall("window too small for box({:g}), need L >= {:g}".format(m_values[-1], required),
                             required)
    phi0 = psi0 if phi0 is None else phi0
    overlap = phi0.inner(psi0)
    j = ConstraintOperator(grid, h)
    test = build_history(grid, h, phi0)
    test = test.with_amplitudes(theta(grid.times)[:, None] * test.amplitudes)
    t_test = apply_time(test)
    rows = []
    for m in m_values:
        w = make_weyl(grid, h, psi0, WeylKind.box(m))
        spread = w.state.with_amplitudes(np.sqrt(m) * w.state.amplitudes)
        j_spread = j.apply(spread)
        upper, lower = np.conj(theta(m / 2)), np.conj(theta(-m / 2))
        rows.append(ProbeRow(
            m=m,
            a=test.inner(j_spread),
            a_pred=complex(1j * overlap * (upper - lower)),
            b=t_test.inner(j_spread),
            b_pred=complex(1j * overlap * (m / 2) * (upper + lower)),
            edge_on_grid=w.edge_on_grid))
        logger.debug('m={:g}: |a|={:.3e}, |b|={:.3e}'.format(m, abs(rows[-1].a), abs(rows[-1].b)))
    return rows
