# coding=utf-8
"""
Finite-dimensional system Hamiltonians and their exact unitary evolution.

Propagation goes through the cached eigendecomposition, never through a time stepper, so the results here serve as
the reference everything else is checked against.

Presets are written as ``name(args)``:

- ``zero(d)``
- ``qubit(omega0)`` - ``diag(0, omega0)``
- ``oscillator(d, omega0)`` - ``omega0·a†a`` truncated to ``d`` levels
- ``random_hermitian(d, seed)`` - ``(A + A†)/2`` with complex Gaussian ``A``

An explicit matrix is a row-major literal ``"a, b; c, d"`` with entries in Python's complex syntax.
"""
import logging
import re
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from core.exceptions import DimensionMismatch, HamiltonianError

HERMITIAN_TOLERANCE = 1e-12
NORM_TOLERANCE = 1e-10

logger = logging.getLogger('numerics')

_CALL = re.compile(r'^\s*(?P<name>[A-Za-z_]\w*)\s*(?:\((?P<args>.*)\))?\s*$')
_NAMED = re.compile(r'^\s*[A-Za-z_]')


def parse_call(text):
    """
    Splits ``"name(a, b, key=c)"`` into its name, positional and keyword arguments. Numbers are converted with
    :func:`parse_number`; a bare ``"name"`` has no arguments.

    :type text: str
    :rtype: tuple[str, list, dict]
    :raise ValueError: if the text is not a call expression.
    """
    match = _CALL.match(text)
    if not match:
        raise ValueError("cannot parse {!r} as name(args)".format(text))
    args, kwargs = [], {}
    raw = (match.group('args') or '').strip()
    for part in filter(None, (p.strip() for p in raw.split(','))):
        if '=' in part:
            key, value = (s.strip() for s in part.split('=', 1))
            kwargs[key] = parse_number(value)
        else:
            args.append(parse_number(part))
    return match.group('name'), args, kwargs


def parse_number(text):
    """``int`` when the literal is integral, else ``float``, else ``complex``."""
    text = text.strip().replace(' ', '')
    for kind in (int, float, complex):
        try:
            return kind(text)
        except ValueError:
            continue
    raise ValueError("{!r} is not a number".format(text))


def parse_matrix(text):
    """
    Row-major complex matrix literal, rows separated by ``;`` and entries by ``,``.

    :type text: str
    :rtype: numpy.ndarray
    :raise HamiltonianError: on ragged rows or unparsable entries.
    """
    try:
        rows = [[complex(entry.strip().replace(' ', '')) for entry in row.split(',')]
                for row in text.strip().strip(';').split(';')]
    except ValueError as e:
        raise HamiltonianError("bad matrix literal {!r}: {}".format(text, e))
    if len({len(row) for row in rows}) != 1:
        raise HamiltonianError("matrix literal has rows of unequal length")
    return np.array(rows, dtype=complex)


@dataclass(frozen=True)
class Hamiltonian:
    """
    Hermitian ``d×d`` matrix with its eigendecomposition, ``matrix = V·diag(ω)·V†``.

    :ivar matrix: The (symmetrised) Hermitian matrix.
    :vartype matrix: numpy.ndarray
    :ivar eigenvalues: Ascending eigenfrequencies ``ω_k`` (ħ = 1).
    :vartype eigenvalues: numpy.ndarray
    :ivar eigenvectors: Orthonormal eigenvectors as columns.
    :vartype eigenvectors: numpy.ndarray
    :ivar label: How it was specified, for reports.
    :vartype label: str
    """
    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    label: str = field(default='matrix')

    @property
    def dim(self):
        return self.matrix.shape[0]

    def apply(self, amplitudes):
        """``H`` on the last axis of ``amplitudes`` (a single state or a stack of rows)."""
        return np.asarray(amplitudes) @ self.matrix.T


def from_matrix(matrix, label='matrix'):
    """
    Validates Hermiticity and diagonalises.

    :param matrix: Square complex array.
    :type matrix: numpy.ndarray
    :param label: Descriptive label kept on the result.
    :type label: str
    :rtype: Hamiltonian
    :raise HamiltonianError: if the matrix is not square, not finite or not Hermitian to 1e-12 relative.
    """
    matrix = np.array(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
        raise HamiltonianError("Hamiltonian must be a non-empty square matrix, got shape {}".format(matrix.shape))
    if not np.all(np.isfinite(matrix)):
        raise HamiltonianError("Hamiltonian has non-finite entries")
    asymmetry = np.max(np.abs(matrix - matrix.conj().T))
    scale = max(1.0, np.max(np.abs(matrix)))
    if asymmetry > HERMITIAN_TOLERANCE * scale:
        raise HamiltonianError("Hamiltonian is not Hermitian (max asymmetry {:.1e})".format(asymmetry))
    matrix = (matrix + matrix.conj().T) / 2
    eigenvalues, eigenvectors = linalg.eigh(matrix)
    for array in (matrix, eigenvalues, eigenvectors):
        array.flags.writeable = False
    logger.debug('Diagonalised {} (d={}), spectrum [{:g}, {:g}]'.format(label, matrix.shape[0],
                                                                       eigenvalues[0], eigenvalues[-1]))
    return Hamiltonian(matrix, eigenvalues, eigenvectors, label)


def zero(d):
    return from_matrix(np.zeros((d, d)), 'zero({})'.format(d))


def qubit(omega0=1.0):
    return from_matrix(np.diag([0.0, omega0]), 'qubit({:g})'.format(omega0))


def oscillator(d, omega0=1.0):
    """``omega0·a†a`` on the lowest ``d`` levels; eigenvalues ``omega0·{0, …, d-1}``."""
    return from_matrix(np.diag(omega0 * np.arange(d, dtype=float)), 'oscillator({}, {:g})'.format(d, omega0))


def random_hermitian(d, seed):
    """Seeded Gaussian-unitary-ensemble draw ``(A + A†)/2``."""
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return from_matrix((a + a.conj().T) / 2, 'random_hermitian({}, {})'.format(d, seed))


PRESETS = {
    'zero': zero,
    'qubit': qubit,
    'oscillator': oscillator,
    'random_hermitian': random_hermitian,
}


def make_hamiltonian(expression):
    """
    Builds a :class:`Hamiltonian` from a preset expression, a matrix literal, or an array.

    :param expression: ``"qubit(1)"``, ``"0, 1; 1, 0"``, a nested list or an ndarray.
    :rtype: Hamiltonian
    :raise HamiltonianError: on unknown presets, bad arguments or non-Hermitian input.
    """
    if isinstance(expression, Hamiltonian):
        return expression
    if not isinstance(expression, str):
        return from_matrix(expression)
    if not _NAMED.match(expression):
        return from_matrix(parse_matrix(expression), 'matrix')
    try:
        name, args, kwargs = parse_call(expression)
    except ValueError as e:
        raise HamiltonianError(str(e))
    if name not in PRESETS:
        raise HamiltonianError("unknown Hamiltonian preset {!r}, expected one of {}".format(name, sorted(PRESETS)))
    if name == 'random_hermitian' and len(args) + len(kwargs) < 2:
        raise HamiltonianError("random_hermitian needs an explicit seed: random_hermitian(d, seed)")
    for value in list(args) + list(kwargs.values()):
        if isinstance(value, complex):
            raise HamiltonianError("preset arguments must be real, got {!r}".format(value))
    try:
        h = PRESETS[name](*args, **kwargs)
    except TypeError as e:
        raise HamiltonianError("bad arguments for {}: {}".format(name, e))
    return h


@dataclass(frozen=True)
class SystemState:
    """
    Pure state of the ``d``-level system.

    :ivar amplitudes: Length-d complex array.
    :vartype amplitudes: numpy.ndarray
    """
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        amplitudes.flags.writeable = False
        object.__setattr__(self, 'amplitudes', amplitudes)

    @property
    def dim(self):
        return self.amplitudes.shape[0]

    def inner(self, other):
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self):
        norm = self.norm()
        if norm == 0:
            raise ValueError("cannot normalise the zero state")
        return SystemState(self.amplitudes / norm)

    def fidelity(self, other):
        """``|⟨self|other⟩|`` for unit states."""
        return abs(self.inner(other))


def basis(d, k=0):
    if not 0 <= k < d:
        raise ValueError("basis index {} outside 0..{}".format(k, d - 1))
    amplitudes = np.zeros(d, dtype=complex)
    amplitudes[k] = 1
    return SystemState(amplitudes)


def uniform(d):
    return SystemState(np.full(d, 1 / np.sqrt(d), dtype=complex))


def random_state(d, seed):
    rng = np.random.default_rng(seed)
    return SystemState(rng.normal(size=d) + 1j * rng.normal(size=d)).normalized()


def make_state(expression, dim):
    """
    Builds a normalised :class:`SystemState` of dimension ``dim``.

    :param expression: ``"basis(k)"``, ``"uniform"``, ``"plus"``, ``"random(seed)"``, a comma-separated complex list,
                 or an array of amplitudes. Explicit amplitudes are normalised.
    :type dim: int
    :rtype: SystemState
    :raise DimensionMismatch: if explicit amplitudes have the wrong length.
    :raise ValueError: on unknown presets or a zero vector.
    """
    if isinstance(expression, SystemState):
        amplitudes = expression.amplitudes
    elif isinstance(expression, str) and _NAMED.match(expression):
        name, args, _ = parse_call(expression)
        if name == 'basis':
            return basis(dim, *args)
        if name in ('uniform', 'plus'):
            return uniform(dim)
        if name == 'random':
            if not args:
                raise ValueError("random state needs an explicit seed: random(seed)")
            return random_state(dim, *args)
        raise ValueError("unknown state preset {!r}".format(name))
    elif isinstance(expression, str):
        amplitudes = [complex(entry.strip().replace(' ', '')) for entry in expression.split(',')]
    else:
        amplitudes = expression
    state = SystemState(amplitudes)
    if state.dim != dim:
        raise DimensionMismatch("state has {} amplitudes but the system has dimension {}".format(state.dim, dim))
    if abs(state.norm() - 1) > NORM_TOLERANCE:
        logger.info('Normalising initial state (norm was {:.6g})'.format(state.norm()))
        state = state.normalized()
    return state


def _check_dims(h, psi0):
    if h.dim != psi0.dim:
        raise DimensionMismatch("Hamiltonian has dimension {} but the state has {}".format(h.dim, psi0.dim))


def propagate(h, psi0, times):
    """
    ``e^{-iHt}ψ0`` for every ``t`` in ``times``, as rows of a ``len(times)×d`` array.

    :type h: Hamiltonian
    :type psi0: SystemState
    :type times: numpy.ndarray
    :rtype: numpy.ndarray
    """
    _check_dims(h, psi0)
    coefficients = h.eigenvectors.conj().T @ psi0.amplitudes
    phases = np.exp(-1j * np.outer(np.asarray(times, dtype=float), h.eigenvalues))
    return (phases * coefficients) @ h.eigenvectors.T


def evolve(h, psi0, t):
    """
    ``V·diag(e^{-iω_k t})·V†·ψ0``; ``t = 0`` returns ``psi0`` itself.

    :type h: Hamiltonian
    :type psi0: SystemState
    :type t: float
    :rtype: SystemState
    :raise DimensionMismatch: if the dimensions differ.
    """
    _check_dims(h, psi0)
    if t == 0:
        return psi0
    return SystemState(propagate(h, psi0, [t])[0])


def energy(h, psi):
    """``⟨ψ|H|ψ⟩``."""
    _check_dims(h, psi)
    return float(np.vdot(psi.amplitudes, h.apply(psi.amplitudes)).real)
