# coding=utf-8

import numpy as np
import pytest

from core import grid_clock
from core.system import qubit, uniform


@pytest.fixture
def small_grid():
    return grid_clock.make_grid(64, 16.0)


@pytest.fixture
def fine_grid():
    return grid_clock.make_grid(512, 20.0)


@pytest.fixture
def qubit_system():
    h = qubit(1.0)
    return h, uniform(h.dim)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def write_config(tmp_path):
    """Writes an INI document into ``tmp_path`` and returns its path."""
    def _write(text, name='scenario.ini'):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return str(path)
    return _write
