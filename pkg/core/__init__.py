# coding=utf-8
from .baseclass import ScenarioBase
from .grid_clock import TimeGrid, make_grid
from .history import ConstraintOperator, HistoryState, build_history
from .logprovider import setup_logging
from .multithreader import MultiThreader
from .runner import ScenarioRunner
from .system import Hamiltonian, SystemState, make_hamiltonian, make_state

__version__ = '0.1'
