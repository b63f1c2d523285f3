# coding=utf-8
import time

import pytest

from core.multithreader import MultiThreader, run_jobs


def _slow_square(x, delay):
    time.sleep(delay)
    return x * x


def _fail(message):
    raise RuntimeError(message)


def test_results_keep_submission_order():
    threader = MultiThreader()
    threader.go([_slow_square, (1, 0.2)], [_slow_square, (2, 0.1)], [_slow_square, (3, 0.0)])
    assert threader.join_threads() == [1, 4, 9]


def test_job_without_arguments():
    threader = MultiThreader()
    threader.go([lambda: 'done'])
    assert threader.join_threads() == ['done']


def test_earliest_failure_is_raised():
    threader = MultiThreader()
    threader.go([_slow_square, (1, 0.0)], [_fail, ('second',)], [_fail, ('third',)])
    with pytest.raises(RuntimeError, match='second'):
        threader.join_threads()


@pytest.mark.parametrize('threaded', [True, False])
def test_run_jobs(threaded):
    jobs = [[_slow_square, (n, 0.0)] for n in range(5)]
    assert run_jobs(jobs, threaded) == [0, 1, 4, 9, 16]


def test_lock_is_shared():
    threader = MultiThreader()
    assert threader.get_lock() is threader.lock
