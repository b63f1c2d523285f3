# coding=utf-8
import threading


class MultiThreader:
    """
    Runs sweep points in daemonic threads and hands their results back in submission order, so a sweep merges
    deterministically no matter which point finishes first. numpy and scipy.fft release the GIL in their kernels,
    which is where the points spend their time.

    :ivar threads: A list of all threads to coordinate them.
    :type threads: list
    :vartype threads: list
    :ivar lock: A Lock that can be acquired from all instances to share that specific thread lock.
    :type lock: threading.Lock
    :vartype lock: threading.Lock
    """

    def __init__(self):
        self.threads = []
        self.lock = threading.Lock()
        self._results = []
        self._errors = []

    def _target(self, slot, function, args):
        try:
            value = function(*args)
        except BaseException as e:  # re-raised in join_threads
            with self.lock:
                self._errors.append((slot, e))
        else:
            self._results[slot] = value

    def go(self, *args):
        """
        Starts one thread per job. First you call `go`, then `join_threads`. Each job is a list
        [`function`, `arguments`] or just [`function`].

        :param args: All jobs planned to be threaded.
        """
        for line in args:
            slot = len(self._results)
            self._results.append(None)
            call_args = tuple(line[1]) if len(line) > 1 else ()
            thread = threading.Thread(target=self._target, args=(slot, line[0], call_args))
            thread.daemon = True
            thread.start()
            self.threads.append(thread)

    def join_threads(self):
        """
        Join all threads given by `go` in an interruptable fashion.

        :return: The job results in the order the jobs were given.
        :rtype: list
        :raise Exception: the exception of the earliest failing job, after every thread has finished.
        """
        for t in self.threads:
            while t.is_alive():
                t.join(5)
        if self._errors:
            raise sorted(self._errors, key=lambda error: error[0])[0][1]
        return list(self._results)

    def get_lock(self):
        """
        Returns the Lock object for this instance and main thread.

        :return: threading.Lock
        """
        return self.lock


def run_jobs(jobs, threaded=True):
    """
    Runs ``[function, arguments]`` jobs on a :class:`MultiThreader`, or inline when ``threaded`` is off.

    :type jobs: list
    :type threaded: bool
    :rtype: list
    """
    if not threaded:
        return [job[0](*(job[1] if len(job) > 1 else ())) for job in jobs]
    threader = MultiThreader()
    threader.go(*jobs)
    return threader.join_threads()
