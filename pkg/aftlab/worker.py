import logging
import threading

from aftlab.errors import PreconditionFailure

log = logging.getLogger(__name__)


class InstanceWorker:
    """
    # Checks a batch of theorem instances on its own thread.
    :param check: callable TheoremInstance -> VerdictRecord
    """
    def __init__(self, check, instances=None):
        self.check = check
        self.instances = list(instances or [])
        self.records = []       # (instance_id, VerdictRecord or PreconditionFailure)
        self.result = 0         # number of agreements
        self._thread = None
        self.error = None

    """
    Appends an instance to the batch
    """
    def add_instance(self, instance):
        self.instances.append(instance)

    """
    Runs the batch as a thread
    """
    def run(self):
        self._thread = threading.Thread(target=self._run, name=f"instance-worker-{id(self):x}")
        self._thread.start()

    def _run(self):
        try:
            for instance in self.instances:
                try:
                    outcome = self.check(instance)
                except PreconditionFailure as failure:
                    outcome = failure
                self.records.append((instance.instance_id, outcome))
        except Exception as exc:
            log.exception("worker stopped")
            self.error = exc
        self.result = sum(1 for _, r in self.records if getattr(r, "agreement", False))

    """
    Waits for the batch to finish
    """
    def join(self):
        if self._thread is not None:
            self._thread.join()
        if self.error is not None:
            raise self.error


def run_workers(instances, check, jobs=1):
    """Round-robin the instances over `jobs` workers; records come back sorted by instance id."""
    jobs = max(1, int(jobs))
    workers = [InstanceWorker(check) for _ in range(jobs)]
    for n, instance in enumerate(instances):
        workers[n % jobs].add_instance(instance)
    for w in workers:
        w.run()
    for w in workers:
        w.join()
    log.debug("%d workers finished, %d agreements", jobs, sum(w.result for w in workers))
    return sorted((r for w in workers for r in w.records), key=lambda r: r[0])
