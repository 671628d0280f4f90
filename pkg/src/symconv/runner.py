"""Sweep an identity over a parameter grid and summarize the outcome."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import UsageError
from .grid import ParameterGrid
from .identities import InstanceResult, check_instance, get_identity, params_to_json

FAILURE_CAP = 100


@dataclass
class CheckReport:
    identity: str
    grid: dict
    checked: int = 0
    failed: int = 0
    failures: list[InstanceResult] = field(default_factory=list)
    millis: int = 0
    instances: list[InstanceResult] | None = None

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "identity": self.identity,
            "grid": self.grid,
            "checked": self.checked,
            "failed": self.failed,
            "failures": [f.to_dict() for f in self.failures],
        }
        if timing:
            out["millis"] = self.millis
        return out


def _check(task: tuple[str, dict]) -> InstanceResult:
    return check_instance(*task)


def run_grid(
    identity_id: str,
    grid: ParameterGrid | None = None,
    workers: int = 1,
    keep_instances: bool = False,
    failure_cap: int = FAILURE_CAP,
) -> CheckReport:
    """Check every in-domain grid point of ``identity_id``.

    Points are visited in canonical order and results are collected in that
    same order, so the report does not depend on ``workers``.
    """
    if workers < 1:
        raise UsageError("workers must be a positive integer")
    ident = get_identity(identity_id)
    grid = grid or ident.default_grid
    start = time.perf_counter()
    tasks = [(identity_id, params) for params in ident.points(grid)]

    if workers == 1 or len(tasks) < 2:
        results = map(_check, tasks)
        pool = None
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        chunk = max(1, len(tasks) // (workers * 8))
        results = pool.map(_check, tasks, chunksize=chunk)

    report = CheckReport(identity_id, grid.describe(ident.loops))
    if keep_instances:
        report.instances = []
    try:
        for res in results:
            report.checked += 1
            if keep_instances:
                report.instances.append(res)
            if not res.equal:
                report.failed += 1
                if len(report.failures) < failure_cap:
                    report.failures.append(res)
    finally:
        if pool is not None:
            pool.shutdown()
    report.millis = int((time.perf_counter() - start) * 1000)
    return report


__all__ = ["CheckReport", "run_grid", "FAILURE_CAP", "params_to_json"]
