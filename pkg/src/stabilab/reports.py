"""Verification reports: one record per checked instance, both sides kept."""

from __future__ import annotations

import csv
import io
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

SCHEMA = "1"

Perturb = Callable[[str, dict, int], int]


@dataclass
class Instance:
    params: dict
    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class StabilityReport:
    """All instances of one statement over a parameter grid.

    ``kind`` is "theorem" for proved statements and "conjecture" for open
    ones; conjecture failures are findings rather than errors.
    """

    statement: str
    kind: str = "theorem"
    grid: dict = field(default_factory=dict)
    instances: list[Instance] = field(default_factory=list)
    elapsed: float = 0.0
    perturb: Perturb | None = field(default=None, repr=False, compare=False)

    def add(self, params: dict, lhs: int, rhs: int) -> Instance:
        if self.perturb is not None:
            lhs = self.perturb(self.statement, params, lhs)
        inst = Instance(dict(params), int(lhs), int(rhs))
        self.instances.append(inst)
        return inst

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.instances)

    def failures(self) -> list[Instance]:
        return [i for i in self.instances if not i.passed]

    def records(self) -> list[dict]:
        return [
            {"statement": self.statement, "params": _jsonable(i.params),
             "lhs": i.lhs, "rhs": i.rhs, "pass": i.passed}
            for i in self.instances
        ]

    def summary(self) -> dict:
        return {"statement": self.statement, "kind": self.kind, "grid": _jsonable(self.grid),
                "instances": len(self.instances), "failures": len(self.failures()),
                "pass": self.passed}

    @contextmanager
    def timed(self):
        start = time.perf_counter()
        try:
            yield self
        finally:
            self.elapsed += time.perf_counter() - start


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def to_document(reports: Iterable[StabilityReport], command: str = "") -> dict:
    """JSON document for a run.  Timing lives under "timing" only, so two runs
    compare equal once that key is dropped."""
    reports = list(reports)
    return {
        "schema": SCHEMA,
        "command": command,
        "summary": [r.summary() for r in reports],
        "records": [rec for r in reports for rec in r.records()],
        "timing": {r.statement: round(r.elapsed, 6) for r in reports},
    }


def dumps_json(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


CSV_COLUMNS = ("statement", "params", "lhs", "rhs", "pass")


def dumps_csv(reports: Iterable[StabilityReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        for rec in r.records():
            writer.writerow([rec["statement"], json.dumps(rec["params"], sort_keys=True),
                             rec["lhs"], rec["rhs"], str(rec["pass"]).lower()])
    return buf.getvalue()
