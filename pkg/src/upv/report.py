"""Structured pass/fail reports: the universal output of every verification.

Reports serialize to line-delimited JSON records with a fixed key order so a
report stream is byte-identical across runs with the same configuration.
Wall-clock time is measured but zeroed in serialized streams unless timings
are explicitly requested, keeping the default artifact deterministic.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Dict

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
UNSTABLE = "unstable"


def _sanitize(value: Any) -> Any:
    """Force witnesses/params into plain JSON types (math objects -> str)."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, dict):
        return {str(k): _sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = list(value)
        if isinstance(value, (set, frozenset)):
            items = sorted(items, key=repr)
        return [_sanitize(v) for v in items]
    return str(value)


@dataclass
class CheckReport:
    check_id: str
    status: str
    witness: Any = ""
    wall_ms: float = 0.0
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.witness = _sanitize(self.witness)
        self.params = _sanitize(self.params or {})

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_record(self, timings: bool = False) -> dict:
        return {
            "check": self.check_id,
            "status": self.status,
            "witness": self.witness,
            "wall_ms": round(self.wall_ms, 3) if timings else 0.0,
            "params": self.params,
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_record(timings), sort_keys=False,
                          separators=(", ", ": "))

    @staticmethod
    def from_json(line: str) -> "CheckReport":
        rec = json.loads(line)
        return CheckReport(rec["check"], rec["status"], rec.get("witness", ""),
                           rec.get("wall_ms", 0.0), rec.get("params", {}))


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *a):
        self.ms = (time.perf_counter() - self.t0) * 1000.0
        return False


def report(check_id: str, ok: bool, witness: Any = "", wall_ms: float = 0.0,
           params: Dict[str, Any] | None = None) -> CheckReport:
    return CheckReport(check_id, PASS if ok else FAIL, witness, wall_ms,
                       params or {})
