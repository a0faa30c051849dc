"""Verification report plumbing: ordered check results with witnesses."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass


@dataclass
class CheckResult:
    check_id: str
    anchor: str
    status: str = "pass"  # pass | fail | skipped
    witness: str | None = None
    sample_spec: str = ""
    duration_ms: int = 0


class _CheckContext:
    def __init__(self, report, check_id, anchor, sample_spec):
        self.result = CheckResult(check_id, anchor, sample_spec=sample_spec)
        self._report = report
        self._t0 = None

    def fail(self, witness):
        self.result.status = "fail"
        self.result.witness = str(witness)

    def skip(self, reason):
        self.result.status = "skipped"
        self.result.witness = str(reason)

    @property
    def failed(self):
        return self.result.status == "fail"

    def __enter__(self):
        self._t0 = time.monotonic()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.result.duration_ms = int((time.monotonic() - self._t0) * 1000)
        if exc_type is not None:
            self.result.status = "fail"
            self.result.witness = f"exception {exc_type.__name__}: {exc}"
            self._report.checks.append(self.result)
            return True
        self._report.checks.append(self.result)
        return False


class Report:
    """Ordered collection of check results for one suite run."""

    def __init__(self, meta=None):
        self.meta = dict(meta or {})
        self.checks: list[CheckResult] = []

    def check(self, check_id, anchor="plumbing", sample_spec=""):
        spec = sample_spec or self.meta.get("sample_spec", "")
        return _CheckContext(self, check_id, anchor, spec)

    def add_skipped(self, check_id, anchor, reason):
        self.checks.append(CheckResult(check_id, anchor, "skipped", str(reason)))

    def extend(self, other):
        self.checks.extend(other.checks)

    @property
    def passed(self):
        return all(c.status != "fail" for c in self.checks)

    def counts(self):
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def failures(self):
        return [c for c in self.checks if c.status == "fail"]

    def to_dict(self):
        return {
            "meta": {k: self.meta[k] for k in sorted(self.meta)},
            "summary": self.counts(),
            "checks": [
                {
                    "check_id": c.check_id,
                    "anchor": c.anchor,
                    "status": c.status,
                    "witness": c.witness,
                    "sample_spec": c.sample_spec,
                    "duration_ms": c.duration_ms,
                }
                for c in self.checks
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self):
        lines = []
        for k in sorted(self.meta):
            lines.append(f"# {k} = {self.meta[k]}")
        for c in self.checks:
            line = f"[{c.status.upper():7s}] {c.check_id} ({c.anchor}) {c.duration_ms}ms"
            if c.witness:
                line += f"\n          witness: {c.witness}"
            lines.append(line)
        cnt = self.counts()
        lines.append(f"# {cnt['pass']} passed, {cnt['fail']} failed, {cnt['skipped']} skipped")
        return "\n".join(lines)
