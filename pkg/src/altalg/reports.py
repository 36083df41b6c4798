"""Machine-readable run reports.

A Report is a list of named check records plus input echo; overall status
is pass exactly when every non-skipped record passes.  JSON output follows
the schema shipped next to this module; timings are the only field allowed
to vary between identically-seeded runs, and suppressing them makes the
output byte-stable."""

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import List, Optional

SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
CAPPED = "resource-capped"

_STATUSES = (PASS, FAIL, SKIPPED, CAPPED)


@dataclass
class CheckRecord:
    name: str
    status: str
    witness: Optional[str] = None
    ms: Optional[float] = None

    def __post_init__(self):
        if self.status not in _STATUSES:
            raise ValueError(f"unknown status {self.status!r}")


@dataclass
class Report:
    command: str
    inputs: dict
    seed: int
    checks: List[CheckRecord] = field(default_factory=list)

    @property
    def overall(self) -> str:
        bad = [c for c in self.checks if c.status in (FAIL, CAPPED)]
        return FAIL if bad else PASS

    @property
    def exit_code(self) -> int:
        if any(c.status == FAIL for c in self.checks):
            return 1
        if any(c.status == CAPPED for c in self.checks):
            return 3
        return 0

    def strip_timings(self) -> None:
        for c in self.checks:
            c.ms = None

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "seed": self.seed,
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "witness": c.witness,
                    "ms": None if c.ms is None else round(c.ms, 3),
                }
                for c in self.checks
            ],
            "overall": self.overall,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"altalg {self.command}"]
        for key in sorted(self.inputs):
            lines.append(f"  {key}: {self.inputs[key]}")
        lines.append(f"  seed: {self.seed}")
        for c in self.checks:
            tail = "" if c.ms is None else f"  ({c.ms:.1f} ms)"
            lines.append(f"check {c.name}: {c.status}{tail}")
            if c.witness:
                for wl in c.witness.splitlines():
                    lines.append(f"    {wl}")
        lines.append(f"overall: {self.overall}")
        return "\n".join(lines) + "\n"


def load_schema() -> dict:
    text = resources.files("altalg").joinpath("report_schema.json").read_text()
    return json.loads(text)
