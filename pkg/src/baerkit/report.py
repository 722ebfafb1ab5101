"""Report schema and the on-disk result cache.

Reports are plain dicts rendered as canonical JSON (sorted keys, fixed
separators) so that cold runs are byte-identical.  Wall-clock timing is
attached only on request and never enters the canonical form.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

SCHEMA_VERSION = "1"
TOOL_VERSION = "0.1.0"

CACHE_ENV_VAR = "BAERKIT_CACHE_DIR"


@dataclass
class SuiteResult:
    """Outcome of one verification suite, with every bound it used recorded."""

    suite: str
    passed: bool
    bounds: dict[str, Any] = field(default_factory=dict)
    checks: list[dict] = field(default_factory=list)
    counterexample: Optional[dict] = None

    def to_dict(self) -> dict:
        out = {
            "suite": self.suite,
            "passed": self.passed,
            "bounds": dict(self.bounds),
            "checks": list(self.checks),
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def run_report(spec_text: str, suite: str, bounds: dict, payload: dict,
               passed: bool, timing: Optional[float] = None) -> dict:
    rep = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "spec": spec_text,
        "suite": suite,
        "bounds": bounds,
        "passed": passed,
        "result": payload,
    }
    if timing is not None:
        rep["timing_seconds"] = timing
    return rep


def canonical_json(report: dict) -> str:
    """Deterministic rendering; the timing side-channel is dropped."""
    clean = {k: v for k, v in report.items() if k != "timing_seconds"}
    return json.dumps(clean, sort_keys=True, separators=(",", ":")) + "\n"


def render_text(report: dict) -> str:
    lines = [
        f"spec: {report.get('spec', '')}",
        f"suite: {report.get('suite', '')}",
        f"bounds: {json.dumps(report.get('bounds', {}), sort_keys=True)}",
        f"passed: {report.get('passed')}",
    ]
    result = report.get("result", {})
    flags = result.get("flags")
    if flags:
        for name in sorted(flags):
            val = flags[name]
            shown = "skipped" if val is None else str(val).lower()
            lines.append(f"  {name}: {shown}")
    checks = result.get("checks")
    if checks:
        for c in checks:
            lines.append(f"  check {c.get('name')}: {'ok' if c.get('passed') else 'FAIL'}")
    if "timing_seconds" in report:
        lines.append(f"timing_seconds: {report['timing_seconds']:.3f}")
    return "\n".join(lines) + "\n"


class ReportCache:
    """File cache keyed by (tool version, canonical spec, suite, bounds)."""

    def __init__(self, directory: Optional[str] = None):
        if directory is None:
            directory = os.environ.get(CACHE_ENV_VAR) or os.path.join(
                os.path.expanduser("~"), ".cache", "baerkit"
            )
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)

    def key(self, spec_text: str, suite: str, bounds: dict) -> str:
        blob = json.dumps(
            [TOOL_VERSION, spec_text, suite, bounds], sort_keys=True
        ).encode()
        return hashlib.sha256(blob).hexdigest()

    def path(self, spec_text: str, suite: str, bounds: dict) -> Path:
        return self.dir / (self.key(spec_text, suite, bounds) + ".json")

    def get(self, spec_text: str, suite: str, bounds: dict) -> Optional[dict]:
        p = self.path(spec_text, suite, bounds)
        if p.exists():
            return json.loads(p.read_text())
        return None

    def put(self, spec_text: str, suite: str, bounds: dict, report: dict) -> None:
        p = self.path(spec_text, suite, bounds)
        tmp = p.with_suffix(".tmp." + str(os.getpid()))
        tmp.write_text(canonical_json(report))
        os.replace(tmp, p)  # atomic: safe with concurrent readers
