"""Report entries and their deterministic text/JSON serialization.

JSON schema (``version`` 1)::

    {"format": "ncham-report", "version": 1,
     "entries": [{"index": int, "line": int, "statement": str,
                  "status": "ok" | "pass" | "fail" | "error",
                  "outputs": [{"label": str, "value": str}],
                  "message": str}],
     "summary": {"statements": int, "errors": int, "passed": int, "failed": int}}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

REPORT_VERSION = 1
HEADER = f"# ncham report v{REPORT_VERSION}"


@dataclass
class Entry:
    index: int
    line: int
    statement: str
    status: str = "ok"
    outputs: list = field(default_factory=list)  # (label, value) string pairs
    message: str = ""

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "line": self.line,
            "statement": self.statement,
            "status": self.status,
            "outputs": [{"label": label, "value": value} for label, value in self.outputs],
            "message": self.message,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Entry":
        return cls(
            d["index"], d["line"], d["statement"], d["status"], [(o["label"], o["value"]) for o in d["outputs"]], d["message"]
        )


@dataclass
class Report:
    entries: list = field(default_factory=list)

    def summary(self) -> dict:
        return {
            "statements": len(self.entries),
            "errors": sum(e.status == "error" for e in self.entries),
            "passed": sum(e.status == "pass" for e in self.entries),
            "failed": sum(e.status == "fail" for e in self.entries),
        }

    @property
    def ok(self) -> bool:
        s = self.summary()
        return s["errors"] == 0 and s["failed"] == 0

    def to_dict(self) -> dict:
        return {
            "format": "ncham-report",
            "version": REPORT_VERSION,
            "entries": [e.to_dict() for e in self.entries],
            "summary": self.summary(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        if d.get("format") != "ncham-report" or d.get("version") != REPORT_VERSION:
            raise ValueError("not an ncham report of a supported version")
        return cls([Entry.from_dict(e) for e in d["entries"]])


def format_entry(e: Entry) -> str:
    lines = [f"> {e.statement}"]
    for label, value in e.outputs:
        lines.append(f"  {label} = {value}" if label else f"  {value}")
    if e.status == "error":
        lines.append(f"  ERROR {e.message}")
    elif e.status in ("pass", "fail"):
        verdict = "PASS" if e.status == "pass" else "FAIL"
        lines.append(f"  {verdict}" + (f" {e.message}" if e.message else ""))
    elif e.message:
        lines.append(f"  # {e.message}")
    return "\n".join(lines)


def emit(report: Report, fmt: str = "text") -> bytes:
    if fmt == "json":
        return (json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    s = report.summary()
    parts = [HEADER]
    parts += [format_entry(e) for e in report.entries]
    parts.append(
        f"# summary: {s['statements']} statements, {s['errors']} errors, "
        f"{s['passed']} checks passed, {s['failed']} failed"
    )
    return ("\n".join(parts) + "\n").encode("utf-8")
