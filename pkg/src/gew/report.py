"""Check reports shared by the drivers and the CLI."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass
class Report:
    name: str
    status: str
    source: str = ""
    details: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_json(self, timings: bool = True) -> dict:
        out = {"name": self.name, "status": self.status, "source": self.source, "details": self.details}
        if timings:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out

    def to_text(self) -> str:
        head = f"[{self.status.upper()}] {self.name}"
        if self.source:
            head += f"  ({self.source})"
        lines = [head]
        for k, v in self.details.items():
            lines.append(f"    {k}: {_short(v)}")
        return "\n".join(lines)


def _short(v: Any, limit: int = 160) -> str:
    text = v if isinstance(v, str) else json.dumps(v, sort_keys=True, default=str)
    return text if len(text) <= limit else text[: limit - 3] + "..."


@contextmanager
def timed():
    box = {"ms": 0.0}
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box["ms"] = (time.perf_counter() - t0) * 1000.0


def status_of(ok: bool) -> str:
    return PASS if ok else FAIL


def dump(reports, timings: bool = True) -> str:
    return json.dumps(
        {"reports": [r.to_json(timings) for r in reports], "ok": all(r.ok for r in reports)},
        indent=2,
        sort_keys=True,
    )
