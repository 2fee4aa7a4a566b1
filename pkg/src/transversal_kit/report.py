"""JSON-lines check reports and the JSON file formats."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Optional

from . import quasigroup as qg
from .transversal import FiniteGroup


class FileFormatError(OSError):
    """Unreadable file or malformed JSON (CLI exit code 3)."""


def _clean(value):
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if hasattr(value, "item") and not isinstance(value, (list, dict)):
        return _clean(value.item())
    return value


class Report:
    """Ordered list of check records plus a trailing summary line."""

    def __init__(self, command: str, **context):
        self.command = command
        self.context = context
        self.lines: list[dict] = []

    def add(self, check: str, passed: Optional[bool] = None, **fields) -> dict:
        rec = {"check": check}
        rec.update(self.context)
        rec.update(fields)
        if passed is not None:
            rec["passed"] = bool(passed)
        self.lines.append(_clean(rec))
        return rec

    def residual(self, check: str, value: float, tol: float, **fields) -> dict:
        return self.add(check, passed=value <= tol, max_residual=float(value), tol=tol, **fields)

    @property
    def failures(self) -> list[dict]:
        return [r for r in self.lines if r.get("passed") is False]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        judged = [r for r in self.lines if "passed" in r]
        return {
            "summary": True,
            "command": self.command,
            **_clean(self.context),
            "checks": len(judged),
            "failed": len(self.failures),
            "failed_checks": [r["check"] for r in self.failures],
            "passed": self.ok,
        }

    def to_jsonl(self) -> str:
        out = io.StringIO()
        for rec in self.lines + [self.summary()]:
            out.write(json.dumps(rec))
            out.write("\n")
        return out.getvalue()

    def to_csv(self, rows: Optional[list[dict]] = None) -> str:
        rows = rows if rows is not None else [
            {"check": r["check"], "passed": r.get("passed", ""), "max_residual": r.get("max_residual", ""),
             "tol": r.get("tol", "")}
            for r in self.lines
        ]
        out = io.StringIO()
        if rows:
            writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        return out.getvalue()


def load_json(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: malformed JSON ({exc})") from exc
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc.strerror or exc}") from exc


def write_json(path, data) -> None:
    try:
        Path(path).write_text(json.dumps(data) + "\n", encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc.strerror or exc}") from exc


def read_quasigroup(path) -> qg.RightQuasigroup:
    return qg.from_dict(load_json(path))


def write_quasigroup(path, q: qg.RightQuasigroup) -> None:
    write_json(path, q.to_dict())


def read_group(path) -> FiniteGroup:
    return FiniteGroup.from_dict(load_json(path))


def write_group(path, G: FiniteGroup) -> None:
    write_json(path, G.to_dict())
