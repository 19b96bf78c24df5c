"""Reports produced by the command line: text and structured (JSON) forms."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .linalg import ExactMatrix
from .scalars import format_scalar, scalar_to_json

SCHEMA_VERSION = 1


@dataclass
class Report:
    command: str
    argv: list[str]
    status: str = "ok"
    exit_code: int = 0
    input_digest: Optional[str] = None
    result: dict = field(default_factory=dict)
    lines: list[str] = field(default_factory=list)
    timing: Optional[float] = None

    def say(self, line: str = ""):
        self.lines.append(line)

    def as_dict(self, with_timing: bool = False) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "argv": list(self.argv),
            "status": self.status,
            "exit_code": self.exit_code,
            "input_digest": self.input_digest,
            "result": self.result,
        }
        if with_timing and self.timing is not None:
            out["timing_seconds"] = round(self.timing, 6)
        return out


def format_report(report: Report, mode: str = "text", with_timing: bool = False) -> bytes:
    if mode == "structured":
        body = json.dumps(report.as_dict(with_timing), indent=2, sort_keys=True, ensure_ascii=False)
        return (body + "\n").encode("utf-8")
    if mode != "text":
        raise ValueError(f"unknown report mode {mode!r}")
    lines = list(report.lines)
    if with_timing and report.timing is not None:
        lines.append(f"time: {report.timing:.3f}s")
    return ("\n".join(lines) + "\n").encode("utf-8")


def digest_bytes(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def vector_json(v: Sequence) -> list:
    return [scalar_to_json(x) for x in v]


def matrix_json(m: ExactMatrix) -> list[list]:
    return [vector_json(m.row(i)) for i in range(m.rows)]


def matrix_text(m: ExactMatrix, indent: str = "  ") -> list[str]:
    cells = [[format_scalar(x) for x in m.row(i)] for i in range(m.rows)]
    width = max((len(c) for row in cells for c in row), default=1)
    return [indent + "[" + " ".join(c.rjust(width) for c in row) + "]" for row in cells]


def combination_text(coeffs: dict, names: Sequence[str] | None = None) -> str:
    """``{name: coef}`` as ``2 X1 - X2``; zero as ``0``."""
    if not coeffs:
        return "0"
    order = names if names is not None else sorted(coeffs)
    parts = []
    for nm in order:
        c = coeffs.get(nm)
        if not c:
            continue
        s = format_scalar(c)
        if s == "1":
            term = nm
        elif s == "-1":
            term = "-" + nm
        else:
            term = f"{s}{nm}" if ("+" not in s[1:] and "-" not in s[1:]) else f"({s}){nm}"
        parts.append(term)
    out = " + ".join(parts)
    return out.replace("+ -", "- ")


def bracket_table_text(names: Sequence[str], entry: Callable[[str, str], dict]) -> list[str]:
    """Bracket table laid out with rows ``[row, column]``."""
    cells = [[combination_text(entry(r, c), names) for c in names] for r in names]
    first = max(len(n) for n in names)
    width = max(max(len(x) for row in cells for x in row), max(len(n) for n in names))
    header = " " * first + " | " + " ".join(n.rjust(width) for n in names)
    out = [header, "-" * len(header)]
    for nm, row in zip(names, cells):
        out.append(nm.rjust(first) + " | " + " ".join(x.rjust(width) for x in row))
    return out


def bracket_table_json(names: Sequence[str], entry: Callable[[str, str], dict]) -> list[list[dict]]:
    return [[{k: scalar_to_json(v) for k, v in entry(r, c).items()} for c in names] for r in names]
