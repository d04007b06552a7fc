"""Command reports: a JSON machine format and a plain-text table format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    command: str
    inputs_digest: str
    result: dict[str, Any]
    notes: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "result": self.result,
            "notes": list(self.notes),
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Report":
        return cls(d["command"], d["inputs_digest"], d["result"], list(d["notes"]), list(d["warnings"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_table(self) -> str:
        out = [f"# {self.command}", f"inputs: {self.inputs_digest[:16]}", ""]
        out += _render(self.result, 0)
        if self.notes:
            out += ["", "notes:"] + [f"  - {n}" for n in self.notes]
        if self.warnings:
            out += ["", "warnings:"] + [f"  ! {w}" for w in self.warnings]
        return "\n".join(out) + "\n"


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
        return "(" + ", ".join(_scalar(x) for x in v) + ")"
    return str(v)


def _table(rows: list[dict]) -> list[str]:
    cols = list(rows[0])
    cells = [[_scalar(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    fmt = "  ".join("{:<%d}" % w for w in widths)
    lines = [fmt.format(*cols), fmt.format(*("-" * w for w in widths))]
    lines += [fmt.format(*row).rstrip() for row in cells]
    return lines


def _render(d: dict, indent: int) -> list[str]:
    pad = "  " * indent
    out = []
    for key, v in d.items():
        if isinstance(v, dict):
            out.append(f"{pad}{key}:")
            out += _render(v, indent + 1)
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            out.append(f"{pad}{key}:")
            out += [pad + "  " + line for line in _table(v)]
        elif isinstance(v, list) and v and any(isinstance(x, (dict, list)) for x in v):
            out.append(f"{pad}{key}:")
            out += [f"{pad}  - {_scalar(x)}" for x in v]
        elif isinstance(v, list) and len(v) > 1 and all(isinstance(x, str) for x in v):
            out.append(f"{pad}{key}:")
            out += [f"{pad}  - {x}" for x in v]
        else:
            out.append(f"{pad}{key}: {_scalar(v)}")
    return out


__all__ = ["Report"]
