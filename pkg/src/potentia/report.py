"""Machine-readable run reports (JSON, CSV, plain table)."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field


def cell(value):
    """Report cell: finite numbers pass through, others become flags."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, complex):
        return str(value)
    x = float(value)
    if math.isnan(x):
        return "singular"
    if math.isinf(x):
        return "divergent"
    if float(x).is_integer() and isinstance(value, int):
        return int(value)
    return x


@dataclass
class RunReport:
    command: str
    parameters: dict
    columns: list
    rows: list = field(default_factory=list)
    verdicts: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def failed(self) -> bool:
        return any(v.startswith("FAIL") for v in self.verdicts)

    def as_dict(self, deterministic: bool = False) -> dict:
        out = {
            "command": self.command,
            "parameters": {k: cell(v) for k, v in self.parameters.items()},
            "columns": list(self.columns),
            "rows": [[cell(v) for v in row] for row in self.rows],
            "verdicts": list(self.verdicts),
        }
        if not deterministic:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self, deterministic: bool = False) -> str:
        # float repr is the shortest string that round-trips exactly
        return json.dumps(self.as_dict(deterministic), indent=2, allow_nan=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_csv_text(cell(v)) for v in row])
        return buf.getvalue()

    def to_table(self) -> str:
        rows = [[_short(cell(v)) for v in row] for row in self.rows]
        widths = [max(len(str(c)) for c in col) for col in zip(self.columns, *rows)]
        lines = [self.command]
        lines += [f"  {k} = {v}" for k, v in self.parameters.items()]
        lines.append("  ".join(str(c).rjust(w) for c, w in zip(self.columns, widths)))
        lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in rows]
        lines += self.verdicts
        return "\n".join(lines) + "\n"

    def render(self, fmt: str, deterministic: bool = False) -> str:
        if fmt == "json":
            return self.to_json(deterministic) + "\n"
        if fmt == "csv":
            return self.to_csv()
        return self.to_table()


def _csv_text(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _short(value) -> str:
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)
