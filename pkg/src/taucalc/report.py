"""Structured outcome of one verification: id, parameters, both sides, pass flag.

A report passes iff lhs == rhs exactly (rational equality, no tolerance).
Sweep-style checks (monotonicity, witness searches) encode themselves in
the same shape by putting the number of comparisons run on the lhs and
the number satisfied on the rhs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .rationals import format_rational

__all__ = ["Report", "reports_to_json", "summary_line"]


def _plain(value: Any) -> Any:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    return value


@dataclass
class Report:
    id: str
    params: dict[str, Any]
    lhs: Fraction
    rhs: Fraction
    ms: float = 0.0
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        out = {
            "id": self.id,
            "params": _plain(self.params),
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "pass": self.passed,
        }
        if self.extra:
            out["extra"] = _plain(self.extra)
        if timing:
            out["ms"] = round(self.ms, 3)
        return out

    def sort_key(self) -> tuple:
        # numeric ordering within an id: params of one id share a schema
        items = []
        for k in sorted(self.params):
            v = self.params[k]
            items.append((k, tuple(v) if isinstance(v, (list, tuple)) else v))
        return (self.id, items)


def reports_to_json(reports: list[Report], timing: bool = True) -> str:
    ordered = sorted(reports, key=Report.sort_key)
    return json.dumps([r.to_dict(timing=timing) for r in ordered], indent=None)


def summary_line(reports: list[Report]) -> str:
    passed = sum(1 for r in reports if r.passed)
    return f"PASS {passed}/{len(reports)}"
