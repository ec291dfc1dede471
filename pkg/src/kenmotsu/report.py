"""Check records, aggregated reports and their JSON / text renderings."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckRecord:
    """Outcome of one named numerical check.

    ``mode="bound"`` records pass when the residual is below tolerance;
    ``mode="witness"`` records pass when it is at or above tolerance, which is
    how non-vanishing statements (a tensor is *not* zero, a map is *not*
    Riemannian) are certified.  Informational records are reported but do not
    enter the summary verdict.
    """

    name: str
    anchor: str
    max_residual: float | None
    tolerance: float
    points_sampled: int = 0
    applicable: bool = True
    mode: str = "bound"
    informational: bool = False
    note: str = ""
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if not self.applicable:
            return "inapplicable"
        r = self.max_residual
        if r is None or math.isnan(r):
            return "fail"
        if self.mode == "witness":
            return "pass" if r >= self.tolerance else "fail"
        return "pass" if r < self.tolerance else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "paper_anchor": self.anchor,
            "max_residual": _clean(self.max_residual),
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "applicable": self.applicable,
            "mode": self.mode,
            "informational": self.informational,
            "points_sampled": self.points_sampled,
            "note": self.note,
            "details": {k: _clean(v) for k, v in self.details.items()},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CheckRecord":
        return cls(
            name=d["name"],
            anchor=d["paper_anchor"],
            max_residual=_number(d["max_residual"]),
            tolerance=d["tolerance"],
            points_sampled=d.get("points_sampled", 0),
            applicable=d.get("applicable", True),
            mode=d.get("mode", "bound"),
            informational=d.get("informational", False),
            note=d.get("note", ""),
            details=d.get("details", {}),
        )


def _number(v):
    return float(v) if isinstance(v, str) else v


def inapplicable(name: str, anchor: str, tolerance: float, reason: str) -> CheckRecord:
    return CheckRecord(name, anchor, None, tolerance, applicable=False, note=reason)


def _clean(v):
    # json has no inf/nan; keep reports parseable
    if isinstance(v, float):
        if math.isnan(v) or math.isinf(v):
            return str(v)
        return float(f"{v:.6e}")
    if isinstance(v, dict):
        return {k: _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    return v


@dataclass
class VerificationReport:
    source: str
    map: str
    samples: int
    seed: int
    tolerances: dict
    checks: list[CheckRecord] = field(default_factory=list)
    profile: dict = field(default_factory=dict)

    @property
    def summary(self) -> str:
        required = [c for c in self.checks if c.applicable and not c.informational]
        return "pass" if all(c.passed for c in required) else "fail"

    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if c.applicable and not c.informational and not c.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "map": self.map,
            "samples": self.samples,
            "seed": self.seed,
            "tolerances": self.tolerances,
            "profile": _clean(self.profile),
            "summary": self.summary,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        lines = [
            f"source={self.source} map={self.map} samples={self.samples} seed={self.seed}",
        ]
        for k, v in self.profile.items():
            lines.append(f"  {k}: {_clean(v)}")
        for c in self.checks:
            res = "-" if c.max_residual is None else f"{c.max_residual:.3e}"
            flag = " (info)" if c.informational else ""
            lines.append(
                f"[{c.verdict.upper():12s}] {c.name} <{c.anchor}> residual={res} "
                f"{'>=' if c.mode == 'witness' else '<'} {c.tolerance:.1e}{flag}"
                + (f"  # {c.note}" if c.note else "")
            )
        lines.append(f"summary: {self.summary}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(
            source=d["source"],
            map=d["map"],
            samples=d["samples"],
            seed=d["seed"],
            tolerances=d["tolerances"],
            checks=[CheckRecord.from_dict(c) for c in d["checks"]],
            profile=d.get("profile", {}),
        )
