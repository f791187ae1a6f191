"""Verification records shared by the inequality, identity and construction checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .polytope import Polytope

__all__ = ["InequalityReport", "inequality_report", "identity_report", "serialize"]

REL_TOL = 1e-9
ABS_TOL = 1e-12


@dataclass
class InequalityReport:
    """Outcome of checking ``lhs <= rhs`` (or ``lhs == rhs`` for identities).

    ``ratio`` is ``lhs / rhs`` and NaN when ``rhs <= 0``.
    """

    name: str
    lhs: float
    rhs: float
    ratio: float
    passed: bool
    kind: str = "inequality"
    instance: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "kind": self.kind,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": None if math.isnan(self.ratio) else self.ratio,
            "pass": self.passed,
            "seed": self.seed,
            "extra": self.extra,
            "instance": self.instance,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "InequalityReport":
        ratio = d.get("ratio")
        return cls(
            name=d["name"],
            lhs=d["lhs"],
            rhs=d["rhs"],
            ratio=math.nan if ratio is None else ratio,
            passed=d["pass"],
            kind=d.get("kind", "inequality"),
            instance=d.get("instance", {}),
            seed=d.get("seed"),
            extra=d.get("extra", {}),
        )


def _ratio(lhs: float, rhs: float) -> float:
    return lhs / rhs if rhs > 0 else math.nan


def inequality_report(name: str, lhs: float, rhs: float, *, rtol: float = REL_TOL,
                      atol: float = ABS_TOL, instance: dict | None = None,
                      extra: dict | None = None, seed: int | None = None) -> InequalityReport:
    """Build a report for ``lhs <= rhs``, passing when ``lhs <= rhs (1 + rtol) + atol``.

    If ``rhs`` is zero the check passes only for ``lhs <= atol``.
    """
    lhs, rhs = float(lhs), float(rhs)
    if rhs > 0:
        ok = lhs <= rhs * (1 + rtol) + atol
    else:
        ok = lhs <= atol
    return InequalityReport(name, lhs, rhs, _ratio(lhs, rhs), bool(ok), "inequality",
                            instance or {}, seed, extra or {})


def identity_report(name: str, lhs: float, rhs: float, *, rtol: float = REL_TOL,
                    atol: float = ABS_TOL, instance: dict | None = None,
                    extra: dict | None = None, seed: int | None = None) -> InequalityReport:
    """Build a report for ``lhs == rhs`` up to ``rtol`` relative and ``atol`` absolute."""
    lhs, rhs = float(lhs), float(rhs)
    ok = abs(lhs - rhs) <= rtol * max(abs(lhs), abs(rhs)) + atol
    return InequalityReport(name, lhs, rhs, _ratio(lhs, rhs), bool(ok), "identity",
                            instance or {}, seed, extra or {})


def serialize(obj: Any) -> Any:
    """JSON-ready form of polytopes, matrices and containers of them."""
    if isinstance(obj, Polytope):
        return obj.vertices.tolist()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, dict):
        return {k: serialize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [serialize(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj
