"""Result records returned by identity checkers and theorem evaluators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

NOT_WITHIN_CAP = "NotWithinCap"
UNEVALUATED = "unevaluated"
SKIPPED = "skipped(TooLarge)"


@dataclass
class Verdict:
    """Outcome of checking an identity: ``holds`` or the first counterexample."""

    holds: bool
    counterexample: tuple | None = None
    checked: int = 0
    mode: str = "exhaustive"
    note: str | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        out: dict[str, Any] = {"holds": self.holds, "checked": self.checked, "mode": self.mode}
        if self.counterexample is not None:
            out["counterexample"] = _jsonable(self.counterexample)
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class TheoremVerdict:
    """Named conditions of a theorem evaluated on one instance.

    ``consistent`` is None when the instance lies outside the theorem's
    hypotheses or when a needed condition could not be evaluated.
    """

    theorem_id: str
    conditions: dict[str, dict] = field(default_factory=dict)
    consistent: bool | None = None
    in_hypothesis: bool = True
    notes: list[str] = field(default_factory=list)

    def set(self, name: str, value: Any, **payload: Any) -> None:
        self.conditions[name] = {"value": value, **payload}

    def value(self, name: str) -> Any:
        return self.conditions[name]["value"]

    @property
    def outcome(self) -> str:
        if not self.in_hypothesis:
            return "outside-hypothesis"
        if self.consistent is None:
            return "undetermined"
        return "pass" if self.consistent else "fail"

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem_id,
            "conditions": _jsonable(self.conditions),
            "consistent": self.consistent,
            "in_hypothesis": self.in_hypothesis,
            "notes": list(self.notes),
        }


def _jsonable(obj: Any) -> Any:
    """Recursively turn tuples/numpy scalars into JSON-friendly values."""
    import numpy as np

    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return obj
