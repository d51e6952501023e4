"""Result records shared by the checkers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Violation:
    relation: str
    indices: dict
    lhs: str
    rhs: str

    def to_json(self) -> dict:
        return {"relation": self.relation, "indices": self.indices, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class CheckResult:
    """Outcome of a window sweep.

    ``checked`` counts identity instances evaluated; ``violations`` may be
    truncated (see ``total_violations``).
    """

    name: str
    window: int
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    total_violations: int = 0
    notes: list[str] = field(default_factory=list)
    derived: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.total_violations == 0

    def record(self, v: Violation, limit: int | None) -> None:
        self.total_violations += 1
        if limit is None or len(self.violations) < limit:
            self.violations.append(v)
