from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class RelationReport:
    relation: str
    residual: float
    tol: float
    note: str = field(default="", compare=False)

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol

    def as_dict(self) -> dict:
        d = {"relation": self.relation, "residual": self.residual,
             "tol": self.tol, "pass": self.passed}
        if self.note:
            d["note"] = self.note
        return d


def all_pass(reports) -> bool:
    return all(r.passed for r in reports)


def worst(reports) -> float:
    return max((r.residual for r in reports), default=0.0)


def failures(reports) -> list:
    return [r for r in reports if not r.passed]
