"""Tallies for the randomized and exhaustive law suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class LawReport:
    """Per-law instance counts plus every counterexample met along the way.

    ``checked`` counts instances where the law applied, ``skipped`` counts
    instances rejected by the law's side condition.
    """

    name: str
    checked: dict = field(default_factory=dict)
    skipped: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def tick(self, law, ok=True, counterexample=None):
        self.checked[law] = self.checked.get(law, 0) + 1
        self.skipped.setdefault(law, 0)
        if not ok:
            self.failures.append({"law": law, "counterexample": counterexample})

    def skip(self, law):
        self.checked.setdefault(law, 0)
        self.skipped[law] = self.skipped.get(law, 0) + 1

    @property
    def ok(self) -> bool:
        return not self.failures

    def failures_for(self, law):
        return [f for f in self.failures if f["law"] == law]

    def to_dict(self):
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": dict(sorted(self.checked.items())),
            "skipped": dict(sorted(self.skipped.items())),
            "failures": self.failures,
            "notes": list(self.notes),
            "stats": dict(sorted(self.stats.items())),
        }
