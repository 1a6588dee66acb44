"""Validation reports listing violated invariants with witnesses."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Issue:
    kind: str  # "structure" or "axiom"
    rule: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        text = f"[{self.kind}] {self.rule} at {self.witness}"
        return f"{text}: {self.detail}" if self.detail else text


@dataclass
class ValidationReport:
    issues: list[Issue] = field(default_factory=list)
    #: per-rule cap on recorded witnesses; counts keep going past it
    max_witnesses: int = 20
    counts: dict[str, int] = field(default_factory=dict)

    def add(self, kind: str, rule: str, witness: tuple, detail: str = ""):
        n = self.counts.get(rule, 0)
        self.counts[rule] = n + 1
        if n < self.max_witnesses:
            self.issues.append(Issue(kind, rule, tuple(witness), detail))

    @property
    def ok(self) -> bool:
        return not self.issues

    @property
    def structural(self) -> list[Issue]:
        return [i for i in self.issues if i.kind == "structure"]

    @property
    def violations(self) -> list[Issue]:
        return [i for i in self.issues if i.kind == "axiom"]

    def rules(self) -> set[str]:
        return set(self.counts)

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "valid"
        return "\n".join(str(i) for i in self.issues)
