"""Check reports: violations are data, not exceptions.

Every check carries an identity label (the equation-numbering scheme used in
reports and documented in the README) so report consumers can see exactly
which identity a verdict refers to.
"""

from __future__ import annotations

from dataclasses import dataclass, field

MAX_WITNESSES = 8


@dataclass
class Check:
    name: str
    label: str
    ok: bool
    witnesses: list = field(default_factory=list)
    detail: str = ""

    def to_json(self):
        return {
            "check": self.name,
            "label": self.label,
            "ok": self.ok,
            "witnesses": [str(w) for w in self.witnesses[:MAX_WITNESSES]],
            "detail": self.detail,
        }


@dataclass
class Report:
    subject: str
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name, label, ok, witnesses=None, detail=""):
        self.checks.append(Check(name, label, bool(ok), witnesses or [], detail))
        return self.checks[-1]

    def failures(self):
        return [c for c in self.checks if not c.ok]

    def to_json(self):
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }

    def __repr__(self):
        status = "ok" if self.ok else "FAIL[" + ",".join(c.name for c in self.failures()) + "]"
        return f"Report({self.subject}: {status})"
