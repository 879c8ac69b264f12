"""Pass/fail verdict records shared by every check in the package.

A Certificate is a frozen statement that one named check passed or failed,
together with the evidence needed to audit it later: witnesses
(counterexamples on failure, exhibits on success) and a mapping of exact
values.  Nothing stored here is ever a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def fmt_exact(value) -> str:
    """Render a value for reports: Fractions as p/q, containers recursively."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (tuple, list)):
        return "(" + ",".join(fmt_exact(v) for v in value) + ")"
    if value is None:
        return "none"
    return str(value)


@dataclass(frozen=True)
class Certificate:
    """Outcome of one named check.

    subject    short slug naming what was checked
    passed     the verdict
    witnesses  counterexamples on failure, exhibits on success; a failing
               certificate must carry at least one
    notes      one line of human-readable context
    data       sorted (key, value) pairs of exact supporting values
    """

    subject: str
    passed: bool
    witnesses: tuple = ()
    notes: str = ""
    data: tuple = ()

    def __post_init__(self):
        if not self.passed and not self.witnesses:
            raise ValueError("failing certificate must carry a witness")

    @classmethod
    def make(cls, subject, passed, witnesses=(), notes="", **data):
        items = tuple(sorted(data.items()))
        return cls(subject, passed, tuple(witnesses), notes, items)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def get(self, key, default=None):
        for k, v in self.data:
            if k == key:
                return v
        return default

    def summary(self) -> str:
        line = f"{self.verdict.upper()} {self.subject}"
        if self.notes:
            line += f": {self.notes}"
        return line
