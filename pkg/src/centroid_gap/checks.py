"""CheckReport: the one-record result format every verifier emits.

A check compares a left-hand side against a right-hand side of an
inequality lhs <= rhs.  The margin is rhs - lhs; a check passes when the
margin is not worse than a small negative tolerance.  Geometry-derived
checks use a tolerance relative to the magnitude of the quantities
involved, pure scalar inequalities use an absolute one.
"""

from __future__ import annotations

from dataclasses import dataclass

REL_TOL = 1e-9     # default relative tolerance for geometry-derived checks
ABS_TOL = 1e-12    # absolute tolerance for pure scalar inequalities


@dataclass(frozen=True)
class CheckReport:
    name: str
    lhs: float
    rhs: float
    margin: float
    passed: bool
    context: str = ""

    def as_dict(self):
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "pass": self.passed,
            "context": self.context,
        }


def rel_check(name, lhs, rhs, tol=REL_TOL, context=""):
    """Check lhs <= rhs with tolerance relative to max(1, |lhs|, |rhs|)."""
    lhs = float(lhs)
    rhs = float(rhs)
    margin = rhs - lhs
    scale = max(1.0, abs(lhs), abs(rhs))
    return CheckReport(name, lhs, rhs, margin, margin >= -tol * scale, context)


def abs_check(name, lhs, rhs, tol=ABS_TOL, context=""):
    """Check lhs <= rhs with an absolute tolerance."""
    lhs = float(lhs)
    rhs = float(rhs)
    margin = rhs - lhs
    return CheckReport(name, lhs, rhs, margin, margin >= -tol, context)


def worst_of(reports):
    """The report with the smallest margin (ties keep the first)."""
    worst = reports[0]
    for r in reports[1:]:
        if r.margin < worst.margin:
            worst = r
    return worst
