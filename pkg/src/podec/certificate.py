"""Structured evidence returned by every theorem-level check.

A certificate never hides a verdict inside an exception: hypothesis failures,
counterexamples and sampling limits are all data, so drivers can distinguish
"claim is false" from "inputs out of scope" from "checked on a sample only".
"""

from __future__ import annotations

from dataclasses import dataclass, field

HOLDS = "holds"
FAILS = "fails"
HYPOTHESIS_NOT_SATISFIED = "hypothesis-not-satisfied"
SAMPLED = "sampled"


@dataclass
class Certificate:
    check: str
    status: str
    hypotheses: dict[str, bool] = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return self.status == HOLDS

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "status": self.status,
            "hypotheses": dict(self.hypotheses),
            "details": self.details,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out

    @classmethod
    def holds(cls, check, hypotheses=None, **details):
        return cls(check, HOLDS, hypotheses or {}, details)

    @classmethod
    def fails(cls, check, counterexample, hypotheses=None, **details):
        return cls(check, FAILS, hypotheses or {}, details, counterexample)

    @classmethod
    def sampled(cls, check, hypotheses=None, **details):
        return cls(check, SAMPLED, hypotheses or {}, details)

    @classmethod
    def skipped(cls, check, hypotheses, failed, witness=None):
        """Hypothesis `failed` did not hold; the conclusion was not evaluated."""
        details = {"failed_hypothesis": failed}
        if witness is not None:
            details["hypothesis_witness"] = witness
        return cls(check, HYPOTHESIS_NOT_SATISFIED, hypotheses, details)
