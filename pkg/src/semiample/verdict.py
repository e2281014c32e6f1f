from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check.

    ``status`` is one of ``"pass"``, ``"fail"`` or ``"inconclusive"``.  On
    failure ``witness`` holds the smallest counterexample found; ``details``
    carries check-specific extras (certificates, reasons, statistics).
    """

    status: str
    witness: Any = None
    details: dict = field(default_factory=dict, compare=False)

    @property
    def passed(self):
        return self.status == PASS

    @property
    def failed(self):
        return self.status == FAIL

    def __bool__(self):
        return self.passed


def passed(**details):
    return Verdict(PASS, None, details)


def failed(witness, **details):
    return Verdict(FAIL, witness, details)


def inconclusive(reason, **details):
    return Verdict(INCONCLUSIVE, None, {"reason": reason, **details})
