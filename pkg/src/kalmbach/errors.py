"""Exception hierarchy and the verdict record returned by every law checker."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Verdict:
    """Outcome of a total predicate.

    ``rule`` names the first failing law and ``witness`` holds the offending
    elements (as display names) when ``ok`` is false.
    """

    ok: bool
    rule: str = ""
    witness: tuple = ()
    info: dict = field(default_factory=dict, compare=False, hash=False)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        out = {"ok": self.ok, "rule": self.rule, "witness": [_plain(w) for w in self.witness]}
        if self.info:
            out["info"] = dict(self.info)
        return out


PASS = Verdict(True)


def fail(rule: str, *witness) -> Verdict:
    return Verdict(False, rule, tuple(witness))


def _plain(w):
    if isinstance(w, (tuple, list)):
        return [_plain(x) for x in w]
    return w


class KalmbachError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(KalmbachError):
    """Input does not describe a valid structure (CLI exit code 3)."""


class CycleDetected(ValidationError):
    pass


class NoBound(ValidationError):
    pass


class TrivialPoset(ValidationError):
    pass


class NotTransitive(ValidationError):
    pass


class UnknownElement(ValidationError):
    pass


class NotAMorphism(ValidationError):
    pass


class CapExceeded(ValidationError):
    pass


class InvalidChain(ValidationError):
    pass


class UndefinedDifference(ValidationError):
    pass


class InvalidStructure(ValidationError):
    """A structure failed its axiom checker; carries the verdict."""

    def __init__(self, verdict: Verdict, what: str = "structure"):
        self.verdict = verdict
        super().__init__(f"{what} violates {verdict.rule}: witness {verdict.witness}")


class BaseNotLattice(ValidationError):
    pass


class InternalLawFailure(KalmbachError):
    """A property guaranteed by theory failed; signals a bug (CLI exit code 4)."""


class NotAPartialOrder(InternalLawFailure):
    pass


class NonUniqueWitness(InternalLawFailure):
    pass


class JoinMissing(InternalLawFailure):
    pass


class MissingJoin(JoinMissing):
    pass


class MissingMeet(InternalLawFailure):
    pass


class NotOrthogonal(InternalLawFailure):
    pass


class NotAChain(InternalLawFailure):
    pass


class UndefinedSum(InternalLawFailure):
    pass


class DAxiomFailure(InternalLawFailure):
    pass
