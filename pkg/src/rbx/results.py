"""Tri-state verdicts and structured reports returned by decision procedures."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .linalg import Matrix


class Verdict(enum.Enum):
    """Outcome of a decision procedure.

    YES and NO are proven (witness or exhaustion/infeasibility); UNDECIDED is
    reserved for the rational case where a quadratic condition could not be
    settled either way.
    """

    YES = "yes"
    NO = "no"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class EquivalenceResult:
    """Outcome of a cocycle (or Wells-triviality) equivalence test."""

    verdict: Verdict
    phi: Optional[Matrix] = None
    failing_condition: Optional[str] = None
    detail: str = ""


@dataclass(frozen=True)
class ExtensionEquivalenceResult:
    verdict: Verdict
    mapping: Optional[Matrix] = None
    failing_condition: Optional[str] = None
    detail: str = ""


@dataclass(frozen=True)
class InducibilityResult:
    verdict: Verdict
    gamma: Optional[Matrix] = None
    failing_condition: Optional[str] = None
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    """Per-check outcome of a structural validator; truthy iff everything passed."""

    ok: bool
    checks: tuple  # tuple[(name, bool), ...]
    first_failure: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok

    def check(self, name: str) -> bool:
        for label, passed in self.checks:
            if label == name:
                return passed
        raise KeyError(name)


@dataclass(frozen=True)
class CheckReport:
    """Result of an enumeration-backed verification run."""

    name: str
    orders: tuple = ()      # tuple[(label, int), ...]
    assertions: tuple = ()  # tuple[(label, bool, detail), ...]
    listings: tuple = ()    # tuple[(label, tuple), ...] of matrices or pairs

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.assertions)

    def order(self, label: str) -> int:
        for key, value in self.orders:
            if key == label:
                return value
        raise KeyError(label)

    def assertion(self, label: str) -> bool:
        for key, passed, _ in self.assertions:
            if key == label:
                return passed
        raise KeyError(label)
