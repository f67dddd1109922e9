"""Shared enums for cases, verdicts and reports."""

from __future__ import annotations

from enum import Enum


class CaseKind(str, Enum):
    """What a registered case asserts."""

    Q_CONGRUENCE = "q-congruence"
    INTEGER_CONGRUENCE = "integer-congruence"
    CLOSED_FORM = "closed-form"
    INVARIANT = "invariant"


class Verdict(str, Enum):
    """Outcome of checking one parameter point."""

    HOLDS = "holds"
    FAILS = "fails"
    UNDEFINED = "undefined"
    INADMISSIBLE = "inadmissible"


class OutputFormat(str, Enum):
    """Console output formats."""

    TEXT = "text"
    JSON = "json"


class Profile(str, Enum):
    """Verification grids for verify-all."""

    QUICK = "quick"
    FULL = "full"


class OracleMode(str, Enum):
    """Whether the numeric root-of-unity cross-check runs."""

    ON = "on"
    OFF = "off"


class ScanFamily(str, Enum):
    """Families probed by the grid scanner."""

    NEW_D = "new-d"
    NEW_ODD = "new-odd"
    TWO_NK = "2nk"
    NEW_2 = "new-2"
