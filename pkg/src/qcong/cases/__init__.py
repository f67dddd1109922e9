"""Registered cases, their builders and the verification drivers."""

from qcong.cases.registry import (
    REGISTRY,
    CaseRegistry,
    CongruenceCase,
    InadmissibleParametersError,
    UnknownCaseError,
    get_case,
)

__all__ = [
    "REGISTRY",
    "CaseRegistry",
    "CongruenceCase",
    "InadmissibleParametersError",
    "UnknownCaseError",
    "get_case",
]
