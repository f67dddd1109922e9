"""Exact verification of q-congruences, supercongruences and q-series identities."""

from importlib import metadata

from qcong.cases.driver import scan, verify_case, verify_family
from qcong.cases.registry import REGISTRY, CongruenceCase
from qcong.congruence import ModulusSpec, check_congruence, check_sum_congruence
from qcong.qpoly import LaurentPoly, RationalFunction, TruncatedSeries, cyclotomic
from qcong.transforms import run_identity

try:
    __version__ = metadata.version("qcong-toolkit")
except metadata.PackageNotFoundError:  # pragma: no cover - source checkout
    __version__ = "0.0.0"

__all__ = [
    "REGISTRY",
    "CongruenceCase",
    "LaurentPoly",
    "ModulusSpec",
    "RationalFunction",
    "TruncatedSeries",
    "check_congruence",
    "check_sum_congruence",
    "cyclotomic",
    "run_identity",
    "scan",
    "verify_case",
    "verify_family",
    "__version__",
]
