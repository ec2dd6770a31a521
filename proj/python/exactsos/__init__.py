"""Exact rational certificates of polynomial positivity."""

from ._core import (
    Certificate,
    ParseError,
    Polynomial,
    ProverError,
    SchemaError,
    VerifyReport,
    export_sdpa,
    intsos,
    polyasos,
    putinarsos,
    verify,
)

__all__ = [
    "Certificate",
    "ParseError",
    "Polynomial",
    "ProverError",
    "SchemaError",
    "VerifyReport",
    "export_sdpa",
    "intsos",
    "polyasos",
    "putinarsos",
    "verify",
]
