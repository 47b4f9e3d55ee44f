"""Exception types shared across the pipeline stages."""

from __future__ import annotations


class SurfaceLedgerError(Exception):
    """Base class for all validation errors raised by this package."""


class IdlSyntaxError(SurfaceLedgerError):
    """Syntax error in an IDL document, with 1-based line/column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class CatalogError(SurfaceLedgerError):
    """Violation of the feature-catalog contract."""


class CallGraphError(SurfaceLedgerError):
    """Malformed call-graph export or unknown standard."""


class CveDataError(SurfaceLedgerError):
    """Malformed CVE record, rule, or tally input."""


class BenefitDataError(SurfaceLedgerError):
    """Malformed or inconsistent site-test / usage data."""


class NoDataError(BenefitDataError):
    """No paired tests exist for a standard (distinct from a 0.0 rate)."""


class LedgerError(SurfaceLedgerError):
    """Ledger fusion failure (coverage mismatch between inputs)."""


class PolicyError(SurfaceLedgerError):
    """Policy document violates the wire schema or its invariants."""
