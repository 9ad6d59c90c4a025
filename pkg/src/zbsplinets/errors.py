"""Exception hierarchy.

Every error carries a stable machine-readable ``name`` so the CLI can emit
parsable diagnostics on stderr.
"""

from __future__ import annotations


class ZbError(Exception):
    """Base class for all package errors."""

    name = "ZbError"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        msg = super().__str__()
        return f"{self.name}: {msg}" if msg else self.name


class NonIncreasingKnots(ZbError):
    name = "NonIncreasingKnots"


class KnotOutsideInterval(ZbError):
    name = "KnotOutsideInterval"


class EmptyInterval(ZbError):
    name = "EmptyInterval"


class IndexOutOfRange(ZbError):
    name = "IndexOutOfRange"


class PointOutsideDomain(ZbError):
    name = "PointOutsideDomain"


class DerivOrderTooHigh(ZbError):
    name = "DerivOrderTooHigh"


class DimensionMismatch(ZbError):
    name = "DimensionMismatch"


class DegenerateSpace(ZbError):
    name = "DegenerateSpace"


class KnotMismatch(ZbError):
    name = "KnotMismatch"


class NonDyadicKnots(ZbError):
    name = "NonDyadicKnots"


class NumericalBreakdown(ZbError):
    name = "NumericalBreakdown"


class NonpositiveDensity(ZbError):
    name = "NonpositiveDensity"


class ZeroFrequency(ZbError):
    name = "ZeroFrequency"


class OverflowRisk(ZbError):
    name = "OverflowRisk"


class GridMismatch(ZbError):
    name = "GridMismatch"


class GridTooLarge(ZbError):
    name = "GridTooLarge"


class SingularSystem(ZbError):
    name = "SingularSystem"


class InfeasibleDesign(ZbError):
    name = "InfeasibleDesign"


class TooFewObservations(ZbError):
    name = "TooFewObservations"


class ComponentOutOfRange(ZbError):
    name = "ComponentOutOfRange"
