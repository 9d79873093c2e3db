"""Pure computation pipeline for the quality ratio of one characteristic.

Four deterministic stages, each a pure function of immutable values:

* potentiality   — readiness of the weakest organization, ``min(level / 5)``
* compatibility  — ``1 - (sum of the 24 barrier-matrix cells) / 24``
* performance    — geometric mean of the three operational rates
* aggregation    — weighted arithmetic mean of the three aspect values

``potentiality_of_org`` is computed as ``level / 5`` rather than
``0.2 * level``: division by 5 is correctly rounded and reproduces the
level-to-ratio table exactly in binary floating point (``0.2 * 3`` does not).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ratqual.catalog import Characteristic, parse_characteristic
from ratqual.errors import ValidationError

MATRIX_ROW_LABELS: tuple[str, ...] = ("Process", "Service", "Data", "Infrastructure")
MATRIX_COLUMN_LABELS: tuple[str, ...] = (
    "Syntactic",
    "Semantic",
    "Responsibilities",
    "Organization",
    "Platform",
    "Communication",
)
MATRIX_COLUMN_GROUPS: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("Conceptual", ("Syntactic", "Semantic")),
    ("Organizational", ("Responsibilities", "Organization")),
    ("Technology", ("Platform", "Communication")),
)

MATRIX_CELL_COUNT = 24

MATURITY_LEVELS: tuple[int, ...] = (1, 2, 3, 4, 5)

# Exact image of the level-to-potentiality mapping.
POTENTIALITY_STEPS: tuple[float, ...] = (0.2, 0.4, 0.6, 0.8, 1.0)


def validate_maturity_level(level: object, path: str = "qmml") -> int:
    """Check that ``level`` is an integer maturity level in 1..5."""
    if isinstance(level, bool) or not isinstance(level, int):
        raise ValidationError(f"{path}: maturity level must be an integer, got {level!r}")
    if not 1 <= level <= 5:
        raise ValidationError(f"{path}: maturity level must be in 1..5, got {level}")
    return level


def _validate_unit_interval(value: object, path: str) -> float:
    if value is None:
        raise ValidationError(f"{path}: value is required and may not be omitted")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{path}: expected a number, got {value!r}")
    value = float(value)
    if math.isnan(value) or not 0.0 <= value <= 1.0:
        raise ValidationError(f"{path}: must lie within [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class OrgMaturity:
    """One organization's graded maturity level for one characteristic."""

    org_id: str
    characteristic: Characteristic
    qmml: int

    def __post_init__(self) -> None:
        if not isinstance(self.org_id, str) or not self.org_id:
            raise ValidationError("org_maturities: org_id must be a non-empty string")
        if not isinstance(self.characteristic, Characteristic):
            object.__setattr__(
                self, "characteristic", parse_characteristic(self.characteristic)
            )
        validate_maturity_level(self.qmml, f"org_maturities[{self.org_id}].qmml")


@dataclass(frozen=True)
class CompatibilityMatrix:
    """4x6 grid of elementary incompatibility degrees.

    Rows are the collaboration layers (Process, Service, Data,
    Infrastructure); columns are the barrier kinds grouped as Conceptual
    (Syntactic, Semantic), Organizational (Responsibilities, Organization)
    and Technology (Platform, Communication). A cell of 0 means the layer
    clears that barrier; 1 means it does not.

    In strict mode (the default) cells must be exactly 0 or 1. Fractional
    mode (``strict=False``) admits any value in [0, 1] for graded
    assessments.
    """

    cells: tuple[tuple[float, ...], ...]
    strict: bool = True

    def __post_init__(self) -> None:
        cells = self.cells
        if not isinstance(cells, Sequence) or len(cells) != 4:
            raise ValidationError("matrix: expected exactly 4 rows")
        rows: list[tuple[float, ...]] = []
        for i, row in enumerate(cells, start=1):
            if not isinstance(row, Sequence) or len(row) != 6:
                raise ValidationError(f"matrix.row[{i}]: expected exactly 6 cells")
            out: list[float] = []
            for j, cell in enumerate(row, start=1):
                value = _validate_unit_interval(cell, f"matrix.cell[{i}][{j}]")
                if self.strict and value not in (0.0, 1.0):
                    raise ValidationError(
                        f"matrix.cell[{i}][{j}]: strict mode admits only 0 or 1, got {value!r}"
                    )
                out.append(value)
            rows.append(tuple(out))
        object.__setattr__(self, "cells", tuple(rows))

    def cell(self, row: int, col: int) -> float:
        """Cell value with 1-based (row, col) as in the barrier table."""
        return self.cells[row - 1][col - 1]

    def with_cell(self, row: int, col: int, value: float) -> "CompatibilityMatrix":
        """Copy of the matrix with one cell replaced (1-based indices)."""
        rows = [list(r) for r in self.cells]
        rows[row - 1][col - 1] = value
        return CompatibilityMatrix(tuple(tuple(r) for r in rows), strict=self.strict)

    def total(self) -> float:
        return sum(cell for row in self.cells for cell in row)


@dataclass(frozen=True)
class OperationalRates:
    """In-use rates: server availability (ds), network service quality (qos),
    and end-user satisfaction (ts), each in [0, 1]. Absent rates are an
    error, never imputed."""

    ds: float
    qos: float
    ts: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "ds", _validate_unit_interval(self.ds, "rates.ds"))
        object.__setattr__(self, "qos", _validate_unit_interval(self.qos, "rates.qos"))
        object.__setattr__(self, "ts", _validate_unit_interval(self.ts, "rates.ts"))


@dataclass(frozen=True)
class AggregationWeights:
    """Non-negative weights for the three aspects; at least one positive."""

    w1: float = 1.0
    w2: float = 1.0
    w3: float = 1.0

    def __post_init__(self) -> None:
        for name in ("w1", "w2", "w3"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValidationError(f"weights.{name}: expected a number, got {value!r}")
            value = float(value)
            if math.isnan(value) or math.isinf(value) or value < 0.0:
                raise ValidationError(
                    f"weights.{name}: must be a finite non-negative number, got {value!r}"
                )
            object.__setattr__(self, name, value)
        if self.w1 + self.w2 + self.w3 <= 0.0:
            raise ValidationError("weights: at least one weight must be positive")


@dataclass(frozen=True)
class AssessmentInput:
    """Everything needed to compute the quality ratio of one characteristic."""

    characteristic: Characteristic
    org_maturities: tuple[OrgMaturity, ...]
    matrix: CompatibilityMatrix
    rates: OperationalRates
    weights: AggregationWeights = field(default_factory=AggregationWeights)

    def __post_init__(self) -> None:
        if not isinstance(self.characteristic, Characteristic):
            object.__setattr__(
                self, "characteristic", parse_characteristic(self.characteristic)
            )
        orgs = tuple(self.org_maturities)
        object.__setattr__(self, "org_maturities", orgs)
        if not orgs:
            raise ValidationError("org_maturities: at least one organization is required")
        seen: set[str] = set()
        for entry in orgs:
            if not isinstance(entry, OrgMaturity):
                raise ValidationError("org_maturities: entries must be OrgMaturity values")
            if entry.characteristic is not self.characteristic:
                raise ValidationError(
                    f"org_maturities[{entry.org_id}]: graded for "
                    f"{entry.characteristic.value!r}, input is for "
                    f"{self.characteristic.value!r}"
                )
            if entry.org_id in seen:
                raise ValidationError(
                    f"org_maturities[{entry.org_id}]: duplicate organization entry"
                )
            seen.add(entry.org_id)
        if not isinstance(self.matrix, CompatibilityMatrix):
            raise ValidationError("matrix: expected a CompatibilityMatrix")
        if not isinstance(self.rates, OperationalRates):
            raise ValidationError("rates: expected OperationalRates")
        if not isinstance(self.weights, AggregationWeights):
            raise ValidationError("weights: expected AggregationWeights")

    def maturity_of(self, org_id: str) -> int:
        for entry in self.org_maturities:
            if entry.org_id == org_id:
                return entry.qmml
        raise ValidationError(f"org_maturities: no entry for organization {org_id!r}")


@dataclass(frozen=True)
class AssessmentResult:
    """The four computed aspect values, all in [0, 1]."""

    qp: float
    dc: float
    po: float
    ratqual: float


def potentiality_of_org(qmml: int) -> float:
    """Potentiality contribution of one organization: level / 5.

    Maps maturity levels 1..5 onto 0.2, 0.4, 0.6, 0.8, 1.0 exactly.
    """
    validate_maturity_level(qmml)
    return qmml / 5


def potentiality(org_maturities: Iterable[OrgMaturity]) -> float:
    """Characteristic potentiality: the minimum over all scoped organizations."""
    entries = list(org_maturities)
    if not entries:
        raise ValidationError("org_maturities: at least one organization is required")
    return min(potentiality_of_org(entry.qmml) for entry in entries)


def compatibility_degree(matrix: CompatibilityMatrix) -> float:
    """Compatibility degree: 1 minus the normalized incompatibility total.

    The denominator is fixed at 24 cells; a not-applicable cell is not
    representable and must be assessed as 0 or 1.
    """
    if not isinstance(matrix, CompatibilityMatrix):
        raise ValidationError("matrix: expected a CompatibilityMatrix")
    return 1.0 - matrix.total() / MATRIX_CELL_COUNT


def operational_performance(rates: OperationalRates) -> float:
    """Geometric mean of the three operational rates.

    Returns exactly 0.0 when any rate is zero; the rates are cumulative, so
    one dead aspect annihilates in-use performance.
    """
    if not isinstance(rates, OperationalRates):
        raise ValidationError("rates: expected OperationalRates")
    if rates.ds == 0.0 or rates.qos == 0.0 or rates.ts == 0.0:
        return 0.0
    return (rates.ds * rates.qos * rates.ts) ** (1.0 / 3.0)


def aggregate(qp: float, dc: float, po: float, weights: AggregationWeights) -> float:
    """Weighted arithmetic mean of the three aspect values.

    With unit weights this is exactly ``(qp + dc + po) / 3``.
    """
    for name, value in (("qp", qp), ("dc", dc), ("po", po)):
        _validate_unit_interval(value, f"aggregate.{name}")
    if not isinstance(weights, AggregationWeights):
        raise ValidationError("weights: expected AggregationWeights")
    return (weights.w1 * qp + weights.w2 * dc + weights.w3 * po) / (
        weights.w1 + weights.w2 + weights.w3
    )


def assess(assessment: AssessmentInput) -> AssessmentResult:
    """Compute all four quality numbers for one characteristic.

    Pure and deterministic: equal inputs always yield equal results.
    """
    if not isinstance(assessment, AssessmentInput):
        raise ValidationError("input: expected an AssessmentInput")
    qp = potentiality(assessment.org_maturities)
    dc = compatibility_degree(assessment.matrix)
    po = operational_performance(assessment.rates)
    ratio = aggregate(qp, dc, po, assessment.weights)
    return AssessmentResult(qp=qp, dc=dc, po=po, ratqual=ratio)
