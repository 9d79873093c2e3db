"""Canonical catalog of the 17 external quality characteristics.

The catalog is immutable: a fixed, ordered table of characteristics, their
three-category classification, and the registry of maturity models that can
grade an organization on each characteristic. Everything else in the package
treats this module as the single source of truth for characteristic tokens
and ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ratqual.errors import ValidationError


class Characteristic(str, Enum):
    """Token for one of the 17 assessable external quality characteristics."""

    FUNCTIONALITY = "Functionality"
    INTEROPERABILITY = "Interoperability"
    SECURITY = "Security"
    COMPLIANCE = "Compliance"
    INTER_ALIGNMENT_ABILITY = "InterAlignmentAbility"
    ADAPTABILITY = "Adaptability"
    PORTABILITY = "Portability"
    COEXISTENCE = "Coexistence"
    REPLACEABILITY = "Replaceability"
    FLEXIBILITY = "Flexibility"
    VARIABILITY = "Variability"
    EVOLUTIVITY = "Evolutivity"
    CHANGEABILITY = "Changeability"
    MAINTAINABILITY = "Maintainability"
    STABILITY = "Stability"
    TESTABILITY = "Testability"
    EXTENSIBILITY = "Extensibility"


class Category(str, Enum):
    """One of the three requirement-derived characteristic categories."""

    FUNCTIONALITY = "Functionality"
    ADAPTABILITY = "Adaptability"
    EVOLUTIVITY = "Evolutivity"


CATEGORY_DESCRIPTIONS: dict[Category, str] = {
    Category.FUNCTIONALITY: (
        "What the collaborating systems must do: the essential purpose "
        "recognized when requirements are identified."
    ),
    Category.ADAPTABILITY: (
        "How readily the systems absorb context-dependent change requests."
    ),
    Category.EVOLUTIVITY: (
        "How readily the systems absorb change requests that arrive over time."
    ),
}


@dataclass(frozen=True)
class MaturityModelRef:
    """A named maturity model usable to grade organizations on a characteristic."""

    short_name: str
    full_name: str
    applicable_to: frozenset["Characteristic"] = frozenset()


_MODELS: dict[str, str] = {
    "FMMI": "Functionality Maturity Model Integration",
    "IMM": "Interoperability Maturity Model",
    "EIMM": "Enterprise Interoperability Maturity Model",
    "OIMM": "Organizational Interoperability Maturity Model",
    "LISI": "Level of Information System Interoperability",
    "ISMM": "Information Security Maturity Model",
    "GoCoMM": "Governance Compliance Maturity Model",
    "IAMM": "Inter Alignment Ability Maturity Model",
    "QMM": "Quality Maturity Model",
    "AMMI": "Adaptability Maturity Model Integration",
    "PMMI": "Portability Maturity Model Integration",
    "FMM": "Flexibility Maturity Model",
    "AM3": "Architecture Maintainability Maturity Model",
    "TMM": "Testability Maturity Model",
}

# Row order is the canonical catalog order used by every export and report.
# Fields: characteristic, category, is_category_head, maturity model short names.
_ROWS: tuple[tuple[Characteristic, Category, bool, tuple[str, ...]], ...] = (
    (Characteristic.FUNCTIONALITY, Category.FUNCTIONALITY, True, ("FMMI",)),
    (Characteristic.INTEROPERABILITY, Category.FUNCTIONALITY, False, ("IMM", "EIMM", "OIMM", "LISI")),
    (Characteristic.SECURITY, Category.FUNCTIONALITY, False, ("ISMM",)),
    (Characteristic.COMPLIANCE, Category.FUNCTIONALITY, False, ("GoCoMM",)),
    (Characteristic.INTER_ALIGNMENT_ABILITY, Category.FUNCTIONALITY, False, ("IAMM",)),
    (Characteristic.ADAPTABILITY, Category.ADAPTABILITY, True, ("QMM", "AMMI")),
    (Characteristic.PORTABILITY, Category.ADAPTABILITY, False, ("PMMI",)),
    (Characteristic.COEXISTENCE, Category.ADAPTABILITY, False, ("QMM",)),
    (Characteristic.REPLACEABILITY, Category.ADAPTABILITY, False, ("QMM",)),
    (Characteristic.FLEXIBILITY, Category.ADAPTABILITY, False, ("FMM",)),
    (Characteristic.VARIABILITY, Category.ADAPTABILITY, False, ("QMM",)),
    (Characteristic.EVOLUTIVITY, Category.EVOLUTIVITY, True, ("QMM",)),
    (Characteristic.CHANGEABILITY, Category.EVOLUTIVITY, False, ("QMM",)),
    (Characteristic.MAINTAINABILITY, Category.EVOLUTIVITY, False, ("AM3", "QMM")),
    (Characteristic.STABILITY, Category.EVOLUTIVITY, False, ("QMM",)),
    (Characteristic.TESTABILITY, Category.EVOLUTIVITY, False, ("TMM",)),
    (Characteristic.EXTENSIBILITY, Category.EVOLUTIVITY, False, ("QMM",)),
)

_CATEGORY_BY_CHARACTERISTIC: dict[Characteristic, Category] = {
    row[0]: row[1] for row in _ROWS
}
_MODELS_BY_CHARACTERISTIC: dict[Characteristic, tuple[str, ...]] = {
    row[0]: row[3] for row in _ROWS
}
_HEADS: frozenset[Characteristic] = frozenset(row[0] for row in _ROWS if row[2])
_APPLICABILITY: dict[str, frozenset[Characteristic]] = {
    name: frozenset(row[0] for row in _ROWS if name in row[3]) for name in _MODELS
}


def parse_characteristic(token: str) -> Characteristic:
    """Resolve a characteristic token, raising a validation error if unknown."""
    try:
        return Characteristic(token)
    except ValueError:
        valid = ", ".join(c.value for c in Characteristic)
        raise ValidationError(
            f"unknown characteristic {token!r}; expected one of: {valid}"
        ) from None


def list_characteristics() -> list[tuple[Characteristic, Category]]:
    """All 17 characteristics with their category, in canonical catalog order."""
    return [(row[0], row[1]) for row in _ROWS]


def category_of(characteristic: Characteristic) -> Category:
    return _CATEGORY_BY_CHARACTERISTIC[characteristic]


def is_category_head(characteristic: Characteristic) -> bool:
    """True for the three characteristics that double as category names."""
    return characteristic in _HEADS


def maturity_models_for(characteristic: Characteristic | str) -> list[MaturityModelRef]:
    """Registered maturity models applicable to one characteristic."""
    if not isinstance(characteristic, Characteristic):
        characteristic = parse_characteristic(characteristic)
    return [
        MaturityModelRef(
            short_name=name,
            full_name=_MODELS[name],
            applicable_to=_APPLICABILITY[name],
        )
        for name in _MODELS_BY_CHARACTERISTIC[characteristic]
    ]


def catalog_dump() -> dict:
    """Machine-readable catalog document, stable across calls.

    Used by the CLI ``catalog`` subcommand and the HTTP catalog endpoint so
    user interfaces never hard-code the taxonomy.
    """
    from ratqual import core  # local import to avoid a module cycle

    return {
        "schema_version": 1,
        "categories": [
            {"name": cat.value, "description": CATEGORY_DESCRIPTIONS[cat]}
            for cat in Category
        ],
        "characteristics": [
            {
                "id": char.value,
                "category": cat.value,
                "is_category_head": head,
                "maturity_models": [
                    {"short_name": m, "full_name": _MODELS[m]} for m in models
                ],
            }
            for char, cat, head, models in _ROWS
        ],
        "matrix": {
            "rows": list(core.MATRIX_ROW_LABELS),
            "columns": list(core.MATRIX_COLUMN_LABELS),
            "column_groups": [
                {"name": name, "columns": list(cols)}
                for name, cols in core.MATRIX_COLUMN_GROUPS
            ],
        },
    }
