"""Collaboration-scope data model and document persistence.

A scope document captures the ecosystem under study: the cooperating
organizations, their sub-processes, the information systems supporting those
processes, and the application services linking processes across
organizations. Assessment inputs (maturity levels, barrier matrix, rates,
weights) are stored in the same document, keyed by characteristic token.

Documents are JSON with a fixed key order and sorted collections, so equal
scopes serialize byte-identically. Keys starting with ``_`` are ignored on
load, which lets templates and hand-edited files carry comments.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from ratqual.catalog import Characteristic, parse_characteristic
from ratqual.core import (
    AggregationWeights,
    AssessmentInput,
    CompatibilityMatrix,
    OperationalRates,
    OrgMaturity,
    validate_maturity_level,
)
from ratqual.errors import FormatError, ValidationError

SCHEMA_VERSION = 1


def format_utc(dt: datetime) -> str:
    """Canonical ISO-8601 UTC timestamp with microsecond resolution."""
    if dt.tzinfo is None:
        raise ValidationError("timestamps must be timezone-aware UTC")
    return (
        dt.astimezone(timezone.utc)
        .isoformat(timespec="microseconds")
        .replace("+00:00", "Z")
    )


def parse_utc(text: str, path: str = "timestamp") -> datetime:
    if not isinstance(text, str):
        raise FormatError(f"{path}: expected an ISO-8601 string, got {text!r}")
    normalized = text[:-1] + "+00:00" if text.endswith("Z") else text
    try:
        parsed = datetime.fromisoformat(normalized)
    except ValueError as exc:
        raise FormatError(f"{path}: invalid ISO-8601 timestamp {text!r} ({exc})") from None
    if parsed.tzinfo is None:
        raise FormatError(f"{path}: timestamp must carry a UTC offset: {text!r}")
    return parsed.astimezone(timezone.utc)


def _require_id(value: object, path: str) -> str:
    if not isinstance(value, str) or not value.strip():
        raise ValidationError(f"{path}: identifier must be a non-empty string")
    return value


@dataclass(frozen=True)
class Organization:
    org_id: str
    name: str

    def __post_init__(self) -> None:
        _require_id(self.org_id, "organizations[].org_id")


@dataclass(frozen=True)
class SubProcess:
    process_id: str
    owner_org: str
    name: str

    def __post_init__(self) -> None:
        _require_id(self.process_id, "sub_processes[].process_id")
        _require_id(self.owner_org, "sub_processes[].owner_org")


@dataclass(frozen=True)
class InfoSystem:
    system_id: str
    owner_org: str
    name: str
    supports: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        _require_id(self.system_id, "info_systems[].system_id")
        _require_id(self.owner_org, "info_systems[].owner_org")
        object.__setattr__(self, "supports", tuple(sorted(self.supports)))


@dataclass(frozen=True)
class AppService:
    """Directed collaboration link between two sub-processes."""

    service_id: str
    from_process: str
    to_process: str
    name: str

    def __post_init__(self) -> None:
        _require_id(self.service_id, "app_services[].service_id")
        _require_id(self.from_process, "app_services[].from_process")
        _require_id(self.to_process, "app_services[].to_process")


@dataclass(frozen=True)
class AssessmentSettings:
    """Stored assessment input for one characteristic of one scope."""

    org_maturities: tuple[tuple[str, int], ...]
    matrix: CompatibilityMatrix
    rates: OperationalRates
    weights: AggregationWeights = field(default_factory=AggregationWeights)

    def __post_init__(self) -> None:
        entries = tuple(sorted(self.org_maturities))
        for org_id, level in entries:
            _require_id(org_id, "assessments.org_maturities")
            validate_maturity_level(level, f"assessments.org_maturities[{org_id}]")
        object.__setattr__(self, "org_maturities", entries)


@dataclass(frozen=True)
class CollaborationScope:
    """An inter-organizational collaboration under assessment.

    Structural field checks happen at construction; cross-element rules
    (cardinality, referential integrity) are reported by
    :func:`validate_scope` so invalid documents can still be inspected.
    """

    scope_id: str
    name: str
    organizations: tuple[Organization, ...]
    sub_processes: tuple[SubProcess, ...] = ()
    info_systems: tuple[InfoSystem, ...] = ()
    app_services: tuple[AppService, ...] = ()
    assessments: dict[Characteristic, AssessmentSettings] = field(default_factory=dict)
    created_at: datetime = field(
        default_factory=lambda: datetime.now(timezone.utc)
    )
    version: int = 1

    def __post_init__(self) -> None:
        _require_id(self.scope_id, "scope_id")
        # Collections normalize to id order at construction, making equality
        # and serialization independent of input order.
        object.__setattr__(
            self, "organizations", tuple(sorted(self.organizations, key=lambda o: o.org_id))
        )
        object.__setattr__(
            self, "sub_processes", tuple(sorted(self.sub_processes, key=lambda p: p.process_id))
        )
        object.__setattr__(
            self, "info_systems", tuple(sorted(self.info_systems, key=lambda s: s.system_id))
        )
        object.__setattr__(
            self, "app_services", tuple(sorted(self.app_services, key=lambda s: s.service_id))
        )
        if self.created_at.tzinfo is None:
            raise ValidationError("created_at: timestamp must be timezone-aware UTC")
        if isinstance(self.version, bool) or not isinstance(self.version, int) or self.version < 1:
            raise ValidationError("version: must be an integer >= 1")

    def assessment_input(self, characteristic: Characteristic | str) -> AssessmentInput:
        """Resolve the stored input for one characteristic.

        Every organization in the scope must carry a maturity grade for the
        characteristic; missing grades are an error, never skipped, because
        the potentiality minimum must range over all scoped organizations.
        """
        if not isinstance(characteristic, Characteristic):
            characteristic = parse_characteristic(characteristic)
        settings = self.assessments.get(characteristic)
        if settings is None:
            raise ValidationError(
                f"assessments: no stored input for characteristic "
                f"{characteristic.value!r} in scope {self.scope_id!r}"
            )
        graded = dict(settings.org_maturities)
        scope_orgs = sorted(org.org_id for org in self.organizations)
        missing = [org_id for org_id in scope_orgs if org_id not in graded]
        if missing:
            raise ValidationError(
                f"assessments[{characteristic.value}].org_maturities: no maturity "
                f"grade for organization(s): {', '.join(missing)}"
            )
        unknown = [org_id for org_id in graded if org_id not in scope_orgs]
        if unknown:
            raise ValidationError(
                f"assessments[{characteristic.value}].org_maturities: unknown "
                f"organization(s): {', '.join(sorted(unknown))}"
            )
        return AssessmentInput(
            characteristic=characteristic,
            org_maturities=tuple(
                OrgMaturity(org_id=org_id, characteristic=characteristic, qmml=graded[org_id])
                for org_id in scope_orgs
            ),
            matrix=settings.matrix,
            rates=settings.rates,
            weights=settings.weights,
        )


@dataclass(frozen=True)
class Violation:
    path: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        return [f"{v.path}: {v.message}" for v in self.violations]


def validate_scope(scope: CollaborationScope) -> ValidationReport:
    """Check cardinality, uniqueness, and referential integrity.

    Violations are data, not exceptions: callers decide whether to refuse.
    """
    violations: list[Violation] = []

    if len(scope.organizations) < 2:
        violations.append(
            Violation("organizations", "fewer than two organizations; a collaboration scope spans at least two")
        )

    org_ids: set[str] = set()
    for org in scope.organizations:
        if org.org_id in org_ids:
            violations.append(Violation(f"organizations[{org.org_id}]", "duplicate org_id"))
        org_ids.add(org.org_id)

    process_ids: set[str] = set()
    for proc in scope.sub_processes:
        if proc.process_id in process_ids:
            violations.append(
                Violation(f"sub_processes[{proc.process_id}]", "duplicate process_id")
            )
        process_ids.add(proc.process_id)
        if proc.owner_org not in org_ids:
            violations.append(
                Violation(
                    f"sub_processes[{proc.process_id}].owner_org",
                    f"references unknown organization {proc.owner_org!r}",
                )
            )

    system_ids: set[str] = set()
    for system in scope.info_systems:
        if system.system_id in system_ids:
            violations.append(
                Violation(f"info_systems[{system.system_id}]", "duplicate system_id")
            )
        system_ids.add(system.system_id)
        if system.owner_org not in org_ids:
            violations.append(
                Violation(
                    f"info_systems[{system.system_id}].owner_org",
                    f"references unknown organization {system.owner_org!r}",
                )
            )
        for process_id in system.supports:
            if process_id not in process_ids:
                violations.append(
                    Violation(
                        f"info_systems[{system.system_id}].supports",
                        f"references unknown sub-process {process_id!r}",
                    )
                )

    service_ids: set[str] = set()
    for service in scope.app_services:
        if service.service_id in service_ids:
            violations.append(
                Violation(f"app_services[{service.service_id}]", "duplicate service_id")
            )
        service_ids.add(service.service_id)
        for attr in ("from_process", "to_process"):
            endpoint = getattr(service, attr)
            if endpoint not in process_ids:
                violations.append(
                    Violation(
                        f"app_services[{service.service_id}].{attr}",
                        f"references unknown sub-process {endpoint!r}",
                    )
                )
        if service.from_process == service.to_process:
            violations.append(
                Violation(
                    f"app_services[{service.service_id}]",
                    "from_process and to_process must differ",
                )
            )

    for characteristic, settings in scope.assessments.items():
        for org_id, _level in settings.org_maturities:
            if org_id not in org_ids:
                violations.append(
                    Violation(
                        f"assessments[{characteristic.value}].org_maturities",
                        f"references unknown organization {org_id!r}",
                    )
                )

    return ValidationReport(tuple(violations))


# --- document serialization -------------------------------------------------

def _matrix_to_doc(matrix: CompatibilityMatrix) -> list[list[float]]:
    if matrix.strict:
        return [[int(cell) for cell in row] for row in matrix.cells]
    return [[float(cell) for cell in row] for row in matrix.cells]


def settings_to_doc(settings: AssessmentSettings) -> dict:
    return {
        "org_maturities": {org: level for org, level in settings.org_maturities},
        "matrix": _matrix_to_doc(settings.matrix),
        "matrix_mode": "strict" if settings.matrix.strict else "fractional",
        "rates": {
            "ds": settings.rates.ds,
            "qos": settings.rates.qos,
            "ts": settings.rates.ts,
        },
        "weights": [settings.weights.w1, settings.weights.w2, settings.weights.w3],
    }


def result_to_doc(result) -> dict:
    """Document form of an AssessmentResult (full-precision numbers)."""
    return {
        "qp": result.qp,
        "dc": result.dc,
        "po": result.po,
        "ratqual": result.ratqual,
    }


def input_to_doc(assessment: AssessmentInput) -> dict:
    """Standalone assessment-input document (characteristic included)."""
    doc = {"characteristic": assessment.characteristic.value}
    doc.update(
        settings_to_doc(
            AssessmentSettings(
                org_maturities=tuple(
                    (entry.org_id, entry.qmml) for entry in assessment.org_maturities
                ),
                matrix=assessment.matrix,
                rates=assessment.rates,
                weights=assessment.weights,
            )
        )
    )
    return doc


def _doc_fields(doc: object, path: str, required: set[str], optional: set[str]) -> dict:
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: expected an object, got {type(doc).__name__}")
    # Keys starting with "_" are comments and ignored.
    fields = {k: v for k, v in doc.items() if isinstance(k, str) and not k.startswith("_")}
    unknown = sorted(set(fields) - required - optional)
    if unknown:
        raise FormatError(f"{path}: unknown field(s): {', '.join(unknown)}")
    missing = sorted(required - set(fields))
    if missing:
        raise FormatError(f"{path}: missing required field(s): {', '.join(missing)}")
    return fields


def settings_from_doc(doc: object, path: str = "assessment") -> AssessmentSettings:
    fields = _doc_fields(
        doc,
        path,
        required={"org_maturities", "matrix", "rates"},
        optional={"matrix_mode", "weights", "characteristic"},
    )
    raw_orgs = fields["org_maturities"]
    if not isinstance(raw_orgs, dict):
        raise FormatError(f"{path}.org_maturities: expected an object of org -> level")
    mode = fields.get("matrix_mode", "strict")
    if mode not in ("strict", "fractional"):
        raise FormatError(f"{path}.matrix_mode: expected 'strict' or 'fractional', got {mode!r}")
    raw_matrix = fields["matrix"]
    if not isinstance(raw_matrix, list):
        raise FormatError(f"{path}.matrix: expected a 4x6 array")
    raw_rates = _doc_fields(
        fields["rates"], f"{path}.rates", required={"ds", "qos", "ts"}, optional=set()
    )
    raw_weights = fields.get("weights", [1.0, 1.0, 1.0])
    if not isinstance(raw_weights, list) or len(raw_weights) != 3:
        raise FormatError(f"{path}.weights: expected an array of three numbers")
    return AssessmentSettings(
        org_maturities=tuple((str(org), level) for org, level in raw_orgs.items()),
        matrix=CompatibilityMatrix(
            tuple(tuple(row) for row in raw_matrix), strict=(mode == "strict")
        ),
        rates=OperationalRates(ds=raw_rates["ds"], qos=raw_rates["qos"], ts=raw_rates["ts"]),
        weights=AggregationWeights(w1=raw_weights[0], w2=raw_weights[1], w3=raw_weights[2]),
    )


def input_from_doc(
    doc: object,
    characteristic: Characteristic | str | None = None,
    path: str = "input",
) -> AssessmentInput:
    """Parse a standalone assessment-input document.

    ``characteristic`` overrides/provides the token when the document is the
    scope-embedded form that omits it.
    """
    settings = settings_from_doc(doc, path)
    token = characteristic
    if token is None:
        if not isinstance(doc, dict) or "characteristic" not in doc:
            raise FormatError(f"{path}: missing required field(s): characteristic")
        token = doc["characteristic"]
    char = token if isinstance(token, Characteristic) else parse_characteristic(str(token))
    return AssessmentInput(
        characteristic=char,
        org_maturities=tuple(
            OrgMaturity(org_id=org, characteristic=char, qmml=level)
            for org, level in settings.org_maturities
        ),
        matrix=settings.matrix,
        rates=settings.rates,
        weights=settings.weights,
    )


def scope_to_doc(scope: CollaborationScope) -> dict:
    """Canonical document form: fixed key order, collections sorted by id."""
    return {
        "schema_version": SCHEMA_VERSION,
        "scope_id": scope.scope_id,
        "name": scope.name,
        "version": scope.version,
        "created_at": format_utc(scope.created_at),
        "organizations": [
            {"org_id": org.org_id, "name": org.name}
            for org in sorted(scope.organizations, key=lambda o: o.org_id)
        ],
        "sub_processes": [
            {"process_id": p.process_id, "owner_org": p.owner_org, "name": p.name}
            for p in sorted(scope.sub_processes, key=lambda p: p.process_id)
        ],
        "info_systems": [
            {
                "system_id": s.system_id,
                "owner_org": s.owner_org,
                "name": s.name,
                "supports": list(s.supports),
            }
            for s in sorted(scope.info_systems, key=lambda s: s.system_id)
        ],
        "app_services": [
            {
                "service_id": s.service_id,
                "from_process": s.from_process,
                "to_process": s.to_process,
                "name": s.name,
            }
            for s in sorted(scope.app_services, key=lambda s: s.service_id)
        ],
        "assessments": {
            char.value: settings_to_doc(scope.assessments[char])
            for char in Characteristic
            if char in scope.assessments
        },
    }


def parse_scope(doc: object) -> CollaborationScope:
    """Build a scope from a parsed document without cross-element validation."""
    fields = _doc_fields(
        doc,
        "scope",
        required={"schema_version", "scope_id", "name", "organizations"},
        optional={
            "version",
            "created_at",
            "sub_processes",
            "info_systems",
            "app_services",
            "assessments",
        },
    )
    if fields["schema_version"] != SCHEMA_VERSION:
        raise FormatError(
            f"scope.schema_version: unsupported version {fields['schema_version']!r}"
        )

    def _array(key: str) -> list:
        value = fields.get(key, [])
        if not isinstance(value, list):
            raise FormatError(f"scope.{key}: expected an array")
        return value

    problems: list[str] = []
    organizations: list[Organization] = []
    for raw in _array("organizations"):
        entry = _doc_fields(raw, "scope.organizations[]", {"org_id", "name"}, set())
        try:
            organizations.append(Organization(org_id=entry["org_id"], name=str(entry["name"])))
        except ValidationError as exc:
            problems.append(str(exc))

    sub_processes: list[SubProcess] = []
    for raw in _array("sub_processes"):
        entry = _doc_fields(raw, "scope.sub_processes[]", {"process_id", "owner_org", "name"}, set())
        try:
            sub_processes.append(
                SubProcess(
                    process_id=entry["process_id"],
                    owner_org=entry["owner_org"],
                    name=str(entry["name"]),
                )
            )
        except ValidationError as exc:
            problems.append(str(exc))

    info_systems: list[InfoSystem] = []
    for raw in _array("info_systems"):
        entry = _doc_fields(
            raw, "scope.info_systems[]", {"system_id", "owner_org", "name"}, {"supports"}
        )
        supports = entry.get("supports", [])
        if not isinstance(supports, list):
            raise FormatError("scope.info_systems[].supports: expected an array")
        try:
            info_systems.append(
                InfoSystem(
                    system_id=entry["system_id"],
                    owner_org=entry["owner_org"],
                    name=str(entry["name"]),
                    supports=tuple(str(p) for p in supports),
                )
            )
        except ValidationError as exc:
            problems.append(str(exc))

    app_services: list[AppService] = []
    for raw in _array("app_services"):
        entry = _doc_fields(
            raw,
            "scope.app_services[]",
            {"service_id", "from_process", "to_process", "name"},
            set(),
        )
        try:
            app_services.append(
                AppService(
                    service_id=entry["service_id"],
                    from_process=entry["from_process"],
                    to_process=entry["to_process"],
                    name=str(entry["name"]),
                )
            )
        except ValidationError as exc:
            problems.append(str(exc))

    assessments: dict[Characteristic, AssessmentSettings] = {}
    raw_assessments = fields.get("assessments", {})
    if not isinstance(raw_assessments, dict):
        raise FormatError("scope.assessments: expected an object keyed by characteristic")
    for token, raw_settings in raw_assessments.items():
        if isinstance(token, str) and token.startswith("_"):
            continue
        try:
            characteristic = parse_characteristic(str(token))
            assessments[characteristic] = settings_from_doc(
                raw_settings, f"scope.assessments[{token}]"
            )
        except ValidationError as exc:
            problems.append(str(exc))

    if problems:
        raise ValidationError("scope document is invalid", details=problems)

    return CollaborationScope(
        scope_id=_require_id(fields["scope_id"], "scope.scope_id"),
        name=str(fields["name"]),
        organizations=tuple(organizations),
        sub_processes=tuple(sub_processes),
        info_systems=tuple(info_systems),
        app_services=tuple(app_services),
        assessments=assessments,
        created_at=parse_utc(fields.get("created_at", format_utc(datetime.now(timezone.utc))), "scope.created_at"),
        version=fields.get("version", 1),
    )


def dumps_canonical(doc: dict) -> str:
    """Stable, human-readable JSON rendering used for all documents."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def loads_document(text: str, source: str = "<document>") -> dict:
    try:
        parsed = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(
            f"{source}: malformed document at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(parsed, dict):
        raise FormatError(f"{source}: expected a top-level object")
    return parsed


def load_scope(path: str | Path) -> CollaborationScope:
    """Load, parse, and fully validate a scope document."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    scope = parse_scope(loads_document(text, str(path)))
    report = validate_scope(scope)
    if not report.ok:
        raise ValidationError(
            f"scope document {path} failed validation", details=report.lines()
        )
    return scope


def save_scope(scope: CollaborationScope, path: str | Path) -> None:
    """Write the canonical form atomically; refuses an invalid scope."""
    report = validate_scope(scope)
    if not report.ok:
        raise ValidationError("refusing to save an invalid scope", details=report.lines())
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = dumps_canonical(scope_to_doc(scope))
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(payload)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def template_document(scope_id: str, name: str) -> dict:
    """Starter scope document with a two-organization skeleton.

    The ``_comment`` keys are ignored by the loader and explain how to fill
    the document in.
    """
    now = format_utc(datetime.now(timezone.utc))
    return {
        "_comment": (
            "Starter collaboration scope. Edit the organizations, processes, "
            "systems and services to describe your ecosystem, then fill in an "
            "assessment block per characteristic you want to grade."
        ),
        "schema_version": SCHEMA_VERSION,
        "scope_id": scope_id,
        "name": name,
        "version": 1,
        "created_at": now,
        "organizations": [
            {"org_id": "org-a", "name": "First organization"},
            {"org_id": "org-b", "name": "Second organization"},
        ],
        "sub_processes": [
            {"process_id": "proc-a", "owner_org": "org-a", "name": "Process A"},
            {"process_id": "proc-b", "owner_org": "org-b", "name": "Process B"},
        ],
        "info_systems": [
            {"system_id": "sys-a", "owner_org": "org-a", "name": "System A", "supports": ["proc-a"]},
            {"system_id": "sys-b", "owner_org": "org-b", "name": "System B", "supports": ["proc-b"]},
        ],
        "app_services": [
            {
                "service_id": "svc-1",
                "from_process": "proc-a",
                "to_process": "proc-b",
                "name": "Collaboration service",
            }
        ],
        "assessments": {
            "_comment": (
                "One block per characteristic token. org_maturities grades every "
                "organization 1..5; matrix rows are Process/Service/Data/"
                "Infrastructure and columns Syntactic/Semantic/Responsibilities/"
                "Organization/Platform/Communication (0 = compatible, 1 = "
                "incompatible); rates are ds (server availability), qos (network "
                "service quality) and ts (end-user satisfaction), each in [0, 1]."
            ),
            "Interoperability": {
                "org_maturities": {"org-a": 3, "org-b": 3},
                "matrix": [[0, 0, 0, 0, 0, 0] for _ in range(4)],
                "matrix_mode": "strict",
                "rates": {"ds": 0.95, "qos": 0.95, "ts": 0.9},
                "weights": [1.0, 1.0, 1.0],
            },
        },
    }
