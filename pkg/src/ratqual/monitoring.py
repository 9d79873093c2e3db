"""Append-only snapshot store and trend reporting.

Each scope gets one line-delimited record file; a record binds a timestamped
assessment input (plus its content digest) to the computed result. Records
are never mutated or deleted. Writers serialize appends through an advisory
file lock and write each record as a single terminated line, so readers see
only whole records and a crashed write leaves, at worst, an ignorable
unterminated tail.
"""

from __future__ import annotations

import fcntl
import hashlib
import json
import os
import re
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path

from ratqual.catalog import Characteristic, parse_characteristic
from ratqual.core import AssessmentInput, AssessmentResult, assess
from ratqual.errors import (
    FormatError,
    OrderingError,
    StoreIntegrityError,
    ValidationError,
)
from ratqual.scope import format_utc, input_from_doc, input_to_doc, parse_utc, result_to_doc

RECORD_SCHEMA_VERSION = 1
RESULT_TOLERANCE = 1e-12

ASPECTS = ("qp", "dc", "po", "ratqual")

_SAFE_ID = re.compile(r"[A-Za-z0-9][A-Za-z0-9._-]*")


def safe_store_id(scope_id: str) -> str:
    if not isinstance(scope_id, str) or not _SAFE_ID.fullmatch(scope_id):
        raise ValidationError(
            f"scope_id {scope_id!r} is not filename-safe; use letters, digits, "
            "dot, underscore or hyphen"
        )
    return scope_id


def digest_input(assessment: AssessmentInput) -> str:
    canonical = json.dumps(
        input_to_doc(assessment), sort_keys=True, separators=(",", ":")
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class Snapshot:
    """One timestamped assessment of a (scope, characteristic) stream."""

    scope_id: str
    characteristic: Characteristic
    taken_at: datetime
    input_digest: str
    result: AssessmentResult
    label: str | None
    input: AssessmentInput


@dataclass(frozen=True)
class TrendPoint:
    taken_at: datetime
    qp: float
    dc: float
    po: float
    ratqual: float


@dataclass(frozen=True)
class Regression:
    """An aspect that decreased between two consecutive snapshots."""

    aspect: str
    taken_at: datetime
    delta: float


@dataclass(frozen=True)
class TrendReport:
    scope_id: str
    characteristic: Characteristic
    series: tuple[TrendPoint, ...]
    deltas: dict[str, float]
    flags: tuple[Regression, ...]


def snapshot_to_record(snapshot: Snapshot) -> dict:
    return {
        "schema_version": RECORD_SCHEMA_VERSION,
        "scope_id": snapshot.scope_id,
        "characteristic": snapshot.characteristic.value,
        "taken_at": format_utc(snapshot.taken_at),
        "label": snapshot.label,
        "input": input_to_doc(snapshot.input),
        "input_digest": snapshot.input_digest,
        "result": result_to_doc(snapshot.result),
    }


def _snapshot_from_record(record: dict, source: str, verify: bool) -> Snapshot:
    try:
        characteristic = parse_characteristic(record["characteristic"])
        assessment = input_from_doc(record["input"], characteristic)
        stored = record["result"]
        result = AssessmentResult(
            qp=float(stored["qp"]),
            dc=float(stored["dc"]),
            po=float(stored["po"]),
            ratqual=float(stored["ratqual"]),
        )
        snapshot = Snapshot(
            scope_id=str(record["scope_id"]),
            characteristic=characteristic,
            taken_at=parse_utc(record["taken_at"], f"{source}.taken_at"),
            input_digest=str(record["input_digest"]),
            result=result,
            label=record.get("label"),
            input=assessment,
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{source}: malformed snapshot record ({exc!r})") from None
    if verify:
        if digest_input(assessment) != snapshot.input_digest:
            raise StoreIntegrityError(
                f"{source}: stored input does not match its digest"
            )
        recomputed = assess(assessment)
        drift = max(
            abs(getattr(recomputed, aspect) - getattr(result, aspect))
            for aspect in ASPECTS
        )
        if drift > RESULT_TOLERANCE:
            raise StoreIntegrityError(
                f"{source}: stored result drifts from recomputation by {drift!r}"
            )
    return snapshot


class SnapshotStore:
    """One append-only record file per scope under a root directory."""

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def path_for(self, scope_id: str) -> Path:
        return self.root / f"{safe_store_id(scope_id)}.jsonl"

    def record_snapshot(
        self,
        scope_id: str,
        characteristic: Characteristic | str,
        assessment: AssessmentInput,
        label: str | None = None,
        taken_at: datetime | None = None,
    ) -> Snapshot:
        """Assess the input and append the result to the stream.

        Timestamps are caller-supplied for testability. The convenience
        default clock never violates stream monotonicity: if the wall clock
        has not advanced past the last record it nudges one microsecond
        forward. An explicit ``taken_at`` at or before the previous record
        raises instead.
        """
        if not isinstance(characteristic, Characteristic):
            characteristic = parse_characteristic(characteristic)
        if assessment.characteristic is not characteristic:
            raise ValidationError(
                f"input: assessed characteristic {assessment.characteristic.value!r} "
                f"does not match stream characteristic {characteristic.value!r}"
            )
        result = assess(assessment)
        explicit = taken_at is not None
        if taken_at is None:
            taken_at = datetime.now(timezone.utc)
        elif taken_at.tzinfo is None:
            raise ValidationError("taken_at: timestamp must be timezone-aware UTC")

        path = self.path_for(scope_id)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "a+", encoding="utf-8") as handle:
            fcntl.flock(handle.fileno(), fcntl.LOCK_EX)
            try:
                handle.seek(0)
                last = self._last_timestamp(handle, scope_id, characteristic)
                if last is not None and taken_at <= last:
                    if explicit:
                        raise OrderingError(
                            f"taken_at {format_utc(taken_at)} is not after the "
                            f"previous snapshot at {format_utc(last)}"
                        )
                    taken_at = last + timedelta(microseconds=1)
                snapshot = Snapshot(
                    scope_id=scope_id,
                    characteristic=characteristic,
                    taken_at=taken_at,
                    input_digest=digest_input(assessment),
                    result=result,
                    label=label,
                    input=assessment,
                )
                line = json.dumps(
                    snapshot_to_record(snapshot), separators=(",", ":")
                )
                handle.seek(0, os.SEEK_END)
                handle.write(line + "\n")
                handle.flush()
                os.fsync(handle.fileno())
            finally:
                fcntl.flock(handle.fileno(), fcntl.LOCK_UN)
        return snapshot

    def _last_timestamp(
        self, handle, scope_id: str, characteristic: Characteristic
    ) -> datetime | None:
        last: datetime | None = None
        for record in self._iter_records(handle, str(self.path_for(scope_id))):
            if record.get("characteristic") == characteristic.value:
                last = parse_utc(record["taken_at"], "snapshot.taken_at")
        return last

    @staticmethod
    def _iter_records(handle, source: str):
        for index, line in enumerate(handle, start=1):
            if not line.endswith("\n"):
                # Unterminated tail from an interrupted append: not a record.
                break
            line = line.strip()
            if not line:
                continue
            try:
                yield json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(
                    f"{source}: malformed record on line {index}: {exc.msg}"
                ) from None

    def read_snapshots(
        self,
        scope_id: str,
        characteristic: Characteristic | str | None = None,
        verify: bool = True,
    ) -> list[Snapshot]:
        """All snapshots for a scope (optionally one stream), oldest first.

        With ``verify`` (the default) every record is recomputed from its
        stored input and checked against the stored digest and result.
        """
        if characteristic is not None and not isinstance(characteristic, Characteristic):
            characteristic = parse_characteristic(characteristic)
        path = self.path_for(scope_id)
        if not path.exists():
            return []
        snapshots: list[Snapshot] = []
        with open(path, "r", encoding="utf-8") as handle:
            for record in self._iter_records(handle, str(path)):
                if (
                    characteristic is not None
                    and record.get("characteristic") != characteristic.value
                ):
                    continue
                snapshots.append(_snapshot_from_record(record, str(path), verify))
        snapshots.sort(key=lambda s: s.taken_at)
        return snapshots


def trend_report(
    store: SnapshotStore,
    scope_id: str,
    characteristic: Characteristic | str,
    since: datetime | None = None,
    until: datetime | None = None,
) -> TrendReport:
    """Windowed series with per-aspect first-to-last deltas and regressions.

    An empty window is an empty report, not an error.
    """
    if not isinstance(characteristic, Characteristic):
        characteristic = parse_characteristic(characteristic)
    if since is not None and until is not None and since > until:
        raise ValidationError(
            f"window: from {format_utc(since)} is after to {format_utc(until)}"
        )
    snapshots = store.read_snapshots(scope_id, characteristic)
    points = [
        TrendPoint(
            taken_at=s.taken_at,
            qp=s.result.qp,
            dc=s.result.dc,
            po=s.result.po,
            ratqual=s.result.ratqual,
        )
        for s in snapshots
        if (since is None or s.taken_at >= since)
        and (until is None or s.taken_at <= until)
    ]
    deltas = {aspect: 0.0 for aspect in ASPECTS}
    if len(points) >= 2:
        first, last = points[0], points[-1]
        deltas = {
            aspect: getattr(last, aspect) - getattr(first, aspect)
            for aspect in ASPECTS
        }
    flags: list[Regression] = []
    for earlier, later in zip(points, points[1:]):
        for aspect in ASPECTS:
            delta = getattr(later, aspect) - getattr(earlier, aspect)
            if delta < 0:
                flags.append(
                    Regression(aspect=aspect, taken_at=later.taken_at, delta=delta)
                )
    return TrendReport(
        scope_id=scope_id,
        characteristic=characteristic,
        series=tuple(points),
        deltas=deltas,
        flags=tuple(flags),
    )


def _csv_field(value: str) -> str:
    if any(ch in value for ch in (",", '"', "\n", "\r")):
        return '"' + value.replace('"', '""') + '"'
    return value


def export_csv(report: TrendReport) -> str:
    """Full-precision CSV: header then one row per snapshot."""
    lines = ["taken_at,qp,dc,po,ratqual"]
    for point in report.series:
        lines.append(
            ",".join(
                [
                    _csv_field(format_utc(point.taken_at)),
                    repr(point.qp),
                    repr(point.dc),
                    repr(point.po),
                    repr(point.ratqual),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def report_to_doc(report: TrendReport) -> dict:
    return {
        "scope_id": report.scope_id,
        "characteristic": report.characteristic.value,
        "series": [
            {
                "taken_at": format_utc(p.taken_at),
                "qp": p.qp,
                "dc": p.dc,
                "po": p.po,
                "ratqual": p.ratqual,
            }
            for p in report.series
        ],
        "deltas": dict(report.deltas),
        "flags": [
            {"aspect": f.aspect, "taken_at": format_utc(f.taken_at), "delta": f.delta}
            for f in report.flags
        ],
    }
