"""File-backed workspace shared by the CLI and the HTTP service.

Holds the scope documents and the snapshot store under one home directory
and provides the request-level operations (assess, plan, timeline) so both
entry points produce identical payloads from identical state.
"""

from __future__ import annotations

from datetime import datetime
from pathlib import Path

from ratqual.catalog import Characteristic, parse_characteristic
from ratqual.core import assess
from ratqual.errors import ConflictError, NotFoundError
from ratqual.monitoring import (
    SnapshotStore,
    export_csv,
    report_to_doc,
    safe_store_id,
    trend_report,
)
from ratqual.planner import ActionCostModel, cost_model_from_doc, plan, scenario_to_doc
from ratqual.scope import (
    CollaborationScope,
    format_utc,
    input_from_doc,
    input_to_doc,
    load_scope,
    result_to_doc,
    save_scope,
)


class Workspace:
    def __init__(self, home: str | Path):
        self.home = Path(home)
        self.scopes_dir = self.home / "scopes"
        self.snapshots = SnapshotStore(self.home / "snapshots")

    def scope_path(self, scope_id: str) -> Path:
        return self.scopes_dir / f"{safe_store_id(scope_id)}.json"

    def list_scope_ids(self) -> list[str]:
        if not self.scopes_dir.is_dir():
            return []
        return sorted(path.stem for path in self.scopes_dir.glob("*.json"))

    def load(self, scope_id: str) -> CollaborationScope:
        path = self.scope_path(scope_id)
        if not path.exists():
            raise NotFoundError(f"scope {scope_id!r} does not exist")
        return load_scope(path)

    def create(self, scope: CollaborationScope) -> CollaborationScope:
        path = self.scope_path(scope.scope_id)
        if path.exists():
            raise ConflictError(f"scope {scope.scope_id!r} already exists")
        save_scope(scope, path)
        return scope

    def update(self, scope: CollaborationScope, expected_version: int) -> CollaborationScope:
        """Compare-and-swap write: the stored version must equal the expected one."""
        current = self.load(scope.scope_id)
        if current.version != expected_version:
            raise ConflictError(
                f"scope {scope.scope_id!r} is at version {current.version}, "
                f"update expected version {expected_version}"
            )
        updated = CollaborationScope(
            scope_id=scope.scope_id,
            name=scope.name,
            organizations=scope.organizations,
            sub_processes=scope.sub_processes,
            info_systems=scope.info_systems,
            app_services=scope.app_services,
            assessments=scope.assessments,
            created_at=scope.created_at,
            version=expected_version + 1,
        )
        save_scope(updated, self.scope_path(scope.scope_id))
        return updated


def perform_assess(
    workspace: Workspace,
    scope: CollaborationScope,
    characteristic: Characteristic | str,
    override_doc: dict | None = None,
    record: bool = False,
    label: str | None = None,
    taken_at: datetime | None = None,
) -> dict:
    """Resolve the input, assess it, optionally append a snapshot.

    Returns the payload served by both the CLI machine format and the HTTP
    assess endpoint.
    """
    if not isinstance(characteristic, Characteristic):
        characteristic = parse_characteristic(characteristic)
    if override_doc is not None:
        assessment = input_from_doc(override_doc, characteristic, path="input")
    else:
        assessment = scope.assessment_input(characteristic)
    result = assess(assessment)
    payload = {
        "scope_id": scope.scope_id,
        "characteristic": characteristic.value,
        "input": input_to_doc(assessment),
        "result": result_to_doc(result),
        "recorded": False,
    }
    if record:
        snapshot = workspace.snapshots.record_snapshot(
            scope.scope_id, characteristic, assessment, label=label, taken_at=taken_at
        )
        payload["recorded"] = True
        payload["snapshot"] = {
            "taken_at": format_utc(snapshot.taken_at),
            "input_digest": snapshot.input_digest,
            "label": snapshot.label,
        }
    return payload


def perform_plan(
    workspace: Workspace,
    scope: CollaborationScope,
    characteristic: Characteristic | str,
    target: float,
    costs: ActionCostModel | dict | None = None,
) -> dict:
    if not isinstance(characteristic, Characteristic):
        characteristic = parse_characteristic(characteristic)
    if isinstance(costs, dict):
        costs = cost_model_from_doc(costs)
    assessment = scope.assessment_input(characteristic)
    scenario = plan(assessment, target, costs)
    payload = {
        "scope_id": scope.scope_id,
        "characteristic": characteristic.value,
    }
    payload.update(scenario_to_doc(scenario))
    return payload


def perform_timeline(
    workspace: Workspace,
    scope_id: str,
    characteristic: Characteristic | str,
    since: datetime | None = None,
    until: datetime | None = None,
) -> tuple[dict, str]:
    """Trend report for one stream as (document, csv) from one computation."""
    report = trend_report(workspace.snapshots, scope_id, characteristic, since, until)
    return report_to_doc(report), export_csv(report)


def scope_summary(scope: CollaborationScope) -> dict:
    return {
        "scope_id": scope.scope_id,
        "name": scope.name,
        "version": scope.version,
        "created_at": format_utc(scope.created_at),
        "characteristics_assessed": [
            char.value for char in scope.assessments
        ],
    }


__all__ = [
    "Workspace",
    "perform_assess",
    "perform_plan",
    "perform_timeline",
    "scope_summary",
]
