"""Local HTTP service exposing assessment, planning, scopes, and timelines.

Thin layer over the workspace operations: one versioned base path
(``/api/v1``), JSON bodies in and out, CSV for timelines on request. Every
non-success response carries exactly one error envelope::

    {"error": {"code": "...", "message": "...", "details": [...]}}

with codes validation, not_found, infeasible, conflict, or internal.
"""

from __future__ import annotations

from datetime import datetime

from fastapi import Body, FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from ratqual.catalog import catalog_dump
from ratqual.errors import (
    ConflictError,
    FormatError,
    InfeasibleError,
    NotFoundError,
    OrderingError,
    RatQualError,
    SearchSpaceError,
    StoreIntegrityError,
    ValidationError,
)
from ratqual.scope import parse_scope, parse_utc, scope_to_doc, validate_scope
from ratqual.workspace import (
    Workspace,
    perform_assess,
    perform_plan,
    perform_timeline,
    scope_summary,
)

API_PREFIX = "/api/v1"


def _error_response(code: str, message: str, status: int, details: list | None = None) -> JSONResponse:
    error: dict = {"code": code, "message": message}
    if details:
        error["details"] = details
    return JSONResponse(status_code=status, content={"error": error})


def _handle_domain_error(exc: RatQualError) -> JSONResponse:
    if isinstance(exc, NotFoundError):
        return _error_response("not_found", str(exc), 404)
    if isinstance(exc, (ConflictError, OrderingError)):
        return _error_response("conflict", str(exc), 409)
    if isinstance(exc, InfeasibleError):
        return _error_response(
            "infeasible", str(exc), 422, details=[{"max_achievable": exc.max_achievable}]
        )
    if isinstance(exc, ValidationError):
        return _error_response("validation", str(exc), 400, details=exc.details or None)
    if isinstance(exc, (FormatError, SearchSpaceError)):
        return _error_response("validation", str(exc), 400)
    if isinstance(exc, StoreIntegrityError):
        return _error_response("internal", str(exc), 500)
    return _error_response("internal", str(exc), 500)


def _parse_window(since: str | None, until: str | None) -> tuple[datetime | None, datetime | None]:
    parsed_since = parse_utc(since, "from") if since else None
    parsed_until = parse_utc(until, "to") if until else None
    return parsed_since, parsed_until


def create_app(workspace: Workspace) -> FastAPI:
    app = FastAPI(title="ratqual", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RatQualError)
    async def domain_error_handler(request: Request, exc: RatQualError) -> JSONResponse:
        return _handle_domain_error(exc)

    @app.exception_handler(RequestValidationError)
    async def request_error_handler(
        request: Request, exc: RequestValidationError
    ) -> JSONResponse:
        return _error_response("validation", "malformed request", 400, details=exc.errors())

    @app.exception_handler(StarletteHTTPException)
    async def http_error_handler(
        request: Request, exc: StarletteHTTPException
    ) -> JSONResponse:
        code = "not_found" if exc.status_code == 404 else "internal"
        return _error_response(code, str(exc.detail), exc.status_code)

    @app.get(f"{API_PREFIX}/catalog")
    def get_catalog() -> dict:
        return catalog_dump()

    @app.get(f"{API_PREFIX}/scopes")
    def list_scopes() -> dict:
        return {
            "scopes": [
                scope_summary(workspace.load(scope_id))
                for scope_id in workspace.list_scope_ids()
            ]
        }

    @app.post(f"{API_PREFIX}/scopes", status_code=201)
    def create_scope(document: dict = Body(...)) -> dict:
        scope = parse_scope(document)
        report = validate_scope(scope)
        if not report.ok:
            raise ValidationError("scope document failed validation", details=report.lines())
        return scope_to_doc(workspace.create(scope))

    @app.get(f"{API_PREFIX}/scopes/{{scope_id}}")
    def read_scope(scope_id: str) -> dict:
        return scope_to_doc(workspace.load(scope_id))

    @app.put(f"{API_PREFIX}/scopes/{{scope_id}}")
    def update_scope(scope_id: str, document: dict = Body(...)) -> dict:
        scope = parse_scope(document)
        if scope.scope_id != scope_id:
            raise ValidationError(
                f"document scope_id {scope.scope_id!r} does not match path {scope_id!r}"
            )
        report = validate_scope(scope)
        if not report.ok:
            raise ValidationError("scope document failed validation", details=report.lines())
        return scope_to_doc(workspace.update(scope, expected_version=scope.version))

    @app.post(f"{API_PREFIX}/scopes/{{scope_id}}/characteristics/{{characteristic}}/assess")
    def assess_characteristic(
        scope_id: str,
        characteristic: str,
        record: bool = Query(default=False),
        label: str | None = Query(default=None),
        payload: dict | None = Body(default=None),
    ) -> dict:
        scope = workspace.load(scope_id)
        override = None
        if payload:
            override = payload.get("input", payload)
        return perform_assess(
            workspace, scope, characteristic, override_doc=override, record=record, label=label
        )

    @app.post(f"{API_PREFIX}/scopes/{{scope_id}}/characteristics/{{characteristic}}/plan")
    def plan_characteristic(
        scope_id: str,
        characteristic: str,
        payload: dict = Body(...),
    ) -> dict:
        scope = workspace.load(scope_id)
        if "target" not in payload:
            raise ValidationError("target: required field is missing")
        return perform_plan(
            workspace,
            scope,
            characteristic,
            target=payload["target"],
            costs=payload.get("costs"),
        )

    @app.get(f"{API_PREFIX}/scopes/{{scope_id}}/characteristics/{{characteristic}}/timeline")
    def timeline(
        request: Request,
        scope_id: str,
        characteristic: str,
        since: str | None = Query(default=None, alias="from"),
        until: str | None = Query(default=None, alias="to"),
        format: str | None = Query(default=None),
    ) -> Response:
        workspace.load(scope_id)  # unknown scope -> not_found
        window = _parse_window(since, until)
        report_doc, csv_text = perform_timeline(
            workspace, scope_id, characteristic, *window
        )
        accept = request.headers.get("accept", "")
        if format == "csv" or "text/csv" in accept:
            return Response(content=csv_text, media_type="text/csv")
        return JSONResponse(content=report_doc)

    return app
