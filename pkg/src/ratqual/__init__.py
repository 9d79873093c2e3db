"""Assessment, planning, and monitoring of external information-system quality.

The quality ratio of one characteristic aggregates three aspect values, each
in [0, 1]: internal readiness (potentiality of the weakest organization),
external compatibility (the barrier matrix degree), and in-use operational
performance (geometric mean of availability and satisfaction rates).
"""

__version__ = "0.1.0"

from ratqual.catalog import (
    Category,
    Characteristic,
    MaturityModelRef,
    catalog_dump,
    list_characteristics,
    maturity_models_for,
)
from ratqual.core import (
    AggregationWeights,
    AssessmentInput,
    AssessmentResult,
    CompatibilityMatrix,
    OperationalRates,
    OrgMaturity,
    aggregate,
    assess,
    compatibility_degree,
    operational_performance,
    potentiality,
    potentiality_of_org,
)
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
from ratqual.planner import (
    ActionCostModel,
    FixCompatibilityCell,
    ImproveRate,
    RaiseMaturity,
    RateKind,
    Scenario,
    brute_force_plan,
    explain_scenario,
    plan,
    project,
)
from ratqual.scope import (
    AppService,
    CollaborationScope,
    InfoSystem,
    Organization,
    SubProcess,
    load_scope,
    save_scope,
    validate_scope,
)
from ratqual.monitoring import (
    Snapshot,
    SnapshotStore,
    TrendReport,
    export_csv,
    trend_report,
)

__all__ = [
    "__version__",
    "Category",
    "Characteristic",
    "MaturityModelRef",
    "catalog_dump",
    "list_characteristics",
    "maturity_models_for",
    "AggregationWeights",
    "AssessmentInput",
    "AssessmentResult",
    "CompatibilityMatrix",
    "OperationalRates",
    "OrgMaturity",
    "aggregate",
    "assess",
    "compatibility_degree",
    "operational_performance",
    "potentiality",
    "potentiality_of_org",
    "RatQualError",
    "ValidationError",
    "FormatError",
    "NotFoundError",
    "ConflictError",
    "OrderingError",
    "StoreIntegrityError",
    "InfeasibleError",
    "SearchSpaceError",
    "ActionCostModel",
    "FixCompatibilityCell",
    "ImproveRate",
    "RaiseMaturity",
    "RateKind",
    "Scenario",
    "brute_force_plan",
    "explain_scenario",
    "plan",
    "project",
    "AppService",
    "CollaborationScope",
    "InfoSystem",
    "Organization",
    "SubProcess",
    "load_scope",
    "save_scope",
    "validate_scope",
    "Snapshot",
    "SnapshotStore",
    "TrendReport",
    "export_csv",
    "trend_report",
]
