"""Cost-benefit analysis of browser Web API standards.

Attributes implementation complexity (exclusive lines of code) and
vulnerability history (CVEs) to Web API standards, combines them with
measured per-standard site break rates, and emits feature-blocking
policies consumed by the enforcement runtime.
"""

from .benefit import (
    BreakRateResult,
    SiteTest,
    UsageRecord,
    agreement,
    break_rate_table,
    raw_break_fraction,
    weighted_break_rate,
)
from .callgraph import (
    CallGraph,
    ElocResult,
    FunctionNode,
    NodeKind,
    eloc_table,
    exclusive_functions,
    exclusive_loc,
    load_callgraph,
)
from .cves import (
    AttributionResult,
    AttributionRule,
    AttributionStatus,
    CveRecord,
    CveTally,
    Route,
    Severity,
    attribute,
    attribute_all,
    filter_browser_cves,
    route_breakdown,
    severity_from_score,
    tally,
)
from .errors import (
    BenefitDataError,
    CallGraphError,
    CatalogError,
    CveDataError,
    IdlSyntaxError,
    LedgerError,
    NoDataError,
    PolicyError,
    SurfaceLedgerError,
)
from .idl import (
    FeatureCatalog,
    FeatureId,
    InterfaceDefinition,
    MemberKind,
    StandardId,
    build_catalog,
    catalog_from_json,
    catalog_to_json,
    features_of,
    parse_webidl,
    serialize_webidl,
)
from .scoring import (
    BlockPolicy,
    LedgerRow,
    OriginRule,
    PolicyStats,
    StandardLedger,
    build_ledger,
    evaluate_policy,
    generate_policy,
    parse_policy,
    serialize_policy,
)

__version__ = "0.1.0"
