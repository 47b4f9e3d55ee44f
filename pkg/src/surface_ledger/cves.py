"""CVE filtering, per-standard attribution, and tallying.

Attribution is rule-driven: each rule carries a route (how the report text
names the standard), a case-insensitive pattern matched on word boundaries,
and a target standard.  All matching rules fire and the standard set is
their union; route precedence (standard_name > js_endpoint > native_symbol >
functionality_keyword) affects only how an attributed CVE is labeled in
route breakdowns.  Rules with ``negate`` set suppress a target instead of
adding it.
"""

from __future__ import annotations

import csv
import json
import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .callgraph import CallGraph
from .errors import CveDataError
from .idl import FeatureCatalog

CVE_ID_RE = re.compile(r"CVE-(\d{4})-(\d{4,})\Z")


class Severity(str, Enum):
    LOW = "low"
    MODERATE = "moderate"
    HIGH = "high"
    SEVERE = "severe"


class Route(str, Enum):
    STANDARD_NAME = "standard_name"
    JS_ENDPOINT = "js_endpoint"
    NATIVE_SYMBOL = "native_symbol"
    FUNCTIONALITY_KEYWORD = "functionality_keyword"


ROUTE_PRECEDENCE: tuple[Route, ...] = (
    Route.STANDARD_NAME,
    Route.JS_ENDPOINT,
    Route.NATIVE_SYMBOL,
    Route.FUNCTIONALITY_KEYWORD,
)


class AttributionStatus(str, Enum):
    DISCARDED = "discarded"
    UNATTRIBUTED = "unattributed"
    ATTRIBUTED = "attributed"


@dataclass(frozen=True)
class CveRecord:
    id: str
    year: int
    description: str
    severity: Severity
    product_hint: str = ""

    def __post_init__(self) -> None:
        m = CVE_ID_RE.match(self.id)
        if not m:
            raise CveDataError(f"malformed CVE id {self.id!r}")
        if int(m.group(1)) != self.year:
            raise CveDataError(f"{self.id}: year field {self.year} does not match id")


def cve_from_json(obj: Mapping[str, object]) -> CveRecord:
    try:
        cve_id = str(obj["id"])
        m = CVE_ID_RE.match(cve_id)
        if not m:
            raise CveDataError(f"malformed CVE id {cve_id!r}")
        return CveRecord(
            id=cve_id,
            year=int(obj.get("year", m.group(1))),
            description=str(obj["description"]),
            severity=Severity(str(obj["severity"])),
            product_hint=str(obj.get("product_hint", "")),
        )
    except (KeyError, ValueError) as exc:
        raise CveDataError(f"malformed CVE record {obj!r}: {exc}") from exc


def read_cve_records(path: str | Path) -> list[CveRecord]:
    records = []
    seen: set[str] = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        rec = cve_from_json(json.loads(line))
        if rec.id in seen:
            raise CveDataError(f"duplicate CVE id {rec.id}")
        seen.add(rec.id)
        records.append(rec)
    return records


def severity_from_score(score: float) -> Severity:
    """Map a numeric feed score onto the four-level scale (>=9 severe,
    >=7 high, >=4 moderate)."""
    if score >= 9.0:
        return Severity.SEVERE
    if score >= 7.0:
        return Severity.HIGH
    if score >= 4.0:
        return Severity.MODERATE
    return Severity.LOW


@dataclass(frozen=True)
class AttributionRule:
    route: Route
    pattern: str
    target: str
    negate: bool = False

    def __post_init__(self) -> None:
        if not self.pattern:
            raise CveDataError("rule pattern must be non-empty")

    def matches(self, text: str) -> bool:
        return _compile_pattern(self.pattern).search(text) is not None


def _compile_pattern(pattern: str, _cache: dict[str, re.Pattern[str]] = {}) -> re.Pattern[str]:
    regex = _cache.get(pattern)
    if regex is None:
        # Literal match bounded at word edges; lookarounds keep patterns that
        # begin or end with punctuation (e.g. dotted endpoints) matchable.
        regex = re.compile(r"(?<!\w)" + re.escape(pattern) + r"(?!\w)", re.IGNORECASE)
        _cache[pattern] = regex
    return regex


def read_rules_csv(path: str | Path, catalog: FeatureCatalog | None = None) -> list[AttributionRule]:
    """Rules CSV: ``route,pattern,target_abbrev,negate``."""
    rules: list[AttributionRule] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"route", "pattern", "target_abbrev", "negate"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise CveDataError(f"rules file {path} must have header {sorted(required)}")
        for row in reader:
            rule = AttributionRule(
                route=Route(row["route"].strip()),
                pattern=row["pattern"].strip(),
                target=row["target_abbrev"].strip(),
                negate=row["negate"].strip().lower() in {"1", "true", "yes"},
            )
            if catalog is not None and rule.target not in catalog.standards:
                raise CveDataError(f"rule targets unknown standard {rule.target!r}")
            rules.append(rule)
    return rules


@dataclass(frozen=True)
class AttributionResult:
    cve_id: str
    status: AttributionStatus
    standards: frozenset[str]
    routes_used: frozenset[Route]

    def __post_init__(self) -> None:
        if self.status is AttributionStatus.ATTRIBUTED and not self.standards:
            raise CveDataError(f"{self.cve_id}: attributed result with empty standard set")
        if self.status is not AttributionStatus.ATTRIBUTED and self.standards:
            raise CveDataError(f"{self.cve_id}: {self.status.value} result with standards")


def filter_browser_cves(
    records: Iterable[CveRecord],
    discard_keywords: Sequence[str],
    year_floor: int = 2010,
) -> tuple[list[CveRecord], list[CveRecord]]:
    """Split records into (kept, discarded).

    A record is discarded when its description or product hint matches a
    discard keyword (reports predominantly about other software) or when it
    predates the year floor.
    """
    kept: list[CveRecord] = []
    discarded: list[CveRecord] = []
    for rec in records:
        text = f"{rec.description}\n{rec.product_hint}"
        if rec.year < year_floor or any(
            _compile_pattern(kw).search(text) for kw in discard_keywords
        ):
            discarded.append(rec)
        else:
            kept.append(rec)
    return kept, discarded


def attribute(
    record: CveRecord,
    rules: Sequence[AttributionRule],
    catalog: FeatureCatalog | None = None,
) -> AttributionResult:
    """Attribute one kept record.  No match means unattributed, never an error."""
    matched: dict[str, set[Route]] = {}
    suppressed: set[str] = set()
    for rule in rules:
        if catalog is not None and rule.target not in catalog.standards:
            raise CveDataError(f"rule targets unknown standard {rule.target!r}")
        if not rule.matches(record.description):
            continue
        if rule.negate:
            suppressed.add(rule.target)
        else:
            matched.setdefault(rule.target, set()).add(rule.route)
    for target in suppressed:
        matched.pop(target, None)
    if not matched:
        return AttributionResult(record.id, AttributionStatus.UNATTRIBUTED, frozenset(), frozenset())
    routes = frozenset(route for routes in matched.values() for route in routes)
    return AttributionResult(record.id, AttributionStatus.ATTRIBUTED, frozenset(matched), routes)


def attribute_all(
    records: Iterable[CveRecord],
    rules: Sequence[AttributionRule],
    catalog: FeatureCatalog | None = None,
    discarded: Iterable[CveRecord] = (),
) -> list[AttributionResult]:
    results = [attribute(rec, rules, catalog) for rec in records]
    results.extend(
        AttributionResult(rec.id, AttributionStatus.DISCARDED, frozenset(), frozenset())
        for rec in discarded
    )
    return results


def reporting_route(result: AttributionResult) -> Route | None:
    """Highest-precedence route among those that matched."""
    for route in ROUTE_PRECEDENCE:
        if route in result.routes_used:
            return route
    return None


@dataclass(frozen=True)
class StandardCveCount:
    cve_count: int
    high_or_severe_count: int


@dataclass(frozen=True)
class CveTally:
    per_standard: Mapping[str, StandardCveCount]
    deduplicated_total: int
    attributed_ids: frozenset[str]


def tally(results: Sequence[AttributionResult], records: Sequence[CveRecord]) -> CveTally:
    """Per-standard counts (a CVE attributed to k standards increments all k)
    plus the deduplicated total of attributed CVEs."""
    by_id = {rec.id: rec for rec in records}
    counts: Counter[str] = Counter()
    high: Counter[str] = Counter()
    attributed_ids: set[str] = set()
    for result in results:
        if result.cve_id not in by_id:
            raise CveDataError(f"result references unknown cve_id {result.cve_id}")
        if result.status is not AttributionStatus.ATTRIBUTED:
            continue
        attributed_ids.add(result.cve_id)
        severe = by_id[result.cve_id].severity in (Severity.HIGH, Severity.SEVERE)
        for std in result.standards:
            counts[std] += 1
            if severe:
                high[std] += 1
    per_standard = {
        std: StandardCveCount(counts[std], high[std]) for std in sorted(counts)
    }
    return CveTally(per_standard, len(attributed_ids), frozenset(attributed_ids))


def route_breakdown(results: Sequence[AttributionResult]) -> dict[Route, float]:
    """Fractions of attributed CVEs by highest-precedence route; sums to 1
    whenever anything was attributed."""
    labels = [
        reporting_route(r) for r in results if r.status is AttributionStatus.ATTRIBUTED
    ]
    total = len(labels)
    if total == 0:
        return {route: 0.0 for route in ROUTE_PRECEDENCE}
    return {route: labels.count(route) / total for route in ROUTE_PRECEDENCE}


def suggest_native_symbol_rules(
    records: Iterable[CveRecord],
    graph: CallGraph,
    standards: Iterable[str],
) -> list[AttributionRule]:
    """Suggest native_symbol rules: a symbol named in a description that is
    exclusive to a standard points the CVE at that standard.  Suggestions are
    advisory; they take effect only once copied into the rule file."""
    from .callgraph import exclusive_functions

    ordered = sorted(set(standards))
    suggestions: dict[tuple[str, str], AttributionRule] = {}
    for std in ordered:
        members = exclusive_functions(graph, std, known_standards=ordered)
        symbols = {graph.nodes[nid].display_name for nid in members}
        for rec in records:
            for symbol in symbols:
                if symbol and _compile_pattern(symbol).search(rec.description):
                    suggestions[(symbol, std)] = AttributionRule(
                        Route.NATIVE_SYMBOL, symbol, std
                    )
    return sorted(suggestions.values(), key=lambda r: (r.pattern, r.target))


# ---------------------------------------------------------------------------
# External formats


def attribution_to_json(result: AttributionResult) -> dict[str, object]:
    return {
        "cve_id": result.cve_id,
        "status": result.status.value,
        "standards": sorted(result.standards),
        "routes_used": sorted(r.value for r in result.routes_used),
    }


def attribution_from_json(obj: Mapping[str, object]) -> AttributionResult:
    return AttributionResult(
        cve_id=str(obj["cve_id"]),
        status=AttributionStatus(str(obj["status"])),
        standards=frozenset(str(s) for s in obj["standards"]),  # type: ignore[union-attr]
        routes_used=frozenset(Route(str(r)) for r in obj["routes_used"]),  # type: ignore[union-attr]
    )


def read_attributions(path: str | Path) -> list[AttributionResult]:
    return [
        attribution_from_json(json.loads(line))
        for line in Path(path).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
