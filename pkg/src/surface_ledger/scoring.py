"""Ledger fusion, blocking policies, and policy statistics.

The policy wire format is the contract between this analyzer and the
enforcement runtime:

    {"version": 1, "name": ..., "blocked": [...], "whitelist": [...],
     "per_origin": {"<origin-pattern>": {"allow": [...], "block": [...]}},
     "debug": false}

Origin patterns are an exact ``scheme://host[:port]`` or a ``*.host``
suffix pattern.  Unknown fields are rejected and parsers refuse documents
with a higher major version.  WebCrypto (WCR) is whitelisted by default:
replacing cryptographic results with neutral placeholder values fails open
in the worst way, so it is never blockable unless configured explicitly.
"""

from __future__ import annotations

import csv
import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .benefit import BreakRateResult
from .callgraph import ElocResult
from .cves import AttributionResult, AttributionStatus, CveTally, StandardCveCount
from .errors import LedgerError, PolicyError

POLICY_VERSION = 1
DEFAULT_WHITELIST = frozenset({"WCR"})

_EXACT_ORIGIN_RE = re.compile(r"[a-z][a-z0-9+.-]*://[A-Za-z0-9._-]+(:\d+)?\Z")
_SUFFIX_ORIGIN_RE = re.compile(r"\*\.[A-Za-z0-9._-]+\Z")


@dataclass(frozen=True)
class LedgerRow:
    abbrev: str
    name: str
    sites_using: int
    weighted_break_rate: float | None
    agreement: float | None
    cve_count: int
    high_severe_count: int
    eloc: int
    eloc_share: float
    attack_paper_count: int


@dataclass(frozen=True)
class StandardLedger:
    rows: tuple[LedgerRow, ...]

    def __post_init__(self) -> None:
        for row in self.rows:
            if min(row.cve_count, row.high_severe_count, row.eloc, row.attack_paper_count) < 0:
                raise LedgerError(f"{row.abbrev}: negative count")
        total = self.total_eloc
        if total > 0:
            share_sum = sum(r.eloc_share for r in self.rows)
            if abs(share_sum - 1.0) > 1e-9:
                raise LedgerError(f"eloc shares sum to {share_sum}, expected 1")

    @property
    def total_eloc(self) -> int:
        return sum(r.eloc for r in self.rows)

    @property
    def abbreviations(self) -> list[str]:
        return [r.abbrev for r in self.rows]

    def row(self, abbrev: str) -> LedgerRow:
        for r in self.rows:
            if r.abbrev == abbrev:
                return r
        raise LedgerError(f"unknown standard {abbrev!r} in ledger")


def build_ledger(
    eloc_results: Sequence[ElocResult],
    cve_tally: CveTally,
    break_rates: Sequence[BreakRateResult],
    attack_counts: Mapping[str, int],
    names: Mapping[str, str],
    *,
    strict: bool = True,
) -> StandardLedger:
    """Fuse the four per-standard columns into one row per standard.

    In strict mode the eloc table, break rates, attack counts, and name map
    must cover the same standard set (the CVE tally only lists standards
    with at least one attribution); lenient mode fills gaps with zeros.
    """
    eloc_by_std = {r.standard: r for r in eloc_results}
    rates_by_std = {r.standard: r for r in break_rates}
    cols: dict[str, set[str]] = {
        "eloc": set(eloc_by_std),
        "break_rates": set(rates_by_std),
        "attack_counts": set(attack_counts),
        "names": set(names),
    }
    universe = set().union(*cols.values())
    if strict:
        problems = []
        for label, present in cols.items():
            missing = universe - present
            if missing:
                problems.append(f"{label} missing {sorted(missing)}")
        extra_cves = set(cve_tally.per_standard) - universe
        if extra_cves:
            problems.append(f"cve tally has unknown standards {sorted(extra_cves)}")
        if problems:
            raise LedgerError("ledger inputs disagree: " + "; ".join(problems))

    rows = []
    for std in sorted(universe):
        eloc = eloc_by_std.get(std)
        rate = rates_by_std.get(std)
        counts = cve_tally.per_standard.get(std, StandardCveCount(0, 0))
        rows.append(
            LedgerRow(
                abbrev=std,
                name=names.get(std, std),
                sites_using=rate.sites_using if rate else 0,
                weighted_break_rate=rate.weighted_break_rate if rate else None,
                agreement=rate.agreement if rate else None,
                cve_count=counts.cve_count,
                high_severe_count=counts.high_or_severe_count,
                eloc=eloc.eloc if eloc else 0,
                eloc_share=eloc.eloc_share if eloc else 0.0,
                attack_paper_count=attack_counts.get(std, 0),
            )
        )
    return StandardLedger(tuple(rows))


# ---------------------------------------------------------------------------
# Policies


@dataclass(frozen=True)
class OriginRule:
    allow: frozenset[str]
    block: frozenset[str]

    def __post_init__(self) -> None:
        overlap = self.allow & self.block
        if overlap:
            raise PolicyError(f"origin rule both allows and blocks {sorted(overlap)}")


@dataclass(frozen=True)
class BlockPolicy:
    name: str
    blocked: frozenset[str]
    whitelist: frozenset[str] = DEFAULT_WHITELIST
    per_origin: Mapping[str, OriginRule] = field(default_factory=dict)
    debug: bool = False
    version: int = POLICY_VERSION

    def __post_init__(self) -> None:
        overlap = self.blocked & self.whitelist
        if overlap:
            raise PolicyError(f"blocked and whitelist overlap: {sorted(overlap)}")
        for pattern in self.per_origin:
            if not (_EXACT_ORIGIN_RE.match(pattern) or _SUFFIX_ORIGIN_RE.match(pattern)):
                raise PolicyError(f"invalid origin pattern {pattern!r}")

    def blocked_for_origin(self, origin: str | None) -> frozenset[str]:
        """Effective blocked set after per-origin overrides and whitelist."""
        blocked = set(self.blocked)
        if origin is not None:
            for pattern, rule in self.per_origin.items():
                if _origin_matches(pattern, origin):
                    blocked |= rule.block
                    blocked -= rule.allow
        return frozenset(blocked - self.whitelist)


def _origin_matches(pattern: str, origin: str) -> bool:
    if pattern == origin:
        return True
    if pattern.startswith("*."):
        host = origin.split("://", 1)[-1].split(":", 1)[0]
        suffix = pattern[2:]
        return host == suffix or host.endswith("." + suffix)
    return False


def percent_points(rate: float) -> int:
    """Whole percentage points of a break rate, matching the precision the
    published per-standard columns carry."""
    return math.floor(rate * 100 + 1e-9)


def generate_policy(
    ledger: StandardLedger,
    max_break_rate: float,
    *,
    min_cve: int | None = None,
    min_eloc_share: float | None = None,
    min_attacks: int | None = None,
    whitelist: Iterable[str] = DEFAULT_WHITELIST,
    name: str = "generated",
) -> BlockPolicy:
    """Block every standard at or below the break-rate threshold whose cost
    clears at least one configured floor.

    Break rates are compared at whole-percentage-point granularity, so a
    threshold of 0 blocks sub-1% standards.  Deterministic in ledger row
    order; the whitelist always wins.
    """
    if min_cve is None and min_eloc_share is None and min_attacks is None:
        raise PolicyError("at least one cost floor (cve, eloc_share, attacks) is required")
    wl = frozenset(whitelist)
    threshold = percent_points(max_break_rate)
    blocked = set()
    for row in ledger.rows:
        rate = row.weighted_break_rate if row.weighted_break_rate is not None else 0.0
        if percent_points(rate) > threshold:
            continue
        costly = (
            (min_cve is not None and row.cve_count >= min_cve)
            or (min_eloc_share is not None and row.eloc_share >= min_eloc_share)
            or (min_attacks is not None and row.attack_paper_count >= min_attacks)
        )
        if costly:
            blocked.add(row.abbrev)
    return BlockPolicy(name=name, blocked=frozenset(blocked - wl), whitelist=wl)


@dataclass(frozen=True)
class PolicyStats:
    standards_blocked: int
    cve_covered: int
    cve_covered_fraction: float
    eloc_removed: int
    eloc_removed_fraction: float
    est_break_rate_sum: float  # sum of per-standard weighted rates: an estimate


def evaluate_policy(
    policy: BlockPolicy,
    ledger: StandardLedger,
    attributions: Sequence[AttributionResult],
) -> PolicyStats:
    """Coverage statistics for a policy's global blocked set.

    CVE coverage deduplicates multi-standard attributions via set union;
    ELoC removal sums exclusive lines (exclusive sets are disjoint by
    construction, so nothing double-counts).
    """
    known = set(ledger.abbreviations)
    unknown = policy.blocked - known
    if unknown:
        raise LedgerError(f"policy blocks standards absent from ledger: {sorted(unknown)}")
    blocked = policy.blocked

    attributed_ids: set[str] = set()
    covered_ids: set[str] = set()
    for result in attributions:
        if result.status is not AttributionStatus.ATTRIBUTED:
            continue
        attributed_ids.add(result.cve_id)
        if result.standards & blocked:
            covered_ids.add(result.cve_id)

    # Sorted iteration: float summation order must not depend on set order.
    eloc_removed = sum(ledger.row(a).eloc for a in sorted(blocked))
    total_eloc = ledger.total_eloc
    est_break = sum(
        ledger.row(a).weighted_break_rate or 0.0 for a in sorted(blocked)
    )
    return PolicyStats(
        standards_blocked=len(blocked),
        cve_covered=len(covered_ids),
        cve_covered_fraction=(len(covered_ids) / len(attributed_ids)) if attributed_ids else 0.0,
        eloc_removed=eloc_removed,
        eloc_removed_fraction=(eloc_removed / total_eloc) if total_eloc else 0.0,
        est_break_rate_sum=est_break,
    )


# ---------------------------------------------------------------------------
# Wire format


def serialize_policy(policy: BlockPolicy) -> str:
    """Canonical form: fixed key order, sorted sets, two-space indent."""
    doc = {
        "version": policy.version,
        "name": policy.name,
        "blocked": sorted(policy.blocked),
        "whitelist": sorted(policy.whitelist),
        "per_origin": {
            pattern: {
                "allow": sorted(rule.allow),
                "block": sorted(rule.block),
            }
            for pattern, rule in sorted(policy.per_origin.items())
        },
        "debug": policy.debug,
    }
    return json.dumps(doc, indent=2) + "\n"


_POLICY_FIELDS = {"version", "name", "blocked", "whitelist", "per_origin", "debug"}
_ORIGIN_FIELDS = {"allow", "block"}


def parse_policy(document: str | Mapping[str, object]) -> BlockPolicy:
    if isinstance(document, str):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise PolicyError(f"policy is not valid JSON: {exc}") from exc
    else:
        doc = dict(document)
    if not isinstance(doc, dict):
        raise PolicyError("policy document must be a JSON object")

    unknown = set(doc) - _POLICY_FIELDS
    if unknown:
        raise PolicyError(f"unknown policy fields: {sorted(unknown)}")
    version = doc.get("version", POLICY_VERSION)
    if not isinstance(version, int) or version < 1:
        raise PolicyError(f"invalid version {version!r}")
    if version > POLICY_VERSION:
        raise PolicyError(f"unsupported policy version {version}")
    if "name" not in doc or "blocked" not in doc:
        raise PolicyError("policy requires 'name' and 'blocked'")

    raw_origins = doc.get("per_origin", {})
    if not isinstance(raw_origins, dict):
        raise PolicyError("per_origin must be an object")
    per_origin: dict[str, OriginRule] = {}
    for pattern, rule in raw_origins.items():
        if not isinstance(rule, dict):
            raise PolicyError(f"per-origin rule for {pattern!r} must be an object")
        unknown = set(rule) - _ORIGIN_FIELDS
        if unknown:
            raise PolicyError(f"unknown per-origin fields: {sorted(unknown)}")
        per_origin[pattern] = OriginRule(
            allow=frozenset(_str_list(rule.get("allow", []), "allow")),
            block=frozenset(_str_list(rule.get("block", []), "block")),
        )
    return BlockPolicy(
        name=str(doc["name"]),
        blocked=frozenset(_str_list(doc["blocked"], "blocked")),
        whitelist=frozenset(_str_list(doc.get("whitelist", sorted(DEFAULT_WHITELIST)), "whitelist")),
        per_origin=per_origin,
        debug=bool(doc.get("debug", False)),
        version=version,
    )


def _str_list(value: object, label: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise PolicyError(f"{label} must be a list of strings")
    return list(value)


# ---------------------------------------------------------------------------
# Ledger CSV interchange

LEDGER_COLUMNS = [
    "abbrev",
    "name",
    "sites_using",
    "weighted_break_rate",
    "agreement",
    "cve_count",
    "high_severe_count",
    "eloc",
    "eloc_share",
    "attack_papers",
]


def ledger_to_rows(ledger: StandardLedger) -> list[dict[str, str]]:
    rows = []
    for r in ledger.rows:
        rows.append(
            {
                "abbrev": r.abbrev,
                "name": r.name,
                "sites_using": str(r.sites_using),
                "weighted_break_rate": _fmt_opt(r.weighted_break_rate),
                "agreement": _fmt_opt(r.agreement),
                "cve_count": str(r.cve_count),
                "high_severe_count": str(r.high_severe_count),
                "eloc": str(r.eloc),
                "eloc_share": repr(r.eloc_share),
                "attack_papers": str(r.attack_paper_count),
            }
        )
    return rows


def ledger_from_rows(rows: Iterable[Mapping[str, str]]) -> StandardLedger:
    parsed = []
    for row in rows:
        parsed.append(
            LedgerRow(
                abbrev=row["abbrev"],
                name=row["name"],
                sites_using=int(row["sites_using"]),
                weighted_break_rate=_parse_opt(row["weighted_break_rate"]),
                agreement=_parse_opt(row["agreement"]),
                cve_count=int(row["cve_count"]),
                high_severe_count=int(row["high_severe_count"]),
                eloc=int(row["eloc"]),
                eloc_share=float(row["eloc_share"]),
                attack_paper_count=int(row["attack_papers"]),
            )
        )
    return StandardLedger(tuple(parsed))


def _fmt_opt(value: float | None) -> str:
    return "" if value is None else repr(value)


def _parse_opt(text: str) -> float | None:
    return None if text == "" else float(text)


def read_attack_counts(path: str | Path) -> dict[str, int]:
    """Ingested column: ``standard_abbrev,attack_papers`` CSV."""
    counts: dict[str, int] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"standard_abbrev", "attack_papers"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise LedgerError(f"attacks file {path} must have header {sorted(required)}")
        for row in reader:
            std = row["standard_abbrev"]
            if std in counts:
                raise LedgerError(f"duplicate attack count for {std}")
            counts[std] = int(row["attack_papers"])
    return counts
