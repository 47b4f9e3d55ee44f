from __future__ import annotations

import random

import pytest

from surface_ledger.cves import (
    AttributionRule,
    AttributionStatus,
    CveRecord,
    Route,
    Severity,
    attribute,
    attribute_all,
    filter_browser_cves,
    reporting_route,
    route_breakdown,
    severity_from_score,
    suggest_native_symbol_rules,
    tally,
)
from surface_ledger.errors import CveDataError

KEYWORDS = ["Adobe Flash", "Flash Player"]


def _record(cve_id="CVE-2014-1234", description="", severity="moderate", hint="Mozilla Firefox"):
    year = int(cve_id.split("-")[1])
    return CveRecord(cve_id, year, description, Severity(severity), hint)


def test_malformed_id_rejected():
    with pytest.raises(CveDataError, match="malformed CVE id"):
        _record(cve_id="CVE-14-99")


def test_year_mismatch_rejected():
    with pytest.raises(CveDataError, match="does not match id"):
        CveRecord("CVE-2014-1234", 2015, "x", Severity.LOW)


def test_flash_record_discarded():
    rec = _record(description="Adobe Flash Player allows remote code execution.")
    kept, discarded = filter_browser_cves([rec], KEYWORDS)
    assert kept == [] and discarded == [rec]


def test_year_floor_discards_old_records():
    rec = _record(cve_id="CVE-2009-0001", description="browser heap overflow")
    kept, discarded = filter_browser_cves([rec], KEYWORDS)
    assert discarded == [rec]
    kept, discarded = filter_browser_cves([rec], KEYWORDS, year_floor=2009)
    assert kept == [rec]


def test_empty_input():
    assert filter_browser_cves([], KEYWORDS) == ([], [])


def test_svg_use_after_free_attributed():
    rule = AttributionRule(Route.STANDARD_NAME, "SVG", "SVG")
    rec = _record(description="Use-after-free vulnerability in code handling SVG animations.")
    result = attribute(rec, [rule])
    assert result.status is AttributionStatus.ATTRIBUTED
    assert result.standards == {"SVG"}
    assert result.routes_used == {Route.STANDARD_NAME}


def test_negative_rule_suppresses_target():
    rules = [
        AttributionRule(Route.STANDARD_NAME, "SVG", "SVG"),
        AttributionRule(Route.FUNCTIONALITY_KEYWORD, "privilege escalation", "SVG", negate=True),
    ]
    rec = _record(description="Privilege escalation in SVG handling outside the DOM interface.")
    result = attribute(rec, rules)
    assert result.status is AttributionStatus.UNATTRIBUTED
    assert result.standards == frozenset()


def test_empty_description_unattributed():
    rule = AttributionRule(Route.STANDARD_NAME, "SVG", "SVG")
    assert attribute(_record(description=""), [rule]).status is AttributionStatus.UNATTRIBUTED


def test_word_boundary_matching():
    rule = AttributionRule(Route.STANDARD_NAME, "WebGL", "WEBGL")
    assert attribute(_record(description="bug in WebGLRenderingContext"), [rule]).standards == frozenset()
    assert attribute(_record(description="bug in WebGL shaders"), [rule]).standards == {"WEBGL"}


def test_union_across_routes_and_precedence_label():
    rules = [
        AttributionRule(Route.JS_ENDPOINT, "getUserMedia", "MCS"),
        AttributionRule(Route.STANDARD_NAME, "WebRTC", "WRTC"),
    ]
    rec = _record(description="flaw in WebRTC negotiation reachable from getUserMedia")
    result = attribute(rec, rules)
    assert result.standards == {"MCS", "WRTC"}
    assert result.routes_used == {Route.JS_ENDPOINT, Route.STANDARD_NAME}
    assert reporting_route(result) is Route.STANDARD_NAME


def test_multi_standard_tally_and_dedup():
    rules = [
        AttributionRule(Route.STANDARD_NAME, "Web Workers", "H-WW"),
        AttributionRule(Route.STANDARD_NAME, "High Resolution Time", "HRT"),
    ]
    rec = _record(description="timer precision leak via Web Workers and High Resolution Time")
    result = attribute(rec, rules)
    counts = tally([result], [rec])
    assert counts.per_standard["H-WW"].cve_count == 1
    assert counts.per_standard["HRT"].cve_count == 1
    assert counts.deduplicated_total == 1


def test_tally_severity_counts():
    rule = AttributionRule(Route.STANDARD_NAME, "WebGL", "WEBGL")
    records = [
        _record(cve_id="CVE-2014-0001", description="WebGL crash", severity="high"),
        _record(cve_id="CVE-2014-0002", description="WebGL leak", severity="low"),
        _record(cve_id="CVE-2014-0003", description="WebGL uaf", severity="severe"),
    ]
    results = [attribute(r, [rule]) for r in records]
    counts = tally(results, records)
    assert counts.per_standard["WEBGL"].cve_count == 3
    assert counts.per_standard["WEBGL"].high_or_severe_count == 2


def test_tally_rejects_unknown_cve_id():
    rule = AttributionRule(Route.STANDARD_NAME, "WebGL", "WEBGL")
    rec = _record(description="WebGL crash")
    result = attribute(rec, [rule])
    with pytest.raises(CveDataError, match="unknown cve_id"):
        tally([result], [])


def test_rule_order_does_not_change_results(cve_records, cve_rules, catalog, discard_keywords):
    kept, discarded = filter_browser_cves(cve_records, discard_keywords)
    baseline = attribute_all(kept, cve_rules, catalog, discarded=discarded)
    shuffled = list(cve_rules)
    random.Random(5).shuffle(shuffled)
    again = attribute_all(kept, shuffled, catalog, discarded=discarded)
    assert {r.cve_id: (r.status, r.standards) for r in baseline} == {
        r.cve_id: (r.status, r.standards) for r in again
    }


def test_fixture_route_fractions_partition(attributions):
    breakdown = route_breakdown(attributions)
    assert abs(sum(breakdown.values()) - 1.0) < 1e-9
    assert all(v >= 0 for v in breakdown.values())


def test_fixture_dedup_bounds(cve_tally):
    multi_counted = sum(c.cve_count for c in cve_tally.per_standard.values())
    assert cve_tally.deduplicated_total <= multi_counted


def test_dedup_equals_sum_iff_no_multi_attribution():
    rule_a = AttributionRule(Route.STANDARD_NAME, "WebGL", "WEBGL")
    rule_b = AttributionRule(Route.STANDARD_NAME, "Gamepad", "GP")
    singles = [
        _record(cve_id="CVE-2014-0001", description="WebGL crash"),
        _record(cve_id="CVE-2014-0002", description="Gamepad leak"),
    ]
    results = [attribute(r, [rule_a, rule_b]) for r in singles]
    counts = tally(results, singles)
    assert counts.deduplicated_total == sum(
        c.cve_count for c in counts.per_standard.values()
    )

    multi = singles + [_record(cve_id="CVE-2014-0003", description="WebGL Gamepad interaction")]
    results = [attribute(r, [rule_a, rule_b]) for r in multi]
    counts = tally(results, multi)
    assert counts.deduplicated_total < sum(
        c.cve_count for c in counts.per_standard.values()
    )


def test_attribute_rejects_rule_with_unknown_target(catalog):
    rule = AttributionRule(Route.STANDARD_NAME, "Mystery", "MYSTERY")
    with pytest.raises(CveDataError, match="unknown standard"):
        attribute(_record(description="Mystery flaw"), [rule], catalog)


def test_severity_from_score():
    assert severity_from_score(9.8) is Severity.SEVERE
    assert severity_from_score(7.0) is Severity.HIGH
    assert severity_from_score(5.1) is Severity.MODERATE
    assert severity_from_score(2.0) is Severity.LOW


def test_suggest_native_symbol_rules(battery_graph):
    rec = _record(
        description="Crash in mozilla::dom::battery::ChargingTime during state polling."
    )
    suggestions = suggest_native_symbol_rules([rec], battery_graph, ["BA", "GEO"])
    assert (
        AttributionRule(Route.NATIVE_SYMBOL, "mozilla::dom::battery::ChargingTime", "BA")
        in suggestions
    )
    assert all(s.target == "BA" for s in suggestions)
