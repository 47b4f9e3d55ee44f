from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from surface_ledger import benefit, callgraph, cves, idl, scoring

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = Path(os.environ.get("SURFACE_LEDGER_FIXTURES", REPO_ROOT / "fixtures"))


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def catalog() -> idl.FeatureCatalog:
    definitions = idl.parse_idl_directory(FIXTURES / "idl")
    mapping = idl.load_standard_mapping(FIXTURES / "interface_standards.csv")
    return idl.build_catalog(definitions, mapping)


@pytest.fixture(scope="session")
def battery_graph() -> callgraph.CallGraph:
    return callgraph.load_callgraph(
        callgraph.read_node_records(FIXTURES / "callgraph" / "battery_nodes.csv"),
        callgraph.read_edge_records(FIXTURES / "callgraph" / "battery_edges.csv"),
    )


@pytest.fixture(scope="session")
def mega_graph() -> callgraph.CallGraph:
    return callgraph.load_callgraph(
        callgraph.read_node_records(FIXTURES / "callgraph" / "nodes.csv"),
        callgraph.read_edge_records(FIXTURES / "callgraph" / "edges.csv"),
    )


@pytest.fixture(scope="session")
def eloc_results(mega_graph, catalog) -> list[callgraph.ElocResult]:
    return callgraph.eloc_table(mega_graph, catalog.standards)


@pytest.fixture(scope="session")
def cve_records() -> list[cves.CveRecord]:
    return cves.read_cve_records(FIXTURES / "cves" / "records.jsonl")


@pytest.fixture(scope="session")
def cve_rules(catalog) -> list[cves.AttributionRule]:
    return cves.read_rules_csv(FIXTURES / "cves" / "rules.csv", catalog)


@pytest.fixture(scope="session")
def discard_keywords() -> list[str]:
    text = (FIXTURES / "cves" / "discard_keywords.txt").read_text(encoding="utf-8")
    return [line.strip() for line in text.splitlines() if line.strip()]


@pytest.fixture(scope="session")
def attributions(cve_records, cve_rules, catalog, discard_keywords) -> list[cves.AttributionResult]:
    kept, discarded = cves.filter_browser_cves(cve_records, discard_keywords, 2010)
    return cves.attribute_all(kept, cve_rules, catalog, discarded=discarded)


@pytest.fixture(scope="session")
def cve_tally(attributions, cve_records) -> cves.CveTally:
    return cves.tally(attributions, cve_records)


@pytest.fixture(scope="session")
def site_tests() -> list[benefit.SiteTest]:
    return benefit.read_site_tests(FIXTURES / "benefit" / "site_tests.csv")


@pytest.fixture(scope="session")
def usage_records() -> list[benefit.UsageRecord]:
    return benefit.read_usage(FIXTURES / "benefit" / "usage.csv")


@pytest.fixture(scope="session")
def break_rates(site_tests, usage_records) -> list[benefit.BreakRateResult]:
    return benefit.break_rate_table(site_tests, usage_records)


@pytest.fixture(scope="session")
def ledger(eloc_results, cve_tally, break_rates, catalog) -> scoring.StandardLedger:
    names = {s.abbreviation: s.name for s in catalog.standards.values()}
    attacks = scoring.read_attack_counts(FIXTURES / "attacks.csv")
    return scoring.build_ledger(eloc_results, cve_tally, break_rates, attacks, names)


@pytest.fixture(scope="session")
def conservative_policy() -> scoring.BlockPolicy:
    return scoring.parse_policy((FIXTURES / "policies" / "conservative.json").read_text())


@pytest.fixture(scope="session")
def aggressive_policy() -> scoring.BlockPolicy:
    return scoring.parse_policy((FIXTURES / "policies" / "aggressive.json").read_text())
