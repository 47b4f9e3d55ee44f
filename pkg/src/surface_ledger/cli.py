"""Command-line front door for the analysis pipeline.

Every subcommand validates its inputs fully before writing, emits
deterministic output (stable sort by standard abbreviation, no timestamps),
and reports failures as single-line diagnostics on stderr.  Exit codes:
0 success, 1 validation error, 2 I/O or usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Mapping, Sequence

from . import benefit, callgraph, cves, idl, scoring
from .errors import SurfaceLedgerError


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except SurfaceLedgerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="surface-ledger",
        description="Cost-benefit analysis of browser Web API standards",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="parse IDL and emit the feature catalog")
    p.add_argument("--idl-dir", required=True)
    p.add_argument("--mapping", required=True, help="interface,standard_name,abbreviation CSV")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("eloc", help="exclusive lines of code per standard")
    p.add_argument("--nodes", required=True, help="node records (CSV or JSON-lines)")
    p.add_argument("--edges", required=True, help="caller_id,callee_id CSV")
    p.add_argument("--catalog", required=True, help="catalog JSON export")
    p.add_argument("--include-third-party", action="store_true")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_eloc)

    p = sub.add_parser("cves", help="filter and attribute CVE records")
    p.add_argument("--records", required=True, help="JSON-lines CVE records")
    p.add_argument("--rules", required=True, help="route,pattern,target_abbrev,negate CSV")
    p.add_argument("--catalog", required=True)
    p.add_argument("--discard-keywords", help="file with one discard keyword per line")
    p.add_argument("--year-floor", type=int, default=2010)
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--attributions-out", required=True, help="JSON-lines output")
    p.add_argument("--tally-out", required=True)
    p.set_defaults(func=cmd_cves)

    p = sub.add_parser("benefit", help="agreement and weighted break rates")
    p.add_argument("--tests", required=True, help="site,standard_abbrev,tester,score CSV")
    p.add_argument("--usage", required=True, help="standard_abbrev,sites_using,population CSV")
    _strictness(p)
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_benefit)

    p = sub.add_parser("score", help="fuse stage outputs into the standard ledger")
    p.add_argument("--eloc", required=True, help="eloc JSON output")
    p.add_argument("--cve-tally", required=True, help="tally JSON output")
    p.add_argument("--break-rates", required=True, help="benefit JSON output")
    p.add_argument("--attacks", required=True, help="standard_abbrev,attack_papers CSV")
    p.add_argument("--catalog", required=True)
    _strictness(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("policy", help="generate or evaluate blocking policies")
    policy_sub = p.add_subparsers(dest="policy_command", required=True)

    g = policy_sub.add_parser("gen", help="derive a policy from ledger thresholds")
    g.add_argument("--ledger", required=True, help="ledger CSV")
    g.add_argument("--max-break-rate", type=float, required=True)
    g.add_argument("--min-cve", type=int)
    g.add_argument("--min-eloc-share", type=float)
    g.add_argument("--min-attacks", type=int)
    g.add_argument("--name", default="generated")
    g.add_argument("--whitelist", default=",".join(sorted(scoring.DEFAULT_WHITELIST)))
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_policy_gen)

    e = policy_sub.add_parser("eval", help="coverage statistics for a policy")
    e.add_argument("--policy", required=True)
    e.add_argument("--ledger", required=True, help="ledger CSV")
    e.add_argument("--attributions", required=True, help="attributions JSON-lines")
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_policy_eval)

    p = sub.add_parser("scatter", help="cost/benefit scatter data behind the figures")
    p.add_argument("--ledger", required=True, help="ledger CSV")
    p.add_argument("--x", choices=("cve", "severe", "eloc"), required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("pipeline", help="run every stage from a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out-dir", help="override the manifest's out_dir")
    p.set_defaults(func=cmd_pipeline)

    return parser


def _strictness(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--strict", dest="strict", action="store_true", default=True)
    group.add_argument("--lenient", dest="strict", action="store_false")


# ---------------------------------------------------------------------------
# Subcommands


def cmd_catalog(args: argparse.Namespace) -> None:
    definitions = idl.parse_idl_directory(args.idl_dir)
    mapping = idl.load_standard_mapping(args.mapping)
    catalog = idl.build_catalog(definitions, mapping)
    _write_text(args.out, idl.catalog_to_json(catalog))


def _load_catalog(path: str) -> idl.FeatureCatalog:
    return idl.catalog_from_json(Path(path).read_text(encoding="utf-8"))


def cmd_eloc(args: argparse.Namespace) -> None:
    graph = callgraph.load_callgraph(
        callgraph.read_node_records(args.nodes), callgraph.read_edge_records(args.edges)
    )
    catalog = _load_catalog(args.catalog)
    table = callgraph.eloc_table(
        graph, catalog.standards, include_third_party=args.include_third_party
    )
    if args.format == "json":
        _write_text(args.out, _eloc_json(table))
    else:
        _write_csv(
            args.out,
            ["standard", "eloc", "eloc_share"],
            [[r.standard, str(r.eloc), repr(r.eloc_share)] for r in table],
        )


def _eloc_json(table: Sequence[callgraph.ElocResult]) -> str:
    doc = [
        {
            "standard": r.standard,
            "eloc": r.eloc,
            "eloc_share": r.eloc_share,
            "exclusive_functions": sorted(r.exclusive_functions),
        }
        for r in table
    ]
    return json.dumps(doc, indent=2) + "\n"


def _eloc_from_json(path: str) -> list[callgraph.ElocResult]:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return [
        callgraph.ElocResult(
            standard=e["standard"],
            exclusive_functions=frozenset(e["exclusive_functions"]),
            eloc=int(e["eloc"]),
            eloc_share=float(e["eloc_share"]),
        )
        for e in doc
    ]


def cmd_cves(args: argparse.Namespace) -> None:
    records = cves.read_cve_records(args.records)
    catalog = _load_catalog(args.catalog)
    rules = cves.read_rules_csv(args.rules, catalog)
    keywords: list[str] = []
    if args.discard_keywords:
        keywords = [
            line.strip()
            for line in Path(args.discard_keywords).read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]
    kept, discarded = cves.filter_browser_cves(records, keywords, args.year_floor)
    results = cves.attribute_all(kept, rules, catalog, discarded=discarded)
    results.sort(key=lambda r: r.cve_id)
    tally = cves.tally(results, records)
    breakdown = cves.route_breakdown(results)

    lines = [json.dumps(cves.attribution_to_json(r)) for r in results]
    _write_text(args.attributions_out, "\n".join(lines) + ("\n" if lines else ""))

    if args.format == "json":
        _write_text(args.tally_out, _tally_json(tally, breakdown))
    else:
        _write_csv(
            args.tally_out,
            ["standard", "cve_count", "high_or_severe_count"],
            [
                [std, str(c.cve_count), str(c.high_or_severe_count)]
                for std, c in sorted(tally.per_standard.items())
            ],
        )


def _tally_json(tally: cves.CveTally, breakdown: Mapping[cves.Route, float]) -> str:
    doc = {
        "per_standard": {
            std: {"cve_count": c.cve_count, "high_or_severe_count": c.high_or_severe_count}
            for std, c in sorted(tally.per_standard.items())
        },
        "deduplicated_total": tally.deduplicated_total,
        "route_breakdown": {route.value: breakdown[route] for route in cves.ROUTE_PRECEDENCE},
    }
    return json.dumps(doc, indent=2) + "\n"


def _tally_from_json(path: str) -> cves.CveTally:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    per_standard = {
        std: cves.StandardCveCount(int(c["cve_count"]), int(c["high_or_severe_count"]))
        for std, c in doc["per_standard"].items()
    }
    return cves.CveTally(per_standard, int(doc["deduplicated_total"]), frozenset())


def cmd_benefit(args: argparse.Namespace) -> None:
    tests = benefit.read_site_tests(args.tests)
    usage = benefit.read_usage(args.usage)
    table = benefit.break_rate_table(tests, usage, strict=args.strict)
    overall = benefit.agreement(tests) if tests else None
    if args.format == "json":
        doc = {
            "overall_agreement": overall,
            "rows": [_breakrate_obj(r) for r in table],
        }
        _write_text(args.out, json.dumps(doc, indent=2) + "\n")
    else:
        _write_csv(
            args.out,
            [
                "standard",
                "paired_sites",
                "raw_break_fraction",
                "weighted_break_rate",
                "agreement",
                "disputed",
                "sites_using",
                "population",
            ],
            [
                [
                    r.standard,
                    str(r.paired_sites),
                    _opt(r.raw_break_fraction),
                    repr(r.weighted_break_rate),
                    _opt(r.agreement),
                    str(r.disputed),
                    str(r.sites_using),
                    str(r.population),
                ]
                for r in table
            ],
        )


def _breakrate_obj(r: benefit.BreakRateResult) -> dict[str, object]:
    return {
        "standard": r.standard,
        "paired_sites": r.paired_sites,
        "raw_break_fraction": r.raw_break_fraction,
        "weighted_break_rate": r.weighted_break_rate,
        "agreement": r.agreement,
        "disputed": r.disputed,
        "sites_using": r.sites_using,
        "population": r.population,
    }


def _breakrates_from_json(path: str) -> list[benefit.BreakRateResult]:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return [
        benefit.BreakRateResult(
            standard=e["standard"],
            paired_sites=int(e["paired_sites"]),
            raw_break_fraction=e["raw_break_fraction"],
            weighted_break_rate=float(e["weighted_break_rate"]),
            agreement=e["agreement"],
            disputed=int(e["disputed"]),
            sites_using=int(e["sites_using"]),
            population=int(e["population"]),
        )
        for e in doc["rows"]
    ]


def cmd_score(args: argparse.Namespace) -> None:
    catalog = _load_catalog(args.catalog)
    names = {s.abbreviation: s.name for s in catalog.standards.values()}
    ledger = scoring.build_ledger(
        _eloc_from_json(args.eloc),
        _tally_from_json(args.cve_tally),
        _breakrates_from_json(args.break_rates),
        scoring.read_attack_counts(args.attacks),
        names,
        strict=args.strict,
    )
    _write_ledger(args.out, ledger, args.format)


def _write_ledger(out: str, ledger: scoring.StandardLedger, fmt: str) -> None:
    rows = scoring.ledger_to_rows(ledger)
    if fmt == "json":
        _write_text(out, json.dumps(rows, indent=2) + "\n")
    else:
        _write_csv(out, scoring.LEDGER_COLUMNS, [[r[c] for c in scoring.LEDGER_COLUMNS] for r in rows])


def _read_ledger_csv(path: str) -> scoring.StandardLedger:
    with open(path, newline="", encoding="utf-8") as fh:
        return scoring.ledger_from_rows(csv.DictReader(fh))


def cmd_policy_gen(args: argparse.Namespace) -> None:
    ledger = _read_ledger_csv(args.ledger)
    whitelist = [w for w in args.whitelist.split(",") if w]
    policy = scoring.generate_policy(
        ledger,
        args.max_break_rate,
        min_cve=args.min_cve,
        min_eloc_share=args.min_eloc_share,
        min_attacks=args.min_attacks,
        whitelist=whitelist,
        name=args.name,
    )
    _write_text(args.out, scoring.serialize_policy(policy))


def cmd_policy_eval(args: argparse.Namespace) -> None:
    policy = scoring.parse_policy(Path(args.policy).read_text(encoding="utf-8"))
    ledger = _read_ledger_csv(args.ledger)
    attributions = cves.read_attributions(args.attributions)
    stats = scoring.evaluate_policy(policy, ledger, attributions)
    doc = {
        "policy": policy.name,
        "standards_blocked": stats.standards_blocked,
        "cve_covered": stats.cve_covered,
        "cve_covered_fraction": stats.cve_covered_fraction,
        "eloc_removed": stats.eloc_removed,
        "eloc_removed_fraction": stats.eloc_removed_fraction,
        "est_break_rate_sum": stats.est_break_rate_sum,
    }
    _write_text(args.out, json.dumps(doc, indent=2) + "\n")


_SCATTER_X = {
    "cve": ("cve_count", lambda r: str(r.cve_count)),
    "severe": ("high_severe_count", lambda r: str(r.high_severe_count)),
    "eloc": ("eloc", lambda r: str(r.eloc)),
}


def cmd_scatter(args: argparse.Namespace) -> None:
    ledger = _read_ledger_csv(args.ledger)
    column, getter = _SCATTER_X[args.x]
    _write_csv(
        args.out,
        ["standard", column, "weighted_break_rate"],
        [
            [r.abbrev, getter(r), repr(r.weighted_break_rate or 0.0)]
            for r in ledger.rows
        ],
    )


def cmd_pipeline(args: argparse.Namespace) -> None:
    """Chain all stages from a manifest for one-shot reproduction."""
    manifest_path = Path(args.manifest)
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    base = manifest_path.parent

    def resolve(key: str) -> str:
        if key not in manifest:
            raise SurfaceLedgerError(f"manifest missing {key!r}")
        return str((base / manifest[key]).resolve())

    out_dir = Path(args.out_dir) if args.out_dir else (base / manifest["out_dir"]).resolve()
    out_dir.mkdir(parents=True, exist_ok=True)

    ns = argparse.Namespace
    cmd_catalog(ns(idl_dir=resolve("idl_dir"), mapping=resolve("mapping"), out=str(out_dir / "catalog.json")))
    cmd_eloc(
        ns(
            nodes=resolve("nodes"),
            edges=resolve("edges"),
            catalog=str(out_dir / "catalog.json"),
            include_third_party=bool(manifest.get("include_third_party", False)),
            format="json",
            out=str(out_dir / "eloc.json"),
        )
    )
    cmd_cves(
        ns(
            records=resolve("cve_records"),
            rules=resolve("cve_rules"),
            catalog=str(out_dir / "catalog.json"),
            discard_keywords=resolve("discard_keywords") if "discard_keywords" in manifest else None,
            year_floor=int(manifest.get("year_floor", 2010)),
            format="json",
            attributions_out=str(out_dir / "attributions.jsonl"),
            tally_out=str(out_dir / "cve_tally.json"),
        )
    )
    cmd_benefit(
        ns(
            tests=resolve("site_tests"),
            usage=resolve("usage"),
            strict=bool(manifest.get("strict", True)),
            format="json",
            out=str(out_dir / "break_rates.json"),
        )
    )
    cmd_score(
        ns(
            eloc=str(out_dir / "eloc.json"),
            cve_tally=str(out_dir / "cve_tally.json"),
            break_rates=str(out_dir / "break_rates.json"),
            attacks=resolve("attacks"),
            catalog=str(out_dir / "catalog.json"),
            strict=bool(manifest.get("strict", True)),
            format="csv",
            out=str(out_dir / "ledger.csv"),
        )
    )


# ---------------------------------------------------------------------------
# Deterministic writers


def _write_text(out: str, text: str) -> None:
    path = Path(out)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent) or ".", prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_csv(out: str, header: list[str], rows: list[list[str]]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _write_text(out, buf.getvalue())


def _opt(value: float | None) -> str:
    return "" if value is None else repr(value)


if __name__ == "__main__":
    sys.exit(main())
