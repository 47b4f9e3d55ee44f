"""Inter-rater agreement and usage-weighted site break rates.

Scores are ingested, never produced: each (site, standard) pair carries
exactly two independent tester scores on the 1..3 scale, where 1 means no
perceptible difference with the standard disabled and 3 means the tester
could not complete their task.  A site counts as broken only when both
testers scored 3; pairs where exactly one tester scored 3 are surfaced in a
``disputed`` count instead of being guessed either way.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import BenefitDataError, NoDataError

DEFAULT_POPULATION = 10_000


@dataclass(frozen=True)
class SiteTest:
    site: str
    standard: str
    tester: str
    score: int

    def __post_init__(self) -> None:
        if self.score not in (1, 2, 3):
            raise BenefitDataError(
                f"{self.site}/{self.standard}: score {self.score} outside 1..3"
            )


@dataclass(frozen=True)
class UsageRecord:
    standard: str
    sites_using: int
    population: int = DEFAULT_POPULATION

    def __post_init__(self) -> None:
        if not 0 <= self.sites_using <= self.population:
            raise BenefitDataError(
                f"{self.standard}: sites_using {self.sites_using} outside "
                f"0..{self.population}"
            )


@dataclass(frozen=True)
class BreakRateResult:
    standard: str
    paired_sites: int
    raw_break_fraction: float | None
    weighted_break_rate: float
    agreement: float | None
    disputed: int
    sites_using: int
    population: int


def pair_tests(tests: Iterable[SiteTest]) -> dict[tuple[str, str], tuple[int, int]]:
    """Group records into (site, standard) pairs of exactly two testers."""
    groups: dict[tuple[str, str], list[SiteTest]] = {}
    for t in tests:
        groups.setdefault((t.site, t.standard), []).append(t)
    pairs: dict[tuple[str, str], tuple[int, int]] = {}
    for key, members in groups.items():
        if len(members) != 2 or members[0].tester == members[1].tester:
            raise BenefitDataError(
                f"{key[0]}/{key[1]}: expected exactly two distinct testers, "
                f"got {[m.tester for m in members]}"
            )
        pairs[key] = (members[0].score, members[1].score)
    return pairs


def agreement(tests: Iterable[SiteTest]) -> float:
    """Fraction of pairs on which the two testers gave the same score."""
    pairs = pair_tests(tests)
    if not pairs:
        raise NoDataError("no paired tests")
    equal = sum(1 for a, b in pairs.values() if a == b)
    return equal / len(pairs)


def raw_break_fraction(tests: Iterable[SiteTest], standard: str) -> float:
    """Fraction of paired sites both testers scored 3 (consensus-broken)."""
    pairs = pair_tests(t for t in tests if t.standard == standard)
    if not pairs:
        raise NoDataError(f"no data for standard {standard!r}")
    broken = sum(1 for a, b in pairs.values() if a == 3 and b == 3)
    return broken / len(pairs)


def weighted_break_rate(raw: float, usage: UsageRecord) -> float:
    if not 0.0 <= raw <= 1.0:
        raise BenefitDataError(f"raw break fraction {raw} outside [0, 1]")
    return raw * (usage.sites_using / usage.population)


def break_rate_table(
    tests: Sequence[SiteTest],
    usage_records: Iterable[UsageRecord],
    *,
    strict: bool = True,
) -> list[BreakRateResult]:
    """Per-standard results, sorted by abbreviation.

    Every tested standard must have a usage record.  A standard with usage
    but no tests is an error in strict mode and an empty row otherwise; a
    zero-usage standard legitimately has no tests and reports a 0.0 rate.
    """
    usage = {u.standard: u for u in usage_records}
    by_standard: dict[str, list[SiteTest]] = {}
    for t in tests:
        by_standard.setdefault(t.standard, []).append(t)

    missing_usage = sorted(set(by_standard) - set(usage))
    if missing_usage:
        raise BenefitDataError(f"tested standards missing usage records: {missing_usage}")

    results: list[BreakRateResult] = []
    for std in sorted(usage):
        u = usage[std]
        std_tests = by_standard.get(std, [])
        if not std_tests:
            if u.sites_using > 0 and strict:
                raise BenefitDataError(f"standard {std} has usage but no tests")
            results.append(
                BreakRateResult(std, 0, None, 0.0, None, 0, u.sites_using, u.population)
            )
            continue
        pairs = pair_tests(std_tests)
        raw = raw_break_fraction(std_tests, std)
        agree = sum(1 for a, b in pairs.values() if a == b) / len(pairs)
        disputed = sum(1 for a, b in pairs.values() if (a == 3) != (b == 3))
        results.append(
            BreakRateResult(
                standard=std,
                paired_sites=len(pairs),
                raw_break_fraction=raw,
                weighted_break_rate=weighted_break_rate(raw, u),
                agreement=agree,
                disputed=disputed,
                sites_using=u.sites_using,
                population=u.population,
            )
        )
    return results


# ---------------------------------------------------------------------------
# External formats


def read_site_tests(path: str | Path) -> list[SiteTest]:
    """Tests CSV: ``site,standard_abbrev,tester,score``."""
    tests: list[SiteTest] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"site", "standard_abbrev", "tester", "score"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise BenefitDataError(f"tests file {path} must have header {sorted(required)}")
        for row in reader:
            try:
                score = int(row["score"])
            except ValueError as exc:
                raise BenefitDataError(f"bad score {row['score']!r} for {row['site']}") from exc
            tests.append(SiteTest(row["site"], row["standard_abbrev"], row["tester"], score))
    return tests


def read_usage(path: str | Path) -> list[UsageRecord]:
    """Usage CSV: ``standard_abbrev,sites_using,population``."""
    records: list[UsageRecord] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"standard_abbrev", "sites_using", "population"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise BenefitDataError(f"usage file {path} must have header {sorted(required)}")
        seen: set[str] = set()
        for row in reader:
            std = row["standard_abbrev"]
            if std in seen:
                raise BenefitDataError(f"duplicate usage record for {std}")
            seen.add(std)
            records.append(
                UsageRecord(std, int(row["sites_using"]), int(row["population"]))
            )
    return records
