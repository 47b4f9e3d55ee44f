"""Call-graph ingestion and per-standard Exclusive Lines of Code.

A standard's exclusive set is the greatest set E of implementation
functions such that every member of E is reachable from the standard's
binding functions along implementation-only paths, and every caller of
every member lies in E or among those bindings.  It is computed by
seeding E with the reachable implementation functions and deleting, to a
fixpoint, any member with a caller outside ``E | bindings``.  The greatest
fixpoint is unique, so the deletion order never matters; cycles whose only
external entries are the standard's own bindings survive.

ELoC sums implementation lines only: binding functions are mechanically
generated and never counted, and nodes flagged ``third_party`` are excluded
from sums unless explicitly included.
"""

from __future__ import annotations

import csv
import json
import random
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import CallGraphError


class NodeKind(str, Enum):
    BINDING = "binding"
    IMPLEMENTATION = "implementation"


@dataclass(frozen=True)
class FunctionNode:
    id: str
    display_name: str
    kind: NodeKind
    loc: int
    standard: str | None = None
    third_party: bool = False

    def __post_init__(self) -> None:
        if self.loc < 0:
            raise CallGraphError(f"node {self.id}: negative loc")
        if self.kind is NodeKind.BINDING and not self.standard:
            raise CallGraphError(f"binding node {self.id} without standard")
        if self.kind is NodeKind.IMPLEMENTATION and self.standard:
            raise CallGraphError(f"implementation node {self.id} with standard field set")


class CallGraph:
    """Immutable after construction; safe to share across readers."""

    def __init__(self, nodes: Mapping[str, FunctionNode], edges: Iterable[tuple[str, str]]):
        self.nodes: dict[str, FunctionNode] = dict(nodes)
        self.edges: frozenset[tuple[str, str]] = frozenset(edges)
        self.callees: dict[str, list[str]] = {nid: [] for nid in self.nodes}
        self.callers: dict[str, list[str]] = {nid: [] for nid in self.nodes}
        for caller, callee in sorted(self.edges):
            if caller not in self.nodes or callee not in self.nodes:
                raise CallGraphError(f"dangling edge ({caller}, {callee})")
            self.callees[caller].append(callee)
            self.callers[callee].append(caller)
        self.bindings_by_standard: dict[str, set[str]] = {}
        for nid, node in self.nodes.items():
            if node.kind is NodeKind.BINDING:
                assert node.standard is not None
                self.bindings_by_standard.setdefault(node.standard, set()).add(nid)

    def bindings(self, standard: str) -> set[str]:
        return self.bindings_by_standard.get(standard, set())


def load_callgraph(
    node_records: Iterable[Mapping[str, object]],
    edge_records: Iterable[Sequence[str]],
) -> CallGraph:
    nodes: dict[str, FunctionNode] = {}
    for rec in node_records:
        node = _node_from_record(rec)
        if node.id in nodes:
            raise CallGraphError(f"duplicate node id {node.id}")
        nodes[node.id] = node
    edges = []
    for rec in edge_records:
        caller, callee = rec[0], rec[1]
        edges.append((str(caller), str(callee)))
    return CallGraph(nodes, edges)


def _node_from_record(rec: Mapping[str, object]) -> FunctionNode:
    try:
        kind = NodeKind(str(rec["kind"]))
        loc = int(str(rec["loc"]))
    except (KeyError, ValueError) as exc:
        raise CallGraphError(f"malformed node record {rec!r}: {exc}") from exc
    standard = rec.get("standard") or None
    third_party = _parse_bool(rec.get("third_party", False))
    return FunctionNode(
        id=str(rec["id"]),
        display_name=str(rec.get("display_name", rec["id"])),
        kind=kind,
        loc=loc,
        standard=str(standard) if standard else None,
        third_party=third_party,
    )


def _parse_bool(value: object) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in {"", "0", "false", "no"}:
        return False
    if text in {"1", "true", "yes"}:
        return True
    raise CallGraphError(f"invalid boolean {value!r}")


def exclusive_functions(
    graph: CallGraph,
    standard: str,
    *,
    known_standards: Iterable[str] | None = None,
    rng: random.Random | None = None,
) -> frozenset[str]:
    """Greatest-fixpoint set of implementation nodes owned by ``standard``.

    ``rng`` only perturbs the internal worklist order; the result is
    order-independent.  A standard with no binding nodes is an error unless
    it appears in ``known_standards``, in which case its set is empty.
    """
    bindings = graph.bindings(standard)
    if not bindings:
        if known_standards is not None and standard in set(known_standards):
            return frozenset()
        raise CallGraphError(f"unknown standard abbreviation {standard!r}")

    # Seed: implementation nodes reachable from the bindings through
    # implementation nodes only.
    members: set[str] = set()
    frontier = list(bindings)
    while frontier:
        nid = frontier.pop()
        for callee in graph.callees[nid]:
            if callee in members:
                continue
            if graph.nodes[callee].kind is not NodeKind.IMPLEMENTATION:
                continue
            members.add(callee)
            frontier.append(callee)

    # Prune to fixpoint: expel any member with a caller outside members|bindings.
    work = sorted(members)
    if rng is not None:
        rng.shuffle(work)
    queued = set(work)
    while work:
        nid = work.pop()
        queued.discard(nid)
        if nid not in members:
            continue
        for caller in graph.callers[nid]:
            if caller in members or caller in bindings:
                continue
            members.discard(nid)
            for callee in graph.callees[nid]:
                if callee in members and callee not in queued:
                    work.append(callee)
                    queued.add(callee)
            break
    return frozenset(members)


def exclusive_loc(
    graph: CallGraph,
    standard: str,
    *,
    include_third_party: bool = False,
    known_standards: Iterable[str] | None = None,
) -> int:
    members = exclusive_functions(graph, standard, known_standards=known_standards)
    return _sum_loc(graph, members, include_third_party)


def _sum_loc(graph: CallGraph, members: Iterable[str], include_third_party: bool) -> int:
    total = 0
    for nid in members:
        node = graph.nodes[nid]
        if node.third_party and not include_third_party:
            continue
        total += node.loc
    return total


@dataclass(frozen=True)
class ElocResult:
    standard: str
    exclusive_functions: frozenset[str]
    eloc: int
    eloc_share: float


def eloc_table(
    graph: CallGraph,
    standards: Iterable[str],
    *,
    include_third_party: bool = False,
) -> list[ElocResult]:
    """One row per standard, sorted by abbreviation; shares sum to 1
    whenever any lines are attributed at all."""
    ordered = sorted(set(standards))
    sets = {
        s: exclusive_functions(graph, s, known_standards=ordered) for s in ordered
    }
    locs = {s: _sum_loc(graph, sets[s], include_third_party) for s in ordered}
    total = sum(locs.values())
    return [
        ElocResult(
            standard=s,
            exclusive_functions=sets[s],
            eloc=locs[s],
            eloc_share=(locs[s] / total) if total > 0 else 0.0,
        )
        for s in ordered
    ]


# ---------------------------------------------------------------------------
# External formats


def read_node_records(path: str | Path) -> list[dict[str, object]]:
    """Nodes from CSV (`id,display_name,kind,loc,standard,third_party`) or
    JSON-lines with the same fields."""
    path = Path(path)
    records: list[dict[str, object]] = []
    if path.suffix in {".jsonl", ".ndjson"}:
        for line in path.read_text(encoding="utf-8").splitlines():
            if line.strip():
                records.append(json.loads(line))
        return records
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            records.append(dict(row))
    return records


def read_edge_records(path: str | Path) -> list[tuple[str, str]]:
    edges: list[tuple[str, str]] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or set(reader.fieldnames) != {"caller_id", "callee_id"}:
            raise CallGraphError(f"edge file {path} must have header caller_id,callee_id")
        for row in reader:
            edges.append((row["caller_id"], row["callee_id"]))
    return edges
