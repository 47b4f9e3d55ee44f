"""Independent reachability oracle and random call-graph generator.

The oracle states exclusivity subtractively: take everything reachable from
the standard's bindings through implementation code, then subtract anything
reachable from external roots (other standards' bindings, plus
implementation functions nothing calls).  It deliberately shares no code
with the production pruning implementation.

The generator never emits binding-to-binding calls and breaks source
cycles (strongly connected implementation components with no outside
caller), since a cycle that nothing reaches has no defensible owner under
either formulation.
"""

from __future__ import annotations

import random

from surface_ledger.callgraph import CallGraph, FunctionNode, NodeKind
from surface_ledger.errors import CallGraphError


def reachable_impl(graph: CallGraph, roots: set[str]) -> set[str]:
    seen: set[str] = set()
    stack = list(roots)
    while stack:
        nid = stack.pop()
        for callee in graph.callees[nid]:
            if callee in seen:
                continue
            if graph.nodes[callee].kind is not NodeKind.IMPLEMENTATION:
                continue
            seen.add(callee)
            stack.append(callee)
    return seen


def oracle_exclusive(
    graph: CallGraph,
    standard: str,
    known_standards: set[str] | None = None,
) -> frozenset[str]:
    bindings = graph.bindings(standard)
    if not bindings:
        if known_standards is not None and standard in known_standards:
            return frozenset()
        raise CallGraphError(f"unknown standard abbreviation {standard!r}")
    external_roots = {
        nid
        for std, nids in graph.bindings_by_standard.items()
        if std != standard
        for nid in nids
    }
    external_roots |= {
        nid
        for nid, node in graph.nodes.items()
        if node.kind is NodeKind.IMPLEMENTATION and not graph.callers[nid]
    }
    return frozenset(reachable_impl(graph, bindings) - reachable_impl(graph, external_roots))


def random_graph(
    seed: int,
    max_nodes: int = 200,
    density: float = 0.1,
    n_standards: int = 3,
) -> CallGraph:
    rng = random.Random(seed)
    n_nodes = rng.randint(max(12, n_standards * 4), max_nodes)
    standards = [f"S{i}" for i in range(n_standards)]

    nodes: dict[str, FunctionNode] = {}
    binding_ids: list[str] = []
    impl_ids: list[str] = []
    for std in standards:
        for j in range(rng.randint(1, 3)):
            nid = f"b_{std}_{j}"
            nodes[nid] = FunctionNode(nid, nid, NodeKind.BINDING, rng.randint(1, 8), std)
            binding_ids.append(nid)
    for i in range(n_nodes - len(binding_ids)):
        nid = f"f{i}"
        nodes[nid] = FunctionNode(nid, nid, NodeKind.IMPLEMENTATION, rng.randint(1, 50))
        impl_ids.append(nid)

    edges: set[tuple[str, str]] = set()
    for bid in binding_ids:
        for callee in rng.sample(impl_ids, rng.randint(1, min(3, len(impl_ids)))):
            edges.add((bid, callee))
    for u in impl_ids:
        for v in impl_ids:
            if rng.random() < density:
                edges.add((u, v))

    _break_source_cycles(impl_ids, edges, binding_ids)
    return CallGraph(nodes, edges)


def _break_source_cycles(
    impl_ids: list[str], edges: set[tuple[str, str]], binding_ids: list[str]
) -> None:
    while True:
        orphan = _find_orphan_component(impl_ids, edges)
        if orphan is None:
            return
        internal = sorted((u, v) for u, v in edges if u in orphan and v in orphan)
        edges.remove(internal[0])


def _find_orphan_component(impl_ids: list[str], edges: set[tuple[str, str]]) -> set[str] | None:
    impl = set(impl_ids)
    succ: dict[str, list[str]] = {n: [] for n in impl}
    for u, v in edges:
        if u in impl and v in impl:
            succ[u].append(v)
    for component in _sccs(impl, succ):
        has_self = len(component) == 1 and (next(iter(component)),) * 2 in {
            (u, v) for u, v in edges if u in component and v in component
        }
        if len(component) < 2 and not has_self:
            continue
        external_in = any(v in component and u not in component for u, v in edges)
        if not external_in:
            return component
    return None


def _sccs(nodes: set[str], succ: dict[str, list[str]]) -> list[set[str]]:
    """Iterative Tarjan."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    result: list[set[str]] = []
    counter = 0

    for root in sorted(nodes):
        if root in index:
            continue
        work: list[tuple[str, int]] = [(root, 0)]
        while work:
            node, child_i = work[-1]
            if child_i == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            advanced = False
            children = succ[node]
            while child_i < len(children):
                child = children[child_i]
                child_i += 1
                if child not in index:
                    work[-1] = (node, child_i)
                    work.append((child, 0))
                    advanced = True
                    break
                if child in on_stack:
                    low[node] = min(low[node], index[child])
            if advanced:
                continue
            work.pop()
            if low[node] == index[node]:
                component: set[str] = set()
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.add(member)
                    if member == node:
                        break
                result.append(component)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
    return result
