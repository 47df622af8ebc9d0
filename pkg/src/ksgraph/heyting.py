"""Subgraphs of a fixed host graph as a Heyting algebra.

Subgraphs are general: any node subset together with any subset of host edges
whose endpoints are both kept. Meet and join are componentwise intersection
and union. Node-induced subgraphs alone would form a Boolean algebra; with
edge-poorer subgraphs allowed, excluded middle fails.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Iterator

from ksgraph.errors import PreconditionError
from ksgraph.frames import OrthogonalityGraph

__all__ = [
    "Host",
    "Subgraph",
    "leq",
    "meet",
    "join",
    "implication",
    "pseudo_complement",
    "brute_force_implication",
    "all_subgraphs",
    "BRUTE_FORCE_LIMIT",
]

BRUTE_FORCE_LIMIT = 5
DEBUG_CHECKS = os.environ.get("KSGRAPH_DEBUG", "") not in ("", "0")

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Host:
    nodes: frozenset[int]
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        nodes = frozenset(self.nodes)
        edges = frozenset(_edge(*e) for e in self.edges)
        for u, v in edges:
            if u == v or u not in nodes or v not in nodes:
                raise ValueError(f"bad host edge ({u}, {v})")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def complete(cls, n: int) -> Host:
        nodes = range(1, n + 1)
        return cls(frozenset(nodes), frozenset(itertools.combinations(nodes, 2)))

    @classmethod
    def path(cls, n: int) -> Host:
        return cls(frozenset(range(1, n + 1)), frozenset((i, i + 1) for i in range(1, n)))

    @classmethod
    def from_graph(cls, graph: OrthogonalityGraph) -> Host:
        return cls(frozenset(graph.nodes), frozenset(graph.edges()))


@dataclass(frozen=True)
class Subgraph:
    host: Host
    nodes: frozenset[int]
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        nodes = frozenset(self.nodes)
        edges = frozenset(_edge(*e) for e in self.edges)
        if not nodes <= self.host.nodes:
            raise ValueError(f"nodes {sorted(nodes - self.host.nodes)} are not in the host")
        if not edges <= self.host.edges:
            raise ValueError(f"edges {sorted(edges - self.host.edges)} are not in the host")
        dangling = [e for e in edges if e[0] not in nodes or e[1] not in nodes]
        if dangling:
            raise ValueError(f"edges {sorted(dangling)} have endpoints outside the subgraph")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def _trusted(cls, host: Host, nodes: frozenset[int], edges: frozenset[Edge]) -> Subgraph:
        # lattice operations preserve the invariants; skip revalidation
        s = object.__new__(cls)
        object.__setattr__(s, "host", host)
        object.__setattr__(s, "nodes", nodes)
        object.__setattr__(s, "edges", edges)
        return s

    @classmethod
    def of(cls, host: Host, nodes: Iterable[int], edges: Iterable[Edge] = ()) -> Subgraph:
        return cls(host, frozenset(nodes), frozenset(edges))

    @classmethod
    def bottom(cls, host: Host) -> Subgraph:
        return cls(host, frozenset(), frozenset())

    @classmethod
    def top(cls, host: Host) -> Subgraph:
        return cls(host, host.nodes, host.edges)

    def __str__(self) -> str:
        ns = ",".join(str(n) for n in sorted(self.nodes))
        es = ",".join(f"{u}{v}" if u < 10 and v < 10 else f"{u}-{v}" for u, v in sorted(self.edges))
        return f"({{{ns}}},{{{es}}})"


def _same_host(a: Subgraph, b: Subgraph) -> Host:
    if a.host != b.host:
        raise PreconditionError("subgraphs live in different host graphs")
    return a.host


def leq(a: Subgraph, b: Subgraph) -> bool:
    _same_host(a, b)
    return a.nodes <= b.nodes and a.edges <= b.edges


def meet(a: Subgraph, b: Subgraph) -> Subgraph:
    host = _same_host(a, b)
    return Subgraph._trusted(host, a.nodes & b.nodes, a.edges & b.edges)


def join(a: Subgraph, b: Subgraph) -> Subgraph:
    host = _same_host(a, b)
    return Subgraph._trusted(host, a.nodes | b.nodes, a.edges | b.edges)


def implication(a: Subgraph, b: Subgraph) -> Subgraph:
    """Largest c with meet(c, a) <= b."""
    host = _same_host(a, b)
    nodes = frozenset(x for x in host.nodes if x not in a.nodes or x in b.nodes)
    edges = frozenset(
        e for e in host.edges if (e not in a.edges or e in b.edges) and e[0] in nodes and e[1] in nodes
    )
    out = Subgraph._trusted(host, nodes, edges)
    if DEBUG_CHECKS and len(host.nodes) <= BRUTE_FORCE_LIMIT:
        assert out == brute_force_implication(a, b), f"implication mismatch for {a} => {b}"
    return out


def pseudo_complement(a: Subgraph) -> Subgraph:
    return implication(a, Subgraph.bottom(a.host))


def all_subgraphs(host: Host) -> Iterator[Subgraph]:
    """Every subgraph of ``host``; exponential, intended for tiny hosts."""
    nodes = sorted(host.nodes)
    for k in range(len(nodes) + 1):
        for ns in itertools.combinations(nodes, k):
            nset = frozenset(ns)
            inner = sorted(e for e in host.edges if e[0] in nset and e[1] in nset)
            for m in range(len(inner) + 1):
                for es in itertools.combinations(inner, m):
                    yield Subgraph(host, nset, frozenset(es))


def brute_force_implication(a: Subgraph, b: Subgraph) -> Subgraph:
    """Join of every c with meet(c, a) <= b, by enumeration."""
    host = _same_host(a, b)
    if len(host.nodes) > BRUTE_FORCE_LIMIT:
        raise PreconditionError(f"brute force limited to hosts with at most {BRUTE_FORCE_LIMIT} nodes")
    acc = Subgraph.bottom(host)
    for c in all_subgraphs(host):
        if leq(meet(c, a), b):
            acc = join(acc, c)
    return acc
