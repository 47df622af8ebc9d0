"""Ray frames, their orthogonality graphs, and context enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from ksgraph import kernels
from ksgraph.errors import FrameError
from ksgraph.linalg import Vector, canonical_ray, inner_product, rank

__all__ = [
    "Ray",
    "Frame",
    "OrthogonalityGraph",
    "Context",
    "build_graph",
    "enumerate_maximal_contexts",
    "resolve_bases",
    "contexts_compatible",
]


@dataclass(frozen=True)
class Ray:
    id: int
    coords: Vector
    label: str | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.coords, Vector):
            object.__setattr__(self, "coords", Vector(self.coords))
        object.__setattr__(self, "coords", canonical_ray(self.coords))

    @property
    def name(self) -> str:
        return self.label if self.label is not None else f"v{self.id}"


@dataclass(frozen=True)
class Frame:
    """A finite set of rays in dimension ``dim``, optionally with declared bases.

    Ray ids and canonical coordinates must be unique. Declared bases are only
    checked for size and id existence here; orthogonality and spanning are
    checked by :func:`resolve_bases`.
    """

    dim: int
    rays: tuple[Ray, ...]
    declared_bases: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "rays", tuple(self.rays))
        if self.dim < 1:
            raise FrameError(f"dimension must be positive, got {self.dim}")
        seen_ids: set[int] = set()
        seen_coords: dict[Vector, int] = {}
        for r in self.rays:
            if r.coords.dim != self.dim:
                raise FrameError(f"ray {r.id} has dimension {r.coords.dim}, frame has {self.dim}")
            if r.id in seen_ids:
                raise FrameError(f"duplicate ray id {r.id}")
            seen_ids.add(r.id)
            if r.coords in seen_coords:
                raise FrameError(f"rays {seen_coords[r.coords]} and {r.id} are the same ray {r.coords}")
            seen_coords[r.coords] = r.id
        if self.declared_bases is not None:
            bases = tuple(tuple(b) for b in self.declared_bases)
            object.__setattr__(self, "declared_bases", bases)
            for b in bases:
                missing = [i for i in b if i not in seen_ids]
                if missing:
                    raise FrameError(f"declared basis {list(b)} references unknown ray ids {missing}")
                if len(set(b)) != self.dim:
                    raise FrameError(f"declared basis {list(b)} must have exactly {self.dim} distinct rays")

    @classmethod
    def from_coords(
        cls,
        coords: Iterable[Sequence[object]],
        *,
        start: int = 1,
        declared_bases: Iterable[Iterable[int]] | None = None,
    ) -> Frame:
        rays = [Ray(i, Vector(c)) for i, c in enumerate(coords, start)]
        if not rays:
            raise FrameError("cannot infer the dimension of an empty frame")
        bases = None if declared_bases is None else tuple(tuple(b) for b in declared_bases)
        return cls(rays[0].coords.dim, tuple(rays), bases)

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(r.id for r in self.rays)

    def ray(self, ray_id: int) -> Ray:
        for r in self.rays:
            if r.id == ray_id:
                return r
        raise KeyError(ray_id)

    def coords(self, ray_id: int) -> Vector:
        return self.ray(ray_id).coords

    def labels(self) -> dict[int, str]:
        return {r.id: r.name for r in self.rays}


@dataclass(frozen=True)
class OrthogonalityGraph:
    """Simple graph on integer node ids; adjacency excludes self-loops.

    The relation is reflexive by convention: :meth:`adjacent` answers True for
    ``u == v`` without storing loops. ``frame`` is set when the graph came from
    rays, which lets basis detection run a rank check.
    """

    nodes: tuple[int, ...]
    adjacency: Mapping[int, frozenset[int]]
    labels: Mapping[int, str] = field(default_factory=dict, compare=False)
    frame: Frame | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        nodes = tuple(sorted(self.nodes))
        adj = {u: frozenset(self.adjacency.get(u, ())) for u in nodes}
        for u, nbrs in adj.items():
            if u in nbrs:
                raise ValueError(f"self-loop at node {u}")
            for v in nbrs:
                if v not in adj or u not in adj[v]:
                    raise ValueError(f"adjacency is not symmetric at edge ({u}, {v})")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "adjacency", MappingProxyType(adj))
        object.__setattr__(self, "labels", MappingProxyType(dict(self.labels)))

    @classmethod
    def from_edges(
        cls,
        nodes: Iterable[int],
        edges: Iterable[tuple[int, int]],
        labels: Mapping[int, str] | None = None,
    ) -> OrthogonalityGraph:
        nodes = list(nodes)
        adj: dict[int, set[int]] = {u: set() for u in nodes}
        for u, v in edges:
            if u == v:
                continue
            adj[u].add(v)
            adj[v].add(u)
        return cls(tuple(nodes), {u: frozenset(s) for u, s in adj.items()}, labels or {})

    def adjacent(self, u: int, v: int) -> bool:
        return u == v or v in self.adjacency[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.nodes for v in sorted(self.adjacency[u]) if u < v]

    def is_complete(self, members: Iterable[int]) -> bool:
        ms = list(members)
        return all(self.adjacent(u, v) for u, v in itertools.combinations(ms, 2))

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def label(self, u: int) -> str:
        return self.labels.get(u, f"v{u}")

    def bit_masks(self) -> tuple[dict[int, int], list[int]]:
        """Position of each node (sorted id order) and neighbour bitmasks."""
        pos = {u: k for k, u in enumerate(self.nodes)}
        masks = []
        for u in self.nodes:
            m = 0
            for v in self.adjacency[u]:
                m |= 1 << pos[v]
            masks.append(m)
        return pos, masks

    def components(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for u in self.nodes:
            if u in seen:
                continue
            stack, comp = [u], []
            seen.add(u)
            while stack:
                w = stack.pop()
                comp.append(w)
                for x in self.adjacency[w]:
                    if x not in seen:
                        seen.add(x)
                        stack.append(x)
            out.append(tuple(sorted(comp)))
        return out


@dataclass(frozen=True, order=True)
class Context:
    members: tuple[int, ...]
    is_maximal: bool = field(default=False, compare=False)
    is_basis: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    def __contains__(self, ray_id: int) -> bool:
        return ray_id in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


def build_graph(frame: Frame) -> OrthogonalityGraph:
    """Orthogonality graph of a frame: an edge joins distinct orthogonal rays."""
    adj: dict[int, set[int]] = {r.id: set() for r in frame.rays}
    for a, b in itertools.combinations(frame.rays, 2):
        if not inner_product(a.coords, b.coords):
            adj[a.id].add(b.id)
            adj[b.id].add(a.id)
    return OrthogonalityGraph(
        frame.ids,
        {u: frozenset(s) for u, s in adj.items()},
        frame.labels(),
        frame,
    )


def _spans(frame: Frame, members: Sequence[int]) -> bool:
    if len(members) != frame.dim:
        return False
    return rank([list(frame.coords(i).entries) for i in members]) == frame.dim


def enumerate_maximal_contexts(graph: OrthogonalityGraph, *, backend: str | None = None) -> list[Context]:
    """All maximal cliques, sorted by member ids.

    ``is_basis`` is set for cliques of ``dim`` rays that span, which requires
    the graph to carry its frame.
    """
    pos, masks = graph.bit_masks()
    found = kernels.maximal_cliques(masks, backend=backend)
    nodes = graph.nodes
    out = []
    for mask in found:
        members = tuple(nodes[k] for k in range(len(nodes)) if mask >> k & 1)
        is_basis = graph.frame is not None and _spans(graph.frame, members)
        out.append(Context(members, is_maximal=True, is_basis=is_basis))
    out.sort()
    return out


def resolve_bases(frame: Frame, graph: OrthogonalityGraph | None = None) -> list[Context]:
    """Declared bases (validated) or else every maximal context that is a basis."""
    if frame.declared_bases is not None:
        out = []
        for b in frame.declared_bases:
            for u, v in itertools.combinations(b, 2):
                if inner_product(frame.coords(u), frame.coords(v)):
                    raise FrameError(f"declared basis {list(b)} is not orthogonal: rays {u} and {v}")
            if not _spans(frame, b):
                raise FrameError(f"declared basis {list(b)} does not span dimension {frame.dim}")
            out.append(Context(b, is_maximal=True, is_basis=True))
        return sorted(out)
    graph = graph if graph is not None else build_graph(frame)
    return [c for c in enumerate_maximal_contexts(graph) if c.is_basis]


def contexts_compatible(c1: Context, c2: Context, graph: OrthogonalityGraph) -> bool:
    """True iff the union of the two contexts is again a complete subgraph."""
    return graph.is_complete(sorted(set(c1.members) | set(c2.members)))
