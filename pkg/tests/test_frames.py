import itertools
import random

import pytest

from ksgraph.errors import FrameError
from ksgraph.frames import (
    Context,
    Frame,
    OrthogonalityGraph,
    Ray,
    build_graph,
    contexts_compatible,
    enumerate_maximal_contexts,
    resolve_bases,
)
from ksgraph.linalg import Vector, commutes, inner_product, projector_from_ray

from helpers import CABELLO_COORDS, naive_maximal_cliques, random_vector

CABELLO_BASES = [
    (1, 2, 3, 18), (1, 4, 12, 13), (2, 7, 8, 9), (3, 9, 15, 16), (4, 5, 6, 18),
    (5, 11, 15, 17), (6, 7, 10, 11), (8, 10, 13, 14), (12, 14, 16, 17),
]  # fmt: skip

# orthogonal pairs that are not drawn as part of any basis
CABELLO_EXTRA = [(4, 9), (6, 16), (1, 11), (2, 17), (8, 5), (14, 18), (3, 10), (7, 12), (13, 15)]


def _all_cliques_by_extension(graph):
    """Grow cliques one higher-id node at a time; independent of the kernel."""
    out = []
    frontier = [(u,) for u in graph.nodes]
    while frontier:
        out.extend(frontier)
        frontier = [
            c + (v,)
            for c in frontier
            for v in graph.nodes
            if v > c[-1] and all(graph.adjacent(u, v) for u in c)
        ]
    sets = [frozenset(c) for c in out]
    return sorted(tuple(sorted(c)) for c in sets if not any(c < o for o in sets))


# --- build_graph -------------------------------------------------------------


def test_cabello_graph_edges(cabello):
    g = build_graph(cabello)
    assert g.adjacent(1, 2)
    for u, v in CABELLO_EXTRA:
        assert g.adjacent(u, v), (u, v)
        assert not any(u in b and v in b for b in CABELLO_BASES)
    basis_pairs = {p for b in CABELLO_BASES for p in itertools.combinations(b, 2)}
    assert len(g.edges()) == len(basis_pairs) + len(CABELLO_EXTRA) == 63


def test_orthonormal_basis_gives_complete_graph():
    f = Frame.from_coords([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    g = build_graph(f)
    assert g.edges() == [(1, 2), (1, 3), (2, 3)]


def test_non_orthogonal_pair_has_no_edge():
    g = build_graph(Frame.from_coords([(1, 0), (1, 1)]))
    assert g.edges() == []
    assert g.adjacent(1, 1)  # reflexive by convention


def test_edge_iff_projectors_commute():
    rng = random.Random(21)
    for _ in range(40):
        d = rng.randint(2, 4)
        seen = {}
        for _ in range(6):
            v = random_vector(rng, d, bound=1)
            seen.setdefault(Ray(0, v).coords, v)
        f = Frame.from_coords(list(seen))
        g = build_graph(f)
        for a, b in itertools.combinations(f.rays, 2):
            p, q = projector_from_ray(a.coords), projector_from_ray(b.coords)
            assert g.adjacent(a.id, b.id) == commutes(p, q) == (inner_product(a.coords, b.coords) == 0)


# --- frame validation ----------------------------------------------------------


def test_duplicate_canonical_rays_rejected():
    with pytest.raises(FrameError, match="rays 1 and 2"):
        Frame.from_coords([(1, 0), (2, 0)])
    with pytest.raises(FrameError, match="rays 1 and 2"):
        Frame.from_coords([(1, "i"), ("i", -1)])


def test_frame_rejects_bad_rays():
    with pytest.raises(FrameError, match="dimension"):
        Frame(2, (Ray(1, Vector.of(1, 0)), Ray(2, Vector.of(1, 0, 0))))
    with pytest.raises(FrameError, match="duplicate ray id"):
        Frame(2, (Ray(1, Vector.of(1, 0)), Ray(1, Vector.of(0, 1))))
    with pytest.raises(FrameError, match="unknown ray ids"):
        Frame.from_coords([(1, 0), (0, 1)], declared_bases=[(1, 5)])


# --- maximal contexts ----------------------------------------------------------


def test_cabello_maximal_contexts(cabello, backend):
    contexts = enumerate_maximal_contexts(build_graph(cabello), backend=backend)
    bases = [c.members for c in contexts if c.is_basis]
    assert bases == CABELLO_BASES
    assert len(contexts) == 24
    assert [c.members for c in contexts] == _all_cliques_by_extension(build_graph(cabello))
    # every extra orthogonal pair sits in some non-basis maximal context
    others = [set(c.members) for c in contexts if not c.is_basis]
    assert all(any({u, v} <= c for c in others) for u, v in CABELLO_EXTRA)


def test_complete_and_edgeless_graphs(backend):
    k4 = OrthogonalityGraph.from_edges(range(1, 5), itertools.combinations(range(1, 5), 2))
    assert [c.members for c in enumerate_maximal_contexts(k4, backend=backend)] == [(1, 2, 3, 4)]
    empty = OrthogonalityGraph.from_edges(range(1, 6), [])
    assert [c.members for c in enumerate_maximal_contexts(empty, backend=backend)] == [(i,) for i in range(1, 6)]


def test_k4_from_basis_is_flagged_basis():
    f = Frame.from_coords([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    (ctx,) = enumerate_maximal_contexts(build_graph(f))
    assert ctx.is_basis and ctx.is_maximal


def test_random_graphs_match_naive_oracle(backend):
    rng = random.Random(12)
    for _ in range(40):
        n = rng.randint(1, 12)
        nodes = rng.sample(range(1, 40), n)
        p = rng.choice((0.25, 0.5, 0.75))
        edges = [(u, v) for u, v in itertools.combinations(nodes, 2) if rng.random() < p]
        g = OrthogonalityGraph.from_edges(nodes, edges)
        got = [c.members for c in enumerate_maximal_contexts(g, backend=backend)]
        assert got == naive_maximal_cliques(nodes, g.adjacent)
        for members in got:
            assert g.is_complete(members)
            assert not any(g.is_complete(members + (x,)) for x in g.nodes if x not in members)


def test_context_order_is_deterministic(cabello):
    g = build_graph(cabello)
    assert enumerate_maximal_contexts(g) == enumerate_maximal_contexts(g)
    assert Context((3, 1, 2)).members == (1, 2, 3)


# --- resolve_bases -------------------------------------------------------------


def test_resolve_bases_cabello_covers_each_id_twice(cabello):
    bases = resolve_bases(cabello)
    assert len(bases) == 9 and all(len(b) == 4 for b in bases)
    counts = {i: sum(i in b for b in bases) for i in cabello.ids}
    assert set(counts.values()) == {2}


def test_resolve_bases_declared():
    f = Frame.from_coords([(1, 0, 0), (0, 1, 0), (0, 0, 1)], declared_bases=[(1, 2, 3)])
    assert [b.members for b in resolve_bases(f)] == [(1, 2, 3)]


def test_resolve_bases_rejects_non_orthogonal_declaration():
    f = Frame.from_coords([(1, 0), (1, 1)], declared_bases=[(1, 2)])
    with pytest.raises(FrameError, match=r"\[1, 2\]"):
        resolve_bases(f)


def test_cabello_bases_span_by_oracle():
    # independent check: mutual orthogonality of 4 nonzero vectors implies rank 4
    for b in CABELLO_BASES:
        vs = [CABELLO_COORDS[i - 1] for i in b]
        for u, v in itertools.combinations(vs, 2):
            assert sum(x * y for x, y in zip(u, v)) == 0


# --- compatibility ---------------------------------------------------------------


def test_contexts_compatible(cabello):
    g = build_graph(cabello)
    b1, b2 = Context((1, 2, 3, 18)), Context((1, 4, 12, 13))
    assert contexts_compatible(b1, b1, g)
    # v2=(1,1,0,0) and v4=(0,1,0,0) are not orthogonal
    assert inner_product(cabello.coords(2), cabello.coords(4)) != 0
    assert not contexts_compatible(b1, b2, g)
    assert contexts_compatible(Context((1,)), Context((2,)), g)


def test_graph_rejects_asymmetric_adjacency():
    with pytest.raises(ValueError):
        OrthogonalityGraph((1, 2), {1: frozenset({2}), 2: frozenset()})
