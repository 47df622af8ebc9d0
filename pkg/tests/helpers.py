"""Random generators and independent oracles shared by the tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from ksgraph.frames import Frame, Ray
from ksgraph.linalg import DensityOperator, RationalUnitary, Vector
from ksgraph.scalar import Scalar

CABELLO_COORDS = [
    (0, 0, 1, 0), (1, 1, 0, 0), (1, -1, 0, 0), (0, 1, 0, 0), (1, 0, 1, 0), (1, 0, -1, 0),
    (1, -1, 1, -1), (1, -1, -1, 1), (0, 0, 1, 1), (1, 1, 1, 1), (0, 1, 0, -1), (1, 0, 0, 1),
    (1, 0, 0, -1), (0, 1, -1, 0), (1, 1, -1, 1), (1, 1, 1, -1), (-1, 1, 1, 1), (0, 0, 0, 1),
]  # fmt: skip

PYTHAGOREAN = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25)]
UNIT_PHASES = [Scalar(0, 1), Scalar(-1), Scalar(Fraction(3, 5), Fraction(4, 5)), Scalar(Fraction(5, 13), Fraction(-12, 13))]


def cabello_frame() -> Frame:
    return Frame.from_coords(CABELLO_COORDS)


def random_vector(rng: random.Random, d: int, *, complex_: bool = False, bound: int = 5) -> Vector:
    while True:
        if complex_:
            v = Vector(Scalar(rng.randint(-bound, bound), rng.randint(-bound, bound)) for _ in range(d))
        else:
            v = Vector(rng.randint(-bound, bound) for _ in range(d))
        if not v.is_zero():
            return v


def random_density(rng: random.Random, d: int, *, complex_: bool = True) -> DensityOperator:
    k = rng.randint(1, 3)
    return DensityOperator.mixture((rng.randint(1, 6), random_vector(rng, d, complex_=complex_)) for _ in range(k))


def random_unitary(rng: random.Random, d: int, *, steps: int = 3, complex_: bool = False) -> RationalUnitary:
    """Product of rational plane rotations, a permutation and (optionally) phases."""
    perm = list(range(d))
    rng.shuffle(perm)
    u = RationalUnitary.permutation(perm)
    if d < 2:
        return u
    for _ in range(steps):
        i, j = rng.sample(range(d), 2)
        a, b, c = rng.choice(PYTHAGOREAN)
        if rng.random() < 0.5:
            a, b = b, a
        sign = rng.choice((1, -1))
        u = RationalUnitary.rotation(d, i, j, Fraction(a, c), Fraction(sign * b, c)) @ u
        if complex_:
            u = RationalUnitary.phase(d, rng.randrange(d), rng.choice(UNIT_PHASES)) @ u
    return u


def brute_force_asa_exists(ids, bases) -> bool:
    """Enumerate all 2^n assignments; exactly-one-per-basis check."""
    pos = {i: k for k, i in enumerate(ids)}
    masks = [sum(1 << pos[i] for i in b) for b in bases]
    for assignment in range(1 << len(pos)):
        if all((assignment & m).bit_count() == 1 for m in masks):
            return True
    return False


def naive_maximal_cliques(nodes, adjacent) -> list[tuple[int, ...]]:
    """Every subset, keep cliques, keep those not strictly inside another."""
    nodes = sorted(nodes)
    cliques = []
    for k in range(1, len(nodes) + 1):
        for sub in itertools.combinations(nodes, k):
            if all(adjacent(u, v) for u, v in itertools.combinations(sub, 2)):
                cliques.append(frozenset(sub))
    maximal = [c for c in cliques if not any(c < o for o in cliques)]
    return sorted(tuple(sorted(c)) for c in maximal)


def small_ray_pool(d: int) -> list[Vector]:
    """Canonical rays with entries in {-1, 0, 1}."""
    seen = {}
    for coords in itertools.product((-1, 0, 1), repeat=d):
        if any(coords):
            r = Ray(0, Vector(coords)).coords
            seen[r] = None
    return list(seen)


def orthogonal_bases_in(pool: list[Vector], d: int) -> list[tuple[int, ...]]:
    def dot(u, v):
        return sum((a.conj() * b for a, b in zip(u, v)), Scalar(0))

    n = len(pool)
    orth = [[bool(i != j and not dot(pool[i], pool[j])) for j in range(n)] for i in range(n)]
    out = []

    def grow(combo):
        if len(combo) == d:
            out.append(tuple(combo))
            return
        for k in range(combo[-1] + 1 if combo else 0, n):
            if all(orth[k][c] for c in combo):
                grow(combo + [k])

    grow([])
    return out


def random_frame(rng: random.Random, pools: dict, *, max_rays: int = 12, max_bases: int = 5) -> Frame:
    """Frame built from 1..max_bases random orthogonal bases drawn from a small pool.

    Bases are declared so the frame carries exactly those constraints.
    """
    d = rng.choice(sorted(pools))
    pool, bases = pools[d]
    chosen: list[tuple[int, ...]] = []
    used: set[int] = set()
    for b in rng.sample(bases, min(len(bases), rng.randint(1, max_bases))):
        if len(used | set(b)) > max_rays:
            continue
        chosen.append(b)
        used |= set(b)
    extras = [k for k in range(len(pool)) if k not in used]
    rng.shuffle(extras)
    for k in extras[: rng.randint(0, 2)]:
        if len(used) < max_rays:
            used.add(k)
    order = sorted(used)
    rid = {k: n + 1 for n, k in enumerate(order)}
    rays = tuple(Ray(rid[k], pool[k]) for k in order)
    return Frame(d, rays, tuple(tuple(rid[k] for k in b) for b in chosen))
