"""Binary and intensive valuations over frames.

A binary valuation assigns 0 or 1 to every ray; it is an ASA (actual state of
affairs) when every basis gets exactly one 1. Kochen-Specker colorability is
decided by :func:`ks_solve`. Intensive valuations assign exact rationals in
[0, 1]; those produced by the Born rule are PSAs (potential states of
affairs): every basis sums to exactly 1 and no context exceeds 1.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Literal, Mapping, Sequence, Union

from ksgraph import kernels
from ksgraph.errors import PreconditionError
from ksgraph.frames import (
    Context,
    Frame,
    OrthogonalityGraph,
    build_graph,
    enumerate_maximal_contexts,
    resolve_bases,
)
from ksgraph.linalg import (
    DensityOperator,
    Operator,
    RationalUnitary,
    Vector,
    born_probability,
    evolve,
    is_psd,
    solve_exact,
)
from ksgraph.scalar import Scalar

__all__ = [
    "BinaryValuation",
    "LocalBinaryValuation",
    "IntensiveValuation",
    "ParityCertificate",
    "SearchExhausted",
    "KSReport",
    "Reconstruction",
    "is_asa",
    "ks_solve",
    "parity_certificate",
    "check_compatibility",
    "paste_local_valuations",
    "restrict_global",
    "born_giv",
    "check_psa",
    "collapse_tau",
    "reconstruct_density",
    "evolution_commutes",
    "classical_asa",
]

State = Union[DensityOperator, Vector]


def _frozen_map(m: Mapping) -> Mapping:
    return MappingProxyType(dict(sorted(m.items())))


@dataclass(frozen=True)
class BinaryValuation:
    assignment: Mapping[int, int]

    def __post_init__(self) -> None:
        bad = {k: v for k, v in self.assignment.items() if v not in (0, 1)}
        if bad:
            raise ValueError(f"binary valuation values must be 0 or 1, got {bad}")
        object.__setattr__(self, "assignment", _frozen_map({k: int(v) for k, v in self.assignment.items()}))

    @classmethod
    def from_ones(cls, ids: Iterable[int], ones: Iterable[int]) -> BinaryValuation:
        ones = set(ones)
        return cls({i: int(i in ones) for i in ids})

    def __getitem__(self, ray_id: int) -> int:
        return self.assignment[ray_id]

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(self.assignment)

    @property
    def ones(self) -> tuple[int, ...]:
        return tuple(k for k, v in self.assignment.items() if v)

    def is_total_over(self, ids: Iterable[int]) -> bool:
        return set(ids) <= set(self.assignment)

    def __eq__(self, other):
        if not isinstance(other, BinaryValuation):
            return NotImplemented
        return dict(self.assignment) == dict(other.assignment)

    def __hash__(self):
        return hash(tuple(self.assignment.items()))


@dataclass(frozen=True)
class LocalBinaryValuation:
    """A {0,1} assignment on the members of one context.

    The exactly-one rule for basis contexts is exposed through
    :meth:`respects_basis_rule` instead of being enforced, so that arbitrary
    global valuations can always be restricted.
    """

    context: Context
    assignment: Mapping[int, int]

    def __post_init__(self) -> None:
        if set(self.assignment) != set(self.context.members):
            raise ValueError(
                f"local valuation keys {sorted(self.assignment)} differ from context {list(self.context.members)}"
            )
        if any(v not in (0, 1) for v in self.assignment.values()):
            raise ValueError("local valuation values must be 0 or 1")
        object.__setattr__(self, "assignment", _frozen_map({k: int(v) for k, v in self.assignment.items()}))

    def respects_basis_rule(self) -> bool:
        return not self.context.is_basis or sum(self.assignment.values()) == 1


@dataclass(frozen=True)
class IntensiveValuation:
    """Exact values in [0, 1] per node; ``origin`` is ``"born"`` or ``"loaded"``."""

    assignment: Mapping[int, Fraction]
    origin: Literal["born", "loaded"] = "loaded"
    state: State | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        values = {k: Fraction(v) for k, v in self.assignment.items()}
        out = {k: v for k, v in values.items() if not 0 <= v <= 1}
        if out:
            raise ValueError(f"intensive values must lie in [0, 1], got {out}")
        object.__setattr__(self, "assignment", _frozen_map(values))

    def __getitem__(self, node: int) -> Fraction:
        return self.assignment[node]

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(self.assignment)


@dataclass(frozen=True)
class ParityCertificate:
    basis_count: int
    multiplicities: Mapping[int, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "multiplicities", _frozen_map(self.multiplicities))

    def is_valid(self) -> bool:
        return self.basis_count % 2 == 1 and all(m % 2 == 0 for m in self.multiplicities.values())

    def describe(self) -> str:
        return f"parity certificate: {self.basis_count} bases, all multiplicities even"


@dataclass(frozen=True)
class SearchExhausted:
    nodes: int
    branches: int

    def describe(self) -> str:
        return f"search exhausted: {self.nodes} nodes, {self.branches} branches"


@dataclass(frozen=True)
class KSReport:
    verdict: Literal["satisfiable", "unsatisfiable"]
    valuation: BinaryValuation | None = None
    certificate: ParityCertificate | SearchExhausted | None = None
    bases: tuple[Context, ...] = ()
    nodes: int = 0
    branches: int = 0

    @property
    def satisfiable(self) -> bool:
        return self.verdict == "satisfiable"

    def summary(self) -> str:
        if self.satisfiable:
            return f"SATISFIABLE (witness ones: {list(self.valuation.ones)})"
        return f"UNSATISFIABLE ({self.certificate.describe()})"


# ----------------------------------------------------------------------------
# binary valuations


def is_asa(v: BinaryValuation, bases: Sequence[Context]) -> bool:
    """True iff exactly one member of every basis is assigned 1."""
    return all(sum(v[i] for i in b.members) == 1 for b in bases)


def parity_certificate(bases: Sequence[Context]) -> ParityCertificate | None:
    """Odd number of bases with every ray used an even number of times.

    Summing the per-basis equations then gives an odd left side equal to an
    even right side, so no ASA exists.
    """
    counts = Counter(i for b in bases for i in b.members)
    cert = ParityCertificate(len(bases), counts)
    return cert if bases and cert.is_valid() else None


def _positions(frame: Frame) -> tuple[list[int], dict[int, int]]:
    ids = sorted(frame.ids)
    return ids, {rid: k for k, rid in enumerate(ids)}


def _mask(ids: Iterable[int], pos: Mapping[int, int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << pos[i]
    return m


def _search(
    frame: Frame,
    bases: Sequence[Context],
    fixed: Mapping[int, int] | None = None,
    backend: str | None = None,
) -> tuple[BinaryValuation | None, int, int]:
    ids, pos = _positions(frame)
    fixed = fixed or {}
    ones = _mask((i for i, v in fixed.items() if v), pos)
    zeros = _mask((i for i, v in fixed.items() if not v), pos)
    found, mask, nodes, branches = kernels.ks_search(
        len(ids), [_mask(b.members, pos) for b in bases], ones, zeros, backend=backend
    )
    if not found:
        return None, nodes, branches
    return BinaryValuation.from_ones(ids, (ids[k] for k in range(len(ids)) if mask >> k & 1)), nodes, branches


def ks_solve(frame: Frame, *, use_parity: bool = True, backend: str | None = None) -> KSReport:
    """Decide whether the frame admits an ASA.

    The parity certificate is tried first; ``use_parity=False`` skips it so the
    exhaustive search runs on its own. The search is sequential, so the
    witness is deterministic.
    """
    bases = resolve_bases(frame)
    if not bases:
        raise PreconditionError("frame has no basis contexts: nothing to valuate against")
    if use_parity:
        cert = parity_certificate(bases)
        if cert is not None:
            return KSReport("unsatisfiable", certificate=cert, bases=tuple(bases))
    witness, nodes, branches = _search(frame, bases, backend=backend)
    if witness is None:
        return KSReport(
            "unsatisfiable",
            certificate=SearchExhausted(nodes, branches),
            bases=tuple(bases),
            nodes=nodes,
            branches=branches,
        )
    return KSReport("satisfiable", valuation=witness, bases=tuple(bases), nodes=nodes, branches=branches)


def restrict_global(v: BinaryValuation, c: Context) -> LocalBinaryValuation:
    return LocalBinaryValuation(c, {i: v[i] for i in c.members})


def check_compatibility(family: Sequence[LocalBinaryValuation]) -> bool:
    """Pairwise agreement on every shared ray id."""
    seen: dict[int, int] = {}
    for lbv in family:
        for i, val in lbv.assignment.items():
            if seen.setdefault(i, val) != val:
                return False
    return True


def paste_local_valuations(
    family: Sequence[LocalBinaryValuation], frame: Frame, *, backend: str | None = None
) -> BinaryValuation | None:
    """A global ASA restricting to every member of ``family``, if one exists."""
    if not check_compatibility(family):
        raise PreconditionError("local valuations disagree on shared rays; run check_compatibility first")
    fixed: dict[int, int] = {}
    for lbv in family:
        fixed.update(lbv.assignment)
    unknown = set(fixed) - set(frame.ids)
    if unknown:
        raise PreconditionError(f"local valuations mention rays outside the frame: {sorted(unknown)}")
    witness, _, _ = _search(frame, resolve_bases(frame), fixed, backend=backend)
    return witness


def classical_asa(frame: Frame) -> BinaryValuation:
    """ASA of a frame whose graph is a disjoint union of cliques.

    Each basis gets its 1 on its lowest ray id.
    """
    graph = build_graph(frame)
    for comp in graph.components():
        if not graph.is_complete(comp):
            raise PreconditionError(f"frame is not classical: component {list(comp)} is not a clique")
    ones = {b.members[0] for b in resolve_bases(frame, graph)}
    return BinaryValuation.from_ones(frame.ids, ones)


# ----------------------------------------------------------------------------
# intensive valuations


def born_giv(frame: Frame, state: State) -> IntensiveValuation:
    return IntensiveValuation(
        {r.id: born_probability(state, r.coords) for r in frame.rays},
        origin="born",
        state=state,
    )


def _structure(target: Frame | OrthogonalityGraph) -> tuple[OrthogonalityGraph, list[Context]]:
    if isinstance(target, Frame):
        graph = build_graph(target)
        return graph, resolve_bases(target, graph)
    if target.frame is not None:
        return target, resolve_bases(target.frame, target)
    return target, []


def check_psa(giv: IntensiveValuation, target: Frame | OrthogonalityGraph) -> bool:
    """Basis sums exactly 1 and every maximal context sum at most 1.

    ``target`` may be a bare graph (no rays), in which case there are no bases
    and only the context bound applies.
    """
    graph, bases = _structure(target)
    missing = set(graph.nodes) - set(giv.assignment)
    if missing:
        raise PreconditionError(f"intensive valuation is not total: missing {sorted(missing)}")
    if any(sum(giv[i] for i in b.members) != 1 for b in bases):
        return False
    return all(sum(giv[i] for i in c.members) <= 1 for c in enumerate_maximal_contexts(graph))


def collapse_tau(giv: IntensiveValuation) -> BinaryValuation:
    """Support map: 0 stays 0, every positive value becomes 1."""
    return BinaryValuation({k: int(v != 0) for k, v in giv.assignment.items()})


@dataclass(frozen=True)
class Reconstruction:
    state: DensityOperator | None
    status: Literal["unique", "underdetermined", "inconsistent", "not-psd"]

    def __bool__(self) -> bool:
        return self.state is not None


def _density_coefficients(v: Vector) -> list[Fraction]:
    """Row of the real system Tr(rho P_v) = value.

    Unknowns: rho_ii for all i, then (Re rho_ij, Im rho_ij) for i < j.
    """
    d = v.dim
    n = v.norm2()
    row = [v[i].abs2() / n for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            p = v[j] * v[i].conj()  # n * P_ji
            row.append(2 * p.re / n)
            row.append(-2 * p.im / n)
    return row


def reconstruct_density(frame: Frame, giv: IntensiveValuation) -> Reconstruction:
    """Solve Tr(rho P_v) = giv(v) for a Hermitian, trace-one rho.

    Succeeds only when the frame pins rho down uniquely and the solution is
    positive semi-definite.
    """
    d = frame.dim
    rows = [_density_coefficients(r.coords) for r in frame.rays]
    rhs = [giv[r.id] for r in frame.rays]
    rows.append([Fraction(1)] * d + [Fraction(0)] * (d * (d - 1)))
    rhs.append(Fraction(1))
    x, status = solve_exact(rows, rhs)
    if x is None:
        return Reconstruction(None, status)
    m: list[list[Scalar]] = [[Scalar(0)] * d for _ in range(d)]
    for i in range(d):
        m[i][i] = Scalar(x[i])
    k = d
    for i in range(d):
        for j in range(i + 1, d):
            m[i][j] = Scalar(x[k], x[k + 1])
            m[j][i] = Scalar(x[k], -x[k + 1])
            k += 2
    op = Operator(m)
    if not is_psd(op):
        return Reconstruction(None, "not-psd")
    return Reconstruction(DensityOperator(op), "unique")


def evolution_commutes(frame: Frame, state: State, u: RationalUnitary) -> bool:
    """Born values are unchanged when state and rays are evolved together."""
    rho = DensityOperator.from_pure(state) if isinstance(state, Vector) else state
    moved = evolve(rho, u)
    return all(born_probability(moved, u.apply(r.coords)) == born_probability(rho, r.coords) for r in frame.rays)
