"""Command implementations shared by the CLI and tests.

Every command returns a :class:`Report`: a JSON-ready ``data`` dict built once,
plus a text rendering derived from that same dict.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ksgraph.dot import export_dot
from ksgraph.errors import PreconditionError
from ksgraph.frames import Context, enumerate_maximal_contexts, resolve_bases
from ksgraph.heyting import (
    Host,
    Subgraph,
    all_subgraphs,
    brute_force_implication,
    implication,
    join,
    leq,
    meet,
    pseudo_complement,
)
from ksgraph.linalg import DensityOperator, RationalUnitary, Vector, evolve
from ksgraph.scalar import format_rational
from ksgraph.scenario import Scenario, state_to_json
from ksgraph.valuations import (
    IntensiveValuation,
    State,
    born_giv,
    check_psa,
    collapse_tau,
    evolution_commutes,
    is_asa,
    ks_solve,
    reconstruct_density,
)

__all__ = [
    "Report",
    "cmd_contexts",
    "cmd_ks",
    "cmd_valuate",
    "cmd_collapse",
    "cmd_check_psa",
    "cmd_reconstruct",
    "cmd_evolve",
    "cmd_heyting_demo",
    "cmd_export_dot",
    "default_unitary",
]

HEYTING_HOST_LIMIT = 4


@dataclass(frozen=True)
class Report:
    command: str
    data: dict

    def to_json(self) -> str:
        return json.dumps(self.data, indent=2) + "\n"

    def to_text(self) -> str:
        return _RENDERERS[self.command](self.data)

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_text()


def _q(x: Fraction) -> str:
    return format_rational(x)


def _header(sc: Scenario) -> dict:
    return {
        "scenario": sc.name,
        "dimension": sc.dim,
        "nodes": len(sc.graph.nodes),
        "edges": len(sc.graph.edges()),
    }


def _ctx_rows(sc: Scenario, contexts: list[Context]) -> list[dict]:
    return [
        {
            "index": k,
            "members": list(c.members),
            "labels": [sc.graph.label(u) for u in c.members],
            "basis": c.is_basis,
        }
        for k, c in enumerate(contexts)
    ]


def _bases(sc: Scenario) -> list[Context]:
    if sc.frame is None:
        return []
    return resolve_bases(sc.frame, sc.graph)


def _valuation(sc: Scenario, state: State | None) -> IntensiveValuation:
    state = state if state is not None else sc.state
    if state is not None:
        if sc.frame is None:
            raise PreconditionError(f"scenario {sc.name!r} has no rays to apply a quantum state to")
        return born_giv(sc.frame, state)
    if sc.valuation is not None:
        return sc.valuation
    raise PreconditionError(f"scenario {sc.name!r} carries no state or valuation; pass --state")


def _require_state(sc: Scenario, state: State | None) -> State:
    state = state if state is not None else sc.state
    if state is None:
        raise PreconditionError(f"scenario {sc.name!r} carries no state; pass --state")
    if sc.frame is None:
        raise PreconditionError(f"scenario {sc.name!r} has no rays")
    return state


# ----------------------------------------------------------------------------
# commands


def cmd_contexts(sc: Scenario) -> Report:
    contexts = enumerate_maximal_contexts(sc.graph)
    data = _header(sc)
    data["maximal_contexts"] = len(contexts)
    data["basis_contexts"] = sum(c.is_basis for c in contexts)
    data["contexts"] = _ctx_rows(sc, contexts)
    return Report("contexts", data)


def cmd_ks(sc: Scenario, *, use_parity: bool = True) -> Report:
    if sc.frame is None:
        raise PreconditionError(f"scenario {sc.name!r} has no rays; nothing to valuate against")
    rep = ks_solve(sc.frame, use_parity=use_parity)
    data = _header(sc)
    data["verdict"] = rep.verdict.upper()
    data["summary"] = rep.summary()
    data["bases"] = [list(b.members) for b in rep.bases]
    cert = rep.certificate
    if cert is None:
        data["certificate"] = None
    elif hasattr(cert, "multiplicities"):
        data["certificate"] = {
            "kind": "parity",
            "basis_count": cert.basis_count,
            "multiplicities": {str(k): v for k, v in cert.multiplicities.items()},
        }
    else:
        data["certificate"] = {"kind": "search_exhausted", "nodes": cert.nodes, "branches": cert.branches}
    data["witness"] = None if rep.valuation is None else {str(k): v for k, v in rep.valuation.assignment.items()}
    if rep.valuation is not None:
        data["witness_is_asa"] = is_asa(rep.valuation, rep.bases)
    data["search"] = {"nodes": rep.nodes, "branches": rep.branches}
    return Report("ks", data)


def _value_table(sc: Scenario, giv: IntensiveValuation) -> list[dict]:
    return [{"id": u, "label": sc.graph.label(u), "value": _q(giv[u])} for u in sc.graph.nodes]


def _sum_rows(giv: IntensiveValuation, contexts: list[Context]) -> list[dict]:
    return [{"members": list(c.members), "sum": _q(sum((giv[u] for u in c.members), Fraction(0)))} for c in contexts]


def cmd_valuate(sc: Scenario, state: State | None = None) -> Report:
    giv = _valuation(sc, state)
    data = _header(sc)
    data["origin"] = giv.origin
    if giv.origin == "born":
        data["state"] = state_to_json(giv.state)
    data["values"] = _value_table(sc, giv)
    bases = _bases(sc)
    data["basis_sums"] = _sum_rows(giv, bases)
    if not bases:
        data["context_sums"] = _sum_rows(giv, enumerate_maximal_contexts(sc.graph))
    return Report("valuate", data)


def cmd_collapse(sc: Scenario, state: State | None = None) -> Report:
    giv = _valuation(sc, state)
    gbv = collapse_tau(giv)
    bases = _bases(sc)
    data = _header(sc)
    data["origin"] = giv.origin
    data["rows"] = [
        {"id": u, "label": sc.graph.label(u), "intensive": _q(giv[u]), "binary": gbv[u]} for u in sc.graph.nodes
    ]
    data["basis_count"] = len(bases)
    data["is_asa"] = is_asa(gbv, bases) if bases else None
    data["violating_bases"] = [list(b.members) for b in bases if sum(gbv[u] for u in b.members) != 1]
    return Report("collapse", data)


def cmd_check_psa(sc: Scenario, state: State | None = None) -> Report:
    giv = _valuation(sc, state)
    bases = _bases(sc)
    contexts = enumerate_maximal_contexts(sc.graph)
    data = _header(sc)
    data["origin"] = giv.origin
    data["is_psa"] = check_psa(giv, sc.frame if sc.frame is not None else sc.graph)
    data["basis_violations"] = [
        r for r in _sum_rows(giv, bases) if Fraction(r["sum"]) != 1
    ]
    data["context_violations"] = [r for r in _sum_rows(giv, contexts) if Fraction(r["sum"]) > 1]
    return Report("check-psa", data)


def _matrix_json(rho: DensityOperator) -> list[list[str]]:
    return [[str(x) for x in row] for row in rho.op.rows]


def cmd_reconstruct(sc: Scenario, state: State | None = None) -> Report:
    if sc.frame is None:
        raise PreconditionError(f"scenario {sc.name!r} has no rays to reconstruct from")
    giv = _valuation(sc, state)
    rec = reconstruct_density(sc.frame, giv)
    data = _header(sc)
    data["origin"] = giv.origin
    data["status"] = rec.status
    data["density"] = None if rec.state is None else _matrix_json(rec.state)
    if rec.state is not None and giv.origin == "born":
        src = giv.state
        rho = DensityOperator.from_pure(src) if isinstance(src, Vector) else src
        data["round_trip_exact"] = rec.state == rho
    return Report("reconstruct", data)


def default_unitary(d: int) -> RationalUnitary:
    """3-4-5 rotation in the first coordinate plane (identity when d = 1)."""
    if d < 2:
        return RationalUnitary.identity(d)
    return RationalUnitary.rotation(d, 0, 1, Fraction(3, 5), Fraction(4, 5))


def cmd_evolve(sc: Scenario, state: State | None = None, unitary: RationalUnitary | None = None) -> Report:
    state = _require_state(sc, state)
    frame = sc.frame
    u = unitary if unitary is not None else default_unitary(frame.dim)
    rho = DensityOperator.from_pure(state) if isinstance(state, Vector) else state
    moved = evolve(rho, u)
    before = born_giv(frame, rho)
    data = _header(sc)
    data["unitary"] = [[str(x) for x in row] for row in u.op.rows]
    data["evolved_state"] = _matrix_json(moved)
    data["rows"] = []
    for r in frame.rays:
        moved_ray = u.apply(r.coords)
        data["rows"].append(
            {
                "id": r.id,
                "label": r.name,
                "value": _q(before[r.id]),
                "evolved_ray": [str(x) for x in moved_ray.entries],
            }
        )
    data["commutes"] = evolution_commutes(frame, rho, u)
    return Report("evolve", data)


def _host_check(name: str, host: Host) -> dict:
    subs = list(all_subgraphs(host))
    idx = {s: k for k, s in enumerate(subs)}
    rng = range(len(subs))
    le = [[leq(x, y) for y in subs] for x in subs]
    mt = [[idx[meet(x, y)] for y in subs] for x in subs]
    jn = [[idx[join(x, y)] for y in subs] for x in subs]
    imp = [[idx[implication(x, y)] for y in subs] for x in subs]
    adjunction = all(le[mt[c][a]][b] == le[c][imp[a][b]] for a in rng for b in rng for c in rng)
    distributive = all(mt[a][jn[b][c]] == jn[mt[a][b]][mt[a][c]] for a in rng for b in rng for c in rng)
    triples = len(subs) ** 3
    agrees = all(subs[imp[a][b]] == brute_force_implication(subs[a], subs[b]) for a in rng for b in rng)
    top = Subgraph.top(host)
    lem_fail = [a for a in subs if join(a, pseudo_complement(a)) != top]
    dn_fail = [a for a in subs if pseudo_complement(pseudo_complement(a)) != a]
    return {
        "host": name,
        "subgraphs": len(subs),
        "triples_checked": triples,
        "adjunction_holds": adjunction,
        "distributive": distributive,
        "closed_form_matches_brute_force": agrees,
        "excluded_middle_failures": len(lem_fail),
        "double_negation_failures": len(dn_fail),
    }


def cmd_heyting_demo(sc: Scenario | None = None) -> Report:
    hosts = [("K2", Host.complete(2)), ("P3", Host.path(3)), ("K3", Host.complete(3))]
    skipped = None
    if sc is not None:
        if len(sc.graph.nodes) <= HEYTING_HOST_LIMIT:
            hosts.append((sc.name, Host.from_graph(sc.graph)))
        else:
            skipped = f"{sc.name}: {len(sc.graph.nodes)} nodes exceeds the exhaustive limit of {HEYTING_HOST_LIMIT}"
    k2 = Host.complete(2)
    a = Subgraph.of(k2, {1, 2})
    not_a = pseudo_complement(a)
    data = {
        "hosts": [_host_check(n, h) for n, h in hosts],
        "skipped": skipped,
        "witness": {
            "host": "K2",
            "a": str(a),
            "not_a": str(not_a),
            "a_or_not_a": str(join(a, not_a)),
            "top": str(Subgraph.top(k2)),
            "excluded_middle_fails": join(a, not_a) != Subgraph.top(k2),
            "not_not_a": str(pseudo_complement(not_a)),
        },
    }
    return Report("heyting-demo", data)


def cmd_export_dot(sc: Scenario, state: State | None = None, *, with_valuation: bool = False) -> Report:
    giv = _valuation(sc, state) if (with_valuation or state is not None) else None
    target = sc.frame if sc.frame is not None else sc.graph
    return Report("export-dot", {"scenario": sc.name, "dot": export_dot(target, giv=giv, name=sc.name)})


# ----------------------------------------------------------------------------
# text renderers


def _render_contexts(d: dict) -> str:
    out = [_title(d), f"maximal contexts: {d['maximal_contexts']} ({d['basis_contexts']} bases)"]
    for c in d["contexts"]:
        flag = " [basis]" if c["basis"] else ""
        out.append(f"  ctx{c['index']}: {{{', '.join(c['labels'])}}}{flag}")
    return "\n".join(out) + "\n"


def _title(d: dict) -> str:
    dim = "-" if d.get("dimension") is None else d["dimension"]
    return f"scenario {d['scenario']} (dim {dim}, {d['nodes']} nodes, {d['edges']} edges)"


def _render_ks(d: dict) -> str:
    out = [_title(d), d["summary"], f"bases: {len(d['bases'])}"]
    for b in d["bases"]:
        out.append(f"  {b}")
    cert = d["certificate"]
    if cert and cert["kind"] == "parity":
        ms = ", ".join(f"{k}:{v}" for k, v in cert["multiplicities"].items())
        out.append(f"multiplicities: {ms}")
    if d["witness"] is not None:
        out.append("witness: " + " ".join(f"{k}={v}" for k, v in d["witness"].items()))
        out.append(f"witness passes ASA check: {d['witness_is_asa']}")
    out.append(f"search: {d['search']['nodes']} nodes, {d['search']['branches']} branches")
    return "\n".join(out) + "\n"


def _table(rows: list[dict], cols: list[str]) -> list[str]:
    widths = [max(len(c), *(len(str(r[c])) for r in rows)) if rows else len(c) for c in cols]
    line = "  ".join(c.ljust(w) for c, w in zip(cols, widths))
    out = [line.rstrip(), "  ".join("-" * w for w in widths)]
    for r in rows:
        out.append("  ".join(str(r[c]).ljust(w) for c, w in zip(cols, widths)).rstrip())
    return out


def _render_valuate(d: dict) -> str:
    out = [_title(d), f"origin: {d['origin']}"]
    out += _table(d["values"], ["id", "label", "value"])
    if d["basis_sums"]:
        out.append("basis sums:")
        out += [f"  {r['members']}: {r['sum']}" for r in d["basis_sums"]]
    for r in d.get("context_sums", []):
        out.append(f"context sum {r['members']}: {r['sum']}")
    return "\n".join(out) + "\n"


def _render_collapse(d: dict) -> str:
    out = [_title(d), f"origin: {d['origin']}"]
    out += _table(d["rows"], ["id", "label", "intensive", "binary"])
    if d["is_asa"] is None:
        out.append("no basis contexts; ASA check not applicable")
    else:
        out.append(f"collapsed valuation is an ASA: {d['is_asa']}")
        out.append(f"bases without exactly one 1: {len(d['violating_bases'])} of {d['basis_count']}")
    return "\n".join(out) + "\n"


def _render_check_psa(d: dict) -> str:
    out = [_title(d), f"origin: {d['origin']}", f"PSA: {d['is_psa']}"]
    for r in d["basis_violations"]:
        out.append(f"  basis {r['members']} sums to {r['sum']} (needs 1)")
    for r in d["context_violations"]:
        out.append(f"  context {r['members']} sums to {r['sum']} (exceeds 1)")
    return "\n".join(out) + "\n"


def _render_reconstruct(d: dict) -> str:
    out = [_title(d), f"origin: {d['origin']}", f"status: {d['status']}"]
    if d["density"] is not None:
        out.append("density operator:")
        out += ["  [" + ", ".join(row) + "]" for row in d["density"]]
    if "round_trip_exact" in d:
        out.append(f"matches source state exactly: {d['round_trip_exact']}")
    return "\n".join(out) + "\n"


def _render_evolve(d: dict) -> str:
    out = [_title(d), "unitary:"]
    out += ["  [" + ", ".join(row) + "]" for row in d["unitary"]]
    out.append("evolved state:")
    out += ["  [" + ", ".join(row) + "]" for row in d["evolved_state"]]
    rows = [{**r, "evolved_ray": "(" + ", ".join(r["evolved_ray"]) + ")"} for r in d["rows"]]
    out += _table(rows, ["id", "label", "value", "evolved_ray"])
    out.append(f"Born values invariant under joint evolution: {d['commutes']}")
    return "\n".join(out) + "\n"


def _render_heyting(d: dict) -> str:
    out = []
    for h in d["hosts"]:
        out.append(
            f"{h['host']}: {h['subgraphs']} subgraphs, {h['triples_checked']} triples; "
            f"adjunction {'holds' if h['adjunction_holds'] else 'FAILS'}; "
            f"distributive {h['distributive']}; closed form = brute force {h['closed_form_matches_brute_force']}; "
            f"excluded-middle failures {h['excluded_middle_failures']}; "
            f"double-negation failures {h['double_negation_failures']}"
        )
    if d["skipped"]:
        out.append(f"skipped {d['skipped']}")
    w = d["witness"]
    out.append(
        f"witness on {w['host']}: a = {w['a']}, not a = {w['not_a']}, a or not a = {w['a_or_not_a']} "
        f"(top = {w['top']}); excluded middle fails: {w['excluded_middle_fails']}; not not a = {w['not_not_a']}"
    )
    return "\n".join(out) + "\n"


def _render_dot(d: dict) -> str:
    return d["dot"]


_RENDERERS: dict[str, Callable[[dict], str]] = {
    "contexts": _render_contexts,
    "ks": _render_ks,
    "valuate": _render_valuate,
    "collapse": _render_collapse,
    "check-psa": _render_check_psa,
    "reconstruct": _render_reconstruct,
    "evolve": _render_evolve,
    "heyting-demo": _render_heyting,
    "export-dot": _render_dot,
}
