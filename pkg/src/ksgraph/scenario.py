"""JSON scenario files and the bundled datasets.

A scenario is either a ray frame (``dimension`` + ``rays``) or an abstract
graph (``graph``) for non-quantum demos. Numbers are always exact: JSON
integers or strings such as ``"3/4"``, ``"0.96"`` or ``"1/2-3i"``; JSON floats
are rejected. Unknown keys are rejected at every level.

Example::

    {
      "name": "qubit-pair",
      "dimension": 2,
      "field": "rational",
      "rays": [{"id": 1, "coords": ["1", "0"]}, {"id": 2, "coords": ["0", "1"]}],
      "state": {"pure": ["1", "0"]}
    }
"""

from __future__ import annotations

import json
import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Literal

from ksgraph.errors import KSGraphError, ScenarioError
from ksgraph.frames import Frame, OrthogonalityGraph, Ray, build_graph, resolve_bases
from ksgraph.linalg import DensityOperator, Operator, Vector
from ksgraph.scalar import Scalar, format_rational, parse_scalar
from ksgraph.valuations import IntensiveValuation, State

__all__ = [
    "Scenario",
    "load_scenario",
    "parse_scenario",
    "write_scenario",
    "scenario_to_dict",
    "parse_state",
    "state_to_json",
    "dataset_names",
    "dataset_path",
    "load_dataset",
]

Field = Literal["rational", "gaussian-rational"]

_TOP_KEYS = {"name", "description", "dimension", "field", "rays", "bases", "state", "graph", "valuation"}
_RAY_KEYS = {"id", "label", "coords"}
_GRAPH_KEYS = {"nodes", "edges", "cliques"}
_NODE_KEYS = {"id", "label"}
_STATE_KEYS = {"pure", "density", "maximally_mixed"}


@dataclass(frozen=True)
class Scenario:
    name: str
    graph: OrthogonalityGraph
    frame: Frame | None = None
    field: Field = "rational"
    state: State | None = dataclasses.field(default=None, compare=False)
    valuation: IntensiveValuation | None = None
    description: str = ""

    @property
    def dim(self) -> int | None:
        return self.frame.dim if self.frame is not None else None


def _fail(where: str, msg: str) -> ScenarioError:
    return ScenarioError(f"{where}: {msg}")


def _check_keys(obj: Any, allowed: set[str], where: str) -> dict:
    if not isinstance(obj, dict):
        raise _fail(where, f"expected an object, got {type(obj).__name__}")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise _fail(where, f"unknown field(s) {unknown}")
    return obj


def _number(value: Any, where: str, fld: Field) -> Scalar:
    if isinstance(value, bool) or isinstance(value, float):
        raise _fail(where, f"floats are not allowed, write {value!r} as a string")
    if isinstance(value, int):
        return Scalar(value)
    if not isinstance(value, str):
        raise _fail(where, f"expected a number string, got {type(value).__name__}")
    try:
        s = parse_scalar(value)
    except ValueError as exc:
        raise _fail(where, str(exc)) from None
    if fld == "rational" and s.im:
        raise _fail(where, f"complex entry {value!r} in a rational scenario")
    return s


def _rational(value: Any, where: str) -> Fraction:
    s = _number(value, where, "rational")
    return s.re


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise _fail(where, f"expected an integer, got {value!r}")
    return value


def _state_from_json(obj: Any, dim: int, fld: Field, where: str) -> State:
    obj = _check_keys(obj, _STATE_KEYS, where)
    if len(obj) != 1:
        raise _fail(where, "give exactly one of 'pure', 'density', 'maximally_mixed'")
    try:
        if "pure" in obj:
            coords = obj["pure"]
            if not isinstance(coords, list) or len(coords) != dim:
                raise _fail(f"{where}.pure", f"expected {dim} coordinates")
            v = Vector(_number(c, f"{where}.pure[{k}]", fld) for k, c in enumerate(coords))
            if v.is_zero():
                raise _fail(f"{where}.pure", "zero state vector")
            return v
        if "density" in obj:
            rows = obj["density"]
            if not isinstance(rows, list) or len(rows) != dim or any(
                not isinstance(r, list) or len(r) != dim for r in rows
            ):
                raise _fail(f"{where}.density", f"expected a {dim}x{dim} matrix")
            return DensityOperator(
                Operator(
                    [[_number(x, f"{where}.density[{i}][{j}]", fld) for j, x in enumerate(r)] for i, r in enumerate(rows)]
                )
            )
        if obj["maximally_mixed"] is not True:
            raise _fail(f"{where}.maximally_mixed", "must be true")
        return DensityOperator.maximally_mixed(dim)
    except ScenarioError:
        raise
    except KSGraphError as exc:
        raise _fail(where, str(exc)) from None


def parse_scenario(doc: Any, *, name: str = "scenario") -> Scenario:
    """Validate a decoded JSON document and build the scenario."""
    doc = _check_keys(doc, _TOP_KEYS, "scenario")
    name = doc.get("name", name)
    fld = doc.get("field", "rational")
    if fld not in ("rational", "gaussian-rational"):
        raise _fail("field", f"expected 'rational' or 'gaussian-rational', got {fld!r}")
    has_rays = "rays" in doc
    has_graph = "graph" in doc
    if has_rays == has_graph:
        raise _fail("scenario", "give exactly one of 'rays' (with 'dimension') or 'graph'")

    frame: Frame | None = None
    state: State | None = None
    if has_rays:
        if "dimension" not in doc:
            raise _fail("dimension", "required alongside 'rays'")
        dim = _int(doc["dimension"], "dimension")
        if dim < 1:
            raise _fail("dimension", "must be positive")
        if not isinstance(doc["rays"], list):
            raise _fail("rays", "expected a list")
        rays = []
        for k, r in enumerate(doc["rays"]):
            where = f"rays[{k}]"
            r = _check_keys(r, _RAY_KEYS, where)
            if "id" not in r or "coords" not in r:
                raise _fail(where, "'id' and 'coords' are required")
            coords = r["coords"]
            if not isinstance(coords, list) or len(coords) != dim:
                raise _fail(f"{where}.coords", f"expected {dim} coordinates")
            vec = Vector(_number(c, f"{where}.coords[{j}]", fld) for j, c in enumerate(coords))
            if vec.is_zero():
                raise _fail(f"{where}.coords", "zero vector is not a ray")
            label = r.get("label")
            if label is not None and not isinstance(label, str):
                raise _fail(f"{where}.label", "expected a string")
            rays.append(Ray(_int(r["id"], f"{where}.id"), vec, label))
        bases = None
        if "bases" in doc:
            if not isinstance(doc["bases"], list):
                raise _fail("bases", "expected a list of id lists")
            parsed = []
            for k, b in enumerate(doc["bases"]):
                if not isinstance(b, list):
                    raise _fail(f"bases[{k}]", "expected a list of ray ids")
                parsed.append(tuple(_int(i, f"bases[{k}][{j}]") for j, i in enumerate(b)))
            bases = tuple(parsed)
        try:
            frame = Frame(dim, tuple(rays), bases)
            graph = build_graph(frame)
            if bases is not None:
                resolve_bases(frame, graph)
        except KSGraphError as exc:
            raise _fail("rays" if bases is None else "bases", str(exc)) from None
        if "state" in doc:
            state = _state_from_json(doc["state"], dim, fld, "state")
    else:
        for key in ("dimension", "bases", "state"):
            if key in doc:
                raise _fail(key, "only meaningful for ray scenarios")
        graph = _graph_from_json(doc["graph"])

    valuation = None
    if "valuation" in doc:
        valuation = _valuation_from_json(doc["valuation"], graph)
    return Scenario(
        name=name,
        graph=graph,
        frame=frame,
        field=fld,
        state=state,
        valuation=valuation,
        description=doc.get("description", ""),
    )


def _graph_from_json(obj: Any) -> OrthogonalityGraph:
    obj = _check_keys(obj, _GRAPH_KEYS, "graph")
    if "nodes" not in obj or not isinstance(obj["nodes"], list):
        raise _fail("graph.nodes", "required list of nodes")
    ids: list[int] = []
    labels: dict[int, str] = {}
    for k, n in enumerate(obj["nodes"]):
        n = _check_keys(n, _NODE_KEYS, f"graph.nodes[{k}]")
        i = _int(n.get("id"), f"graph.nodes[{k}].id")
        if i in labels or i in ids:
            raise _fail(f"graph.nodes[{k}].id", f"duplicate node id {i}")
        ids.append(i)
        if "label" in n:
            labels[i] = str(n["label"])
    edges: list[tuple[int, int]] = []
    for k, e in enumerate(obj.get("edges", [])):
        if not isinstance(e, list) or len(e) != 2:
            raise _fail(f"graph.edges[{k}]", "expected a pair of node ids")
        edges.append((_int(e[0], f"graph.edges[{k}][0]"), _int(e[1], f"graph.edges[{k}][1]")))
    for k, c in enumerate(obj.get("cliques", [])):
        if not isinstance(c, list):
            raise _fail(f"graph.cliques[{k}]", "expected a list of node ids")
        members = [_int(x, f"graph.cliques[{k}]") for x in c]
        edges.extend((u, v) for i, u in enumerate(members) for v in members[i + 1 :])
    known = set(ids)
    for u, v in edges:
        if u not in known or v not in known:
            raise _fail("graph", f"edge ({u}, {v}) references an unknown node")
    return OrthogonalityGraph.from_edges(ids, edges, labels)


def _valuation_from_json(obj: Any, graph: OrthogonalityGraph) -> IntensiveValuation:
    if not isinstance(obj, dict):
        raise _fail("valuation", "expected an object mapping node ids to values")
    values: dict[int, Fraction] = {}
    for key, val in obj.items():
        try:
            i = int(key)
        except ValueError:
            raise _fail("valuation", f"key {key!r} is not a node id") from None
        if i not in graph.adjacency:
            raise _fail("valuation", f"unknown node id {i}")
        q = _rational(val, f"valuation[{key}]")
        if not 0 <= q <= 1:
            raise _fail(f"valuation[{key}]", f"{val} is outside [0, 1]")
        values[i] = q
    missing = sorted(set(graph.nodes) - set(values))
    if missing:
        raise _fail("valuation", f"missing values for nodes {missing}")
    return IntensiveValuation(values, origin="loaded")


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"{path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return parse_scenario(doc, name=path.stem)
    except ScenarioError as exc:
        raise ScenarioError(f"{path}: {exc}") from None


# ----------------------------------------------------------------------------
# writing


def _vector_json(v: Vector) -> list[str]:
    return [str(x) for x in v.entries]


def state_to_json(state: State) -> dict:
    if isinstance(state, Vector):
        return {"pure": _vector_json(state)}
    return {"density": [[str(x) for x in row] for row in state.op.rows]}


def scenario_to_dict(sc: Scenario) -> dict:
    doc: dict[str, Any] = {"name": sc.name}
    if sc.description:
        doc["description"] = sc.description
    doc["field"] = sc.field
    if sc.frame is not None:
        doc["dimension"] = sc.frame.dim
        rays = []
        for r in sc.frame.rays:
            entry: dict[str, Any] = {"id": r.id}
            if r.label is not None:
                entry["label"] = r.label
            entry["coords"] = _vector_json(r.coords)
            rays.append(entry)
        doc["rays"] = rays
        if sc.frame.declared_bases is not None:
            doc["bases"] = [list(b) for b in sc.frame.declared_bases]
        if sc.state is not None:
            doc["state"] = state_to_json(sc.state)
    else:
        nodes = []
        for u in sc.graph.nodes:
            entry = {"id": u}
            if u in sc.graph.labels:
                entry["label"] = sc.graph.labels[u]
            nodes.append(entry)
        doc["graph"] = {"nodes": nodes, "edges": [list(e) for e in sc.graph.edges()]}
    if sc.valuation is not None:
        doc["valuation"] = {str(k): format_rational(v) for k, v in sc.valuation.assignment.items()}
    return doc


def write_scenario(sc: Scenario | Frame, path: str | Path) -> None:
    if isinstance(sc, Frame):
        fld: Field = "rational" if all(x.is_real for r in sc.rays for x in r.coords) else "gaussian-rational"
        sc = Scenario(name=Path(path).stem, graph=build_graph(sc), frame=sc, field=fld)
    Path(path).write_text(json.dumps(scenario_to_dict(sc), indent=2) + "\n", encoding="utf-8")


# ----------------------------------------------------------------------------
# states given on the command line


def parse_state(text: str, dim: int) -> State:
    """State from a JSON file path, inline JSON, ``maximally-mixed`` or ``a,b,c``."""
    t = text.strip()
    p = Path(t)
    if t and not t.startswith("{") and p.exists():
        try:
            doc = json.loads(p.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"{p}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        return _state_from_json(doc, dim, "gaussian-rational", str(p))
    if t.startswith("{"):
        try:
            doc = json.loads(t)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"--state: {exc.msg}") from None
        return _state_from_json(doc, dim, "gaussian-rational", "--state")
    if t in ("maximally-mixed", "mixed", f"I/{dim}"):
        return DensityOperator.maximally_mixed(dim)
    parts = [x for x in t.replace(" ", "").strip("()").split(",") if x]
    return _state_from_json({"pure": parts}, dim, "gaussian-rational", "--state")


# ----------------------------------------------------------------------------
# bundled datasets

_DATASETS = ("cabello18", "qubit-pair", "single-basis-d3", "qubit-tomography", "powers-table")


def dataset_names() -> tuple[str, ...]:
    return _DATASETS


def dataset_path(name: str) -> Path:
    if name not in _DATASETS:
        raise ScenarioError(f"unknown dataset {name!r}; choose from {', '.join(_DATASETS)}")
    return Path(str(resources.files("ksgraph") / "datasets" / f"{name}.json"))


def load_dataset(name: str) -> Scenario:
    return load_scenario(dataset_path(name))

