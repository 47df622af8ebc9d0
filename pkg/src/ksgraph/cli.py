"""Command-line entry point: ``ksgraph <subcommand> --scenario <path|dataset>``.

Exit status is 0 whenever the analysis completes, whatever the verdict; 2 on
I/O, parse, or precondition failures.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from ksgraph import commands
from ksgraph.errors import KSGraphError, ScenarioError
from ksgraph.linalg import Operator, RationalUnitary
from ksgraph.scenario import Scenario, dataset_names, dataset_path, load_scenario, parse_state

SUBCOMMANDS = (
    "contexts",
    "ks",
    "valuate",
    "collapse",
    "check-psa",
    "reconstruct",
    "evolve",
    "heyting-demo",
    "export-dot",
)


def _resolve_scenario(arg: str) -> Scenario:
    p = Path(arg)
    if not p.exists() and arg in dataset_names():
        p = dataset_path(arg)
    return load_scenario(p)


def _parse_unitary(text: str, dim: int) -> RationalUnitary:
    t = text.strip()
    p = Path(t)
    try:
        doc = json.loads(p.read_text(encoding="utf-8") if not t.startswith("[") and p.exists() else t)
    except (json.JSONDecodeError, OSError) as exc:
        raise ScenarioError(f"--unitary: {exc}") from None
    if not isinstance(doc, list) or len(doc) != dim:
        raise ScenarioError(f"--unitary: expected a {dim}x{dim} matrix of exact numbers")
    if any(isinstance(x, float) for row in doc for x in row):
        raise ScenarioError("--unitary: floats are not allowed; write entries as strings such as \"3/5\"")
    return RationalUnitary(Operator(doc))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", help="scenario JSON file or bundled dataset name")
    common.add_argument("--state", help="state JSON file, inline JSON, 'maximally-mixed', or coordinates 'a,b,...'")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--sequential", action="store_true", help="deterministic single-threaded run (the default)")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall time in JSON reports")

    parser = argparse.ArgumentParser(prog="ksgraph", description=__doc__.splitlines()[0])
    parser.add_argument("--list-datasets", action="store_true", help="print bundled dataset names and exit")
    sub = parser.add_subparsers(dest="command")
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "ks":
            sp.add_argument("--no-parity", action="store_true", help="skip the parity certificate, search only")
        if name == "evolve":
            sp.add_argument("--unitary", help="JSON matrix (inline or file); default is a 3-4-5 rotation")
        if name == "export-dot":
            sp.add_argument("--with-valuation", action="store_true", help="label nodes with intensive values")
    return parser


def run(args: argparse.Namespace) -> str:
    needs_scenario = args.command != "heyting-demo"
    sc = None
    if args.scenario:
        sc = _resolve_scenario(args.scenario)
    elif needs_scenario:
        raise ScenarioError(f"{args.command} needs --scenario")
    state = None
    if args.state:
        if sc is None or sc.dim is None:
            raise ScenarioError("--state needs a ray scenario")
        state = parse_state(args.state, sc.dim)

    start = time.perf_counter()
    cmd = args.command
    if cmd == "contexts":
        report = commands.cmd_contexts(sc)
    elif cmd == "ks":
        report = commands.cmd_ks(sc, use_parity=not args.no_parity)
    elif cmd == "valuate":
        report = commands.cmd_valuate(sc, state)
    elif cmd == "collapse":
        report = commands.cmd_collapse(sc, state)
    elif cmd == "check-psa":
        report = commands.cmd_check_psa(sc, state)
    elif cmd == "reconstruct":
        report = commands.cmd_reconstruct(sc, state)
    elif cmd == "evolve":
        u = _parse_unitary(args.unitary, sc.dim) if args.unitary and sc.dim else None
        report = commands.cmd_evolve(sc, state, u)
    elif cmd == "heyting-demo":
        report = commands.cmd_heyting_demo(sc)
    else:
        report = commands.cmd_export_dot(sc, state, with_valuation=args.with_valuation)
    if args.timing:
        report.data["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return report.render(args.format)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list_datasets:
        print("\n".join(dataset_names()))
        return 0
    if not args.command:
        parser.print_help(sys.stderr)
        return 2
    try:
        text = run(args)
    except KSGraphError as exc:
        print(f"ksgraph {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"ksgraph {args.command}: error: {args.output}: {exc.strerror}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
