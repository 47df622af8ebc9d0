import json
import re
from fractions import Fraction

import pytest

from ksgraph import commands
from ksgraph.cli import SUBCOMMANDS, main
from ksgraph.dot import export_dot, gray_fill
from ksgraph.frames import Frame
from ksgraph.linalg import DensityOperator
from ksgraph.scenario import dataset_names, load_dataset, write_scenario
from ksgraph.valuations import born_giv


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ks_report(capsys):
    code, out, _ = run(capsys, "ks", "--scenario", "cabello18")
    assert code == 0
    assert "UNSATISFIABLE (parity certificate: 9 bases, all multiplicities even)" in out


def test_ks_no_parity_still_unsat_and_exit_zero(capsys):
    code, out, _ = run(capsys, "ks", "--scenario", "cabello18", "--no-parity")
    assert code == 0
    assert re.search(r"UNSATISFIABLE \(search exhausted: \d+ nodes, \d+ branches\)", out)


def test_satisfiable_verdict_exit_zero(capsys):
    code, out, _ = run(capsys, "ks", "--scenario", "single-basis-d3")
    assert code == 0 and "SATISFIABLE (witness ones: [1])" in out


def test_valuate_cabello_mixed(capsys):
    code, out, _ = run(capsys, "valuate", "--scenario", "cabello18", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["values"]) == 18
    assert {row["value"] for row in data["values"]} == {"1/4"}
    assert len(data["basis_sums"]) == 9 and {row["sum"] for row in data["basis_sums"]} == {"1"}


def test_contexts_single_basis(capsys):
    code, out, _ = run(capsys, "contexts", "--scenario", "single-basis-d3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["contexts"]) == 1 and data["contexts"][0]["basis"] is True


def test_missing_state_is_an_error(capsys, tmp_path):
    p = tmp_path / "nostate.json"
    write_scenario(Frame.from_coords([(1, 0), (0, 1)]), p)
    for cmd in ("valuate", "evolve"):
        code, out, err = run(capsys, cmd, "--scenario", str(p))
        assert code == 2 and out == ""
        assert "state" in err


def test_operational_errors_exit_two(capsys, tmp_path):
    assert run(capsys, "ks", "--scenario", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "contexts", "--scenario", str(bad))[0] == 2
    assert run(capsys, "ks")[0] == 2
    nobasis = tmp_path / "nobasis.json"
    write_scenario(Frame.from_coords([(1, 0), (1, 1)]), nobasis)
    code, _, err = run(capsys, "ks", "--scenario", str(nobasis))
    assert code == 2 and "nothing to valuate against" in err


def test_check_psa_powers_table_is_not_psa(capsys):
    code, out, _ = run(capsys, "check-psa", "--scenario", "powers-table", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["is_psa"] is False


def test_reconstruct_statuses(capsys):
    data = json.loads(run(capsys, "reconstruct", "--scenario", "qubit-tomography", "--format", "json")[1])
    assert data["status"] == "unique"
    data = json.loads(run(capsys, "reconstruct", "--scenario", "cabello18", "--format", "json")[1])
    assert data["status"] == "underdetermined"


def test_evolve_custom_unitary(capsys):
    code, out, _ = run(
        capsys, "evolve", "--scenario", "qubit-pair", "--unitary", '[["0","1"],["1","0"]]', "--format", "json"
    )
    assert code == 0 and json.loads(out)["commutes"] is True
    code, _, err = run(capsys, "evolve", "--scenario", "qubit-pair", "--unitary", '[["1","1"],["0","1"]]')
    assert code == 2 and "unitary" in err.lower()


def test_heyting_demo(capsys):
    code, out, _ = run(capsys, "heyting-demo", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert all(h["adjunction_holds"] and h["distributive"] and h["closed_form_matches_brute_force"] for h in data["hosts"])
    assert data["witness"]["host"] == "K2" and data["witness"]["excluded_middle_fails"] is True


def test_output_flag(capsys, tmp_path):
    p = tmp_path / "r.txt"
    code, out, _ = run(capsys, "ks", "--scenario", "cabello18", "--output", str(p))
    assert code == 0 and out == ""
    assert "UNSATISFIABLE" in p.read_text()


def test_list_datasets(capsys):
    code, out, _ = run(capsys, "--list-datasets")
    assert code == 0 and out.split() == list(dataset_names())


def test_timing_only_on_request(capsys):
    plain = json.loads(run(capsys, "ks", "--scenario", "cabello18", "--format", "json")[1])
    timed = json.loads(run(capsys, "ks", "--scenario", "cabello18", "--format", "json", "--timing")[1])
    assert "elapsed_ms" not in plain and "elapsed_ms" in timed


def test_text_and_json_from_one_result():
    rep = commands.cmd_ks(load_dataset("cabello18"))
    assert json.loads(rep.to_json())["summary"] in rep.to_text()


def test_every_subcommand_on_every_dataset(capsys):
    for name in dataset_names():
        for cmd in SUBCOMMANDS:
            code, out, err = run(capsys, cmd, "--scenario", name)
            if code:
                # only precondition failures are allowed, never crashes
                assert err.startswith(f"ksgraph {cmd}: error:"), (name, cmd, err)
            else:
                assert out


# --- DOT export -----------------------------------------------------------------


def test_dot_cabello_structure(cabello):
    dot = export_dot(cabello)
    assert len(re.findall(r"^  n\d+ \[", dot, re.M)) == 18
    assert len(re.findall(r"^  n\d+ -- n\d+;", dot, re.M)) == 63
    assert len(re.findall(r"subgraph cluster_ctx\d+ \{", dot)) == 9
    assert 'label="ctx0"' in dot and 'label="ctx8"' in dot


def test_dot_intensive_labels(cabello):
    dot = export_dot(cabello, giv=born_giv(cabello, DensityOperator.maximally_mixed(4)))
    labels = re.findall(r'^  n\d+ \[label="([^"]+)"', dot, re.M)
    assert labels == ["1/4"] * 18
    assert dot.count(f'fillcolor="{gray_fill(Fraction(1, 4))}"') == 18


def test_dot_edgeless_frame():
    dot = export_dot(Frame.from_coords([(1, 0), (1, 1)]))
    assert "--" not in dot and "cluster" not in dot
    assert dot.count("[label=") == 2


def test_gray_fill_extremes():
    assert gray_fill(0) == "#ffffff"
    assert gray_fill(1) == "#000000"


def test_dot_cli_with_valuation(capsys):
    code, out, _ = run(capsys, "export-dot", "--scenario", "cabello18", "--with-valuation")
    assert code == 0 and out.startswith('graph "cabello18" {')
    assert out.count('label="1/4"') == 18


@pytest.mark.parametrize("fmt", ["text", "json"])
def test_reports_end_with_newline(capsys, fmt):
    out = run(capsys, "contexts", "--scenario", "cabello18", "--format", fmt)[1]
    assert out.endswith("\n")
