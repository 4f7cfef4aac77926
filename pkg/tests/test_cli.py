import io
import json
import subprocess
import sys

import pytest

from suturekit import SCHEMA
from suturekit.cli import main

from conftest import TREFOIL_PD


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    data = json.loads(text)
    assert data["schema"] == SCHEMA
    return code, data


def test_alexander_pretty():
    assert run("alexander", "--knot", "4_1", "--pretty") == (0, "-t + 3 - t^-1\n")


def test_alexander_json_from_pd_and_braid():
    _, a = run_json("alexander", "--pd", TREFOIL_PD)
    _, b = run_json("alexander", "--braid", "s1 s1 s1")
    assert a["alexander"] == b["alexander"] == {"-1": 1, "0": -1, "1": 1}


def test_repvar_trefoil():
    code, d = run_json("repvar", "--knot", "3_1", "--rng-seed", "7")
    assert code == 0
    assert d["n_irreducible"] == 1 and d["khi_dim_upper"] == 3
    assert d["status"] == "certified"
    assert len(d["classes"]) == 2
    assert all(len(img) == 4 for c in d["classes"] for img in c["images"])


def test_repvar_deterministic():
    a = run("repvar", "--knot", "5_2", "--rng-seed", "3", "--no-oracle")
    b = run("repvar", "--knot", "5_2", "--rng-seed", "3", "--no-oracle")
    assert a == b


def test_closure_knot_complement():
    code, d = run_json("closure", "--sutured", "knot-complement", "--aux-genus", "1")
    assert code == 0 and d["closure"]["genus_R_bar"] == 2


def test_closure_from_file(tmp_path):
    p = tmp_path / "r.json"
    p.write_text(json.dumps({"boundary_components": [[4, 1]], "chi_R_plus": -3, "chi_R_minus": -3}))
    _, d = run_json("closure", "--file", str(p), "--aux-genus", "1")
    assert d["closure"]["genus_R_bar"] == 3


def test_decompose_cli():
    code, d = run_json(
        "decompose", "--sutured", "product:1,1", "--kind", "product_annulus",
        "--flag", "d_plus_nonzero", "--flag", "d_minus_nonzero=true",
    )
    assert code == 0 and d["outputs"][0]["n_sutures"] == 3 and d["balanced"] == [True]
    code, _ = run("decompose", "--sutured", "knot-complement", "--kind", "horizontal", "--surface-chi", "-2")
    assert code == 2


def test_eigen_cli(tmp_path):
    code, d = run_json("eigen", "--model", "2")
    assert code == 0
    assert len(d["decomposition"]["blocks"]) == 6
    assert d["top_eigenspace_dim"] == 1 and d["spectrum_subset"]["ok"]
    from suturekit.eigen import build_model

    p = tmp_path / "f.json"
    p.write_text(json.dumps(build_model(3, 2, rng_seed=1).to_json()))
    _, d = run_json("eigen", "--file", str(p), "--geometric-model")
    assert d["top_eigenspace_dim"] == 2


def test_fibered_cli():
    code, d = run_json("fibered", "--knot", "3_1")
    assert code == 0 and d["report"]["verdicts"]["fibered"] == "yes"


def test_parse_cli():
    code, d = run_json("parse", "--pd", TREFOIL_PD)
    assert code == 0 and d["presentation"]["n_generators"] == 3
    assert d["genus_estimate"]["genus_upper"] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ("alexander",),
        ("alexander", "--knot", "3_1", "--pd", TREFOIL_PD),
        ("alexander", "--knot", "nope"),
        ("alexander", "--pd", "X[1,4,2,3];X[3,6,4,5];X[5,2,6,1]"),
        ("repvar", "--knot", "3_1", "--seeds", "0"),
        ("closure", "--aux-genus", "1"),
        ("frobnicate",),
        ("alexander", "--knot", "3_1", "--json", "--pretty"),
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_unknown_knot_lists_ids(capsys):
    run("alexander", "--knot", "nope")
    assert "3_1" in capsys.readouterr().err


def test_sweep_file_with_bad_row(tmp_path):
    p = tmp_path / "t.json"
    p.write_text(json.dumps([{"id": "3_1", "pd": TREFOIL_PD, "genus": 1}, {"id": "bad", "pd": "X[1]"}]))
    code, text = run("sweep", "--file", str(p), "--seeds", "512")
    lines = [json.loads(x) for x in text.splitlines()]
    assert code == 0
    assert [x["report"]["knot_id"] for x in lines if "report" in x] == ["3_1"]
    assert len([x for x in lines if "error" in x]) == 1
    assert lines[-1]["summary"]["n_errors"] == 1
    assert all(x["schema"] == SCHEMA for x in lines)


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "suturekit", "alexander", "--knot", "5_2", "--pretty"],
        capture_output=True, text=True, check=False,
    )
    assert r.returncode == 0 and r.stdout == "2t - 3 + 2t^-1\n"
