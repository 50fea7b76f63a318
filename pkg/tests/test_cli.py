import io
import json

import pytest

from krthin.cli import CSV_COLUMNS, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_invariants_trefoil():
    code, text = run("invariants", "--pq", "3", "1", "--format", "json")
    row = json.loads(text)
    assert code == 0
    assert (row["det"], row["sigma"], row["Det"]) == (3, 2, [-3, 0])
    assert row["thin_verdict"] == "thin"


def test_invariants_unknot_plain():
    code, text = run("invariants", "--pq", "1", "0")
    assert code == 0 and "det: 1" in text and "homfly: 1" in text


def test_invariants_theta(tmp_path):
    pd = tmp_path / "theta.pd"
    pd.write_text("S[1,1,2,2]\n")
    code, text = run("invariants", "--pd", str(pd), "--format", "json")
    assert code == 0 and json.loads(text)["Det"] == [1, 0]


def test_invariants_cf_matches_pq():
    assert run("invariants", "--cf", "2,3", "--format", "json")[1] == run("invariants", "--pq", "7", "3", "--format", "json")[1]


def test_csv_sweep_schema():
    code, text = run("invariants", "--sweep", "7", "--format", "csv")
    lines = text.splitlines()
    assert code == 0
    assert lines[0].split(",") == CSV_COLUMNS
    # classes per p = 1..7, even p counted once per orientation
    assert len(lines) - 1 == 1 + 2 + 2 + 4 + 3 + 4 + 4


def test_hkr_trefoil():
    code, text = run("hkr", "--pq", "3", "1", "--N", "5", "--format", "json")
    row = json.loads(text)
    assert code == 0
    assert row["poincare_text"] == "q^8 + q^12*t^-2 + q^20*t^-3"
    assert row["euler_check"] and row["dimension_check"]


def test_hkr_unreduced_figure_eight():
    code, text = run("hkr", "--pq", "5", "2", "--N", "5", "--unreduced", "--format", "json")
    u = json.loads(text)["unreduced"]
    assert code == 0 and u["family"] == "4_1" and u["dimension"] == 21


def test_hkr_gate():
    assert run("hkr", "--pq", "2", "1", "--N", "3")[0] == 4
    assert run("hkr", "--pq", "2", "1", "--N", "3", "--conjectural")[0] == 0


def test_hkr_not_thin(data_dir):
    code, text = run("hkr", "--pd", str(data_dir / "8_19.pd"), "--N", "5", "--format", "json")
    row = json.loads(text)
    assert code == 0 and row["thin_verdict"] == "not thin" and row["poincare"] is None


def test_invalid_inputs(tmp_path):
    assert run("certify", "--pq", "0", "0", "--N", "5", "--out", str(tmp_path))[0] == 2
    assert run("invariants", "--pq", "4", "6")[0] == 2
    assert run("invariants", "--pd", str(tmp_path / "missing.pd"))[0] == 2
    assert run("invariants")[0] == 2
    assert run("invariants", "--pq", "3", "1", "--orientation", "1")[0] == 2


def test_resource_limit():
    assert run("invariants", "--pq", "89", "34", "--node-budget", "3")[0] == 3


def test_certify_writes_and_verifies(tmp_path):
    code, text = run("certify", "--pq", "5", "2", "--N", "5", "--out", str(tmp_path), "--verify", "--format", "json")
    rep = json.loads(text)
    assert code == 0
    assert rep["summary"] == {"N": 5, "failed": 0, "produced": 1, "verified": 1}
    cert = json.loads((tmp_path / "K5_2.json").read_text())
    assert set(cert) >= {"kind", "link", "det", "sigma", "twice_lk", "N", "shifts", "children"}


def test_certify_sweep(tmp_path):
    code, text = run("certify", "--sweep", "9", "--N", "5", "--out", str(tmp_path))
    assert code == 0
    produced = len(list(tmp_path.iterdir()))
    assert text.strip() == f"produced {produced}, verified {produced}, failed 0"


def test_output_byte_stable_and_cache_neutral(tmp_path):
    args = ("invariants", "--sweep", "9", "--format", "csv")
    plain = run(*args)[1]
    cold = run(*args, "--cache-dir", str(tmp_path))[1]
    warm = run(*args, "--cache-dir", str(tmp_path))[1]
    assert plain == cold == warm
    assert any(tmp_path.iterdir())
