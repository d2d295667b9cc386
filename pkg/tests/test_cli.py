import json
from fractions import Fraction

import pytest

from haraeq import dump_economy
from haraeq.certify import RULE_CUBIC_CROSS, RULE_TWO_TYPE_HARA
from haraeq.cli import main
from haraeq.sampling import random_two_type_ordered_economy

TODA_WALSH_DOC = """
{
  "a": 1, "b": 0, "gamma": 3,
  "types": [
    {"e": "1/49", "f": "48/49", "beta": 216},
    {"e": "48/49", "f": "1/49", "beta": "1/216"}
  ]
}
"""


@pytest.fixture
def tw_file(tmp_path):
    path = tmp_path / "tw.econ"
    path.write_text(TODA_WALSH_DOC)
    return str(path)


def test_solve_toda_walsh_human(tw_file, capsys):
    code = main(["solve", tw_file])
    out = capsys.readouterr().out
    assert code == 0
    assert "agreement: OK" in out
    assert "p=1/8" in out and "p=8" in out
    assert "verdict=three" in out


def test_solve_record_format(tw_file, tmp_path):
    out_path = tmp_path / "report.json"
    code = main(["solve", tw_file, "--format", "record", "--out", str(out_path)])
    assert code == 0
    rec = json.loads(out_path.read_text())
    assert rec["prices"] == ["1/8", "1", "8"]
    assert rec["agreement"]["ok"] is True
    assert rec["certificate"]["verdict"] == "three"
    assert rec["descartes_bound"] == 3


def test_certify_command(tw_file, capsys):
    assert main(["certify", tw_file]) == 0
    out = capsys.readouterr().out
    assert "verdict: three" in out
    assert "rule: crra-symmetric" in out


def test_bad_file_is_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.econ"
    bad.write_text("{ not json")
    assert main(["solve", str(bad)]) == 1
    assert "error:" in capsys.readouterr().err


def test_scan_range_env_override(tw_file, capsys, monkeypatch):
    # a window that excludes p = 1/8 and p = 8 hides two equilibria from
    # the oracle, so the routes must disagree and exit 2
    monkeypatch.setenv("HARA_EQ_SCAN_RANGE", "0.5:2.0")
    assert main(["solve", tw_file]) == 2
    out = capsys.readouterr().out
    assert "DISAGREE" in out and "extra-root" in out
    monkeypatch.setenv("HARA_EQ_SCAN_RANGE", "junk")
    assert main(["solve", tw_file]) == 1


def test_sweep_symmetric_grid(tmp_path, capsys):
    out_path = tmp_path / "phase.csv"
    code = main(["sweep", "--param", "alpha", "--from", "1/10", "--to", "9/10",
                 "--steps", "5", "--grid2d", "e:1/100:99/100:3",
                 "--out", str(out_path)])
    assert code == 0
    lines = out_path.read_text().strip().split("\n")
    assert lines[0] == "# schema=1"
    header = lines[1].split(",")
    assert header[:4] == ["param", "value", "param2", "value2"]
    rows = [dict(zip(header, ln.split(","))) for ln in lines[2:]]
    assert len(rows) == 15
    verdicts = {r["verdict"] for r in rows}
    assert "unique" in verdicts and "three" in verdicts
    # exact rational grid keeps exact deltas in the dataset
    assert all("/" in r["delta"] or r["delta"].lstrip("-").isdigit() for r in rows)


def test_sweep_deterministic_output(tmp_path):
    args = ["sweep", "--param", "e", "--from", "0.05", "--to", "0.95",
            "--steps", "7", "--alpha", "2/5"]
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(p1)]) == 0
    assert main(args + ["--out", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_sweep_intercept_threshold_flip(tmp_path):
    # sweeping b through the closed-form bound flips the fired rule at
    # exactly the threshold while the margin crosses zero
    import random
    econ = random_two_type_ordered_economy(random.Random(3))
    from haraeq.certify import certify_two_type_hara
    thr = certify_two_type_hara(econ).details["threshold"]
    base = tmp_path / "base.econ"
    dump_economy(econ, base)
    out_path = tmp_path / "bsweep.csv"
    code = main(["sweep", "--param", "b",
                 "--from", str(thr / 2), "--to", str(thr * 2),
                 "--steps", "4", "--econ", str(base), "--out", str(out_path)])
    assert code == 0
    lines = out_path.read_text().strip().split("\n")
    header = lines[1].split(",")
    rows = [dict(zip(header, ln.split(","))) for ln in lines[2:]]
    assert [r["verdict"] for r in rows] == ["unique"] * 4
    rules = [r["rule"] for r in rows]
    assert rules[0] == RULE_CUBIC_CROSS            # below the bound
    assert rules[-1] == RULE_TWO_TYPE_HARA         # above the bound
    margins = [dict(kv.split("=") for kv in r["margins"].split("|"))
               for r in rows]
    slack = [Fraction(m["intercept-threshold"]) for m in margins]
    assert slack[0] < 0 < slack[-1]
    assert slack == sorted(slack)


def test_sweep_requires_base_economy(capsys):
    assert main(["sweep", "--param", "b", "--from", "0", "--to", "1",
                 "--steps", "3"]) == 1
    assert "needs --econ" in capsys.readouterr().err


def test_reproduce_toda_walsh(capsys):
    assert main(["reproduce", "toda-walsh"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 4 and "FAIL" not in out


def test_reproduce_gamma_boundary(capsys):
    assert main(["reproduce", "gamma-boundary", "--c", "4",
                 "--trials", "5", "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert "gamma = 4/3" in out.replace("gamma=4/3", "gamma = 4/3")


def test_reproduce_critical_line(capsys, tmp_path):
    econ_out = tmp_path / "crit.econ"
    assert main(["reproduce", "critical-line", "--alpha", "4/5",
                 "--write-econ", str(econ_out)]) == 0
    out = capsys.readouterr().out
    assert "44/45" in out and "FAIL" not in out
    assert econ_out.exists()
    # the midline carries no critical point; the scenario says so and fails
    assert main(["reproduce", "critical-line", "--alpha", "1/2"]) == 2


def test_reproduce_unknown_scenario(capsys):
    assert main(["reproduce", "nope"]) == 1
    assert "unknown scenario" in capsys.readouterr().err


def test_near_critical_margin_is_flagged(tmp_path, capsys):
    # a whisker off the critical locus: the classification still lands
    # but the margin line warns how close the call was
    from haraeq.certify import CrraSymmetricSpec, critical_endowment
    alpha = Fraction(4, 5)
    e = critical_endowment(alpha) - Fraction(1, 10 ** 9)
    econ = CrraSymmetricSpec(alpha, e).to_economy()
    path = tmp_path / "near.econ"
    dump_economy(econ, path)
    assert main(["certify", str(path)]) == 0
    out = capsys.readouterr().out
    assert "verdict: unique" in out
    assert "[near boundary]" in out
