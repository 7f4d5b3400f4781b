import json

import pytest

from outerlorentz import setting3
from outerlorentz.campaign import CLAIMS, CampaignConfig, dumps, run_campaign
from outerlorentz.cli import main


@pytest.fixture
def s3_path(tmp_path):
    path = tmp_path / "s3.json"
    path.write_text(json.dumps(setting3().to_json()))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr()


def test_norm(capsys, s3_path):
    code, out = run(capsys, ["norm", "--setting", s3_path, "--f", "2,1,0", "--p", "1", "--q", "inf"])
    assert code == 0
    doc = json.loads(out.out)
    assert doc["value"] == 2.0 and doc["schema"] == 1
    assert doc["profile"]["breakpoints"] == [[0.0, 1.0], [2.0, 0.0]]


def test_norm_usage_errors(capsys, s3_path):
    assert run(capsys, ["norm", "--setting", s3_path, "--f", "2,1", "--p", "1"])[0] == 2
    assert run(capsys, ["norm", "--f", "2,1,0", "--p", "1"])[0] == 2
    assert run(capsys, ["norm", "--setting", s3_path, "--f", "a,b,c", "--p", "1"])[0] == 2
    assert run(capsys, ["norm", "--setting", "/nonexistent.json", "--f", "1,1,1", "--p", "1"])[0] == 2
    assert run(capsys, ["nosuch"])[0] == 2


def test_profile_and_window_size(capsys, tmp_path):
    F = tmp_path / "F.json"
    F.write_text(json.dumps([{"m": 0, "n": 0, "l": 0, "value": 1.0}]))
    code, out = run(capsys, ["profile", "--size", "size2star:0", "--f", str(F), "--J", "0,0", "--fmax", "2"])
    assert code == 0
    assert json.loads(out.out)["terminal_lambda"] == 1.0


def test_characterize(capsys, s3_path):
    code, out = run(capsys, ["characterize", "--setting", s3_path, "--f", "2,1,0", "--p", "2", "--r", "1",
                             "--stated-constants"])
    assert code == 0 and json.loads(out.out)["report"]["passed"]
    assert run(capsys, ["characterize", "--setting", s3_path, "--f", "2,1,0", "--p", "inf"])[0] == 0
    assert run(capsys, ["characterize", "--setting", s3_path, "--f", "2,1,0", "--p", "1", "--a", "1"])[0] == 0


def test_verify_exit_codes(capsys, tmp_path):
    assert run(capsys, ["verify", "--claim", "bogus"])[0] == 2
    out_file = tmp_path / "rep.json"
    csv_file = tmp_path / "rep.csv"
    code, _ = run(capsys, ["verify", "--claim", "thm-second", "--trials", "100", "--seed", "1",
                           "--out", str(out_file), "--csv", str(csv_file)])
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert doc["summary"]["passed"] == 100
    assert len(csv_file.read_text().splitlines()) == 101


def test_verify_failure_exit(capsys):
    code, _ = run(capsys, ["verify", "--claim", "prop-3-9", "--trials", "20"])
    assert code == 1


def test_counterexample(capsys):
    code, out = run(capsys, ["counterexample", "--m", "16", "--r", "1", "--p", "1"])
    doc = json.loads(out.out)
    assert code == 0 and doc["weak_norm"] == 16 and doc["K_double_prime"] <= 1


def test_heisenberg(capsys, tmp_path):
    F = tmp_path / "F.json"
    F.write_text(json.dumps([{"m": 0, "n": 0, "l": 0, "value": 2.0}, {"m": 0, "n": 1, "l": 0, "value": 1.0}]))
    base = ["heisenberg", "--J", "0,0", "--fmax", "2", "--F", str(F)]
    assert run(capsys, base)[0] == 0
    for check in ("x-norm", "alpha", "window"):
        code, out = run(capsys, base + ["--check", check])
        assert code == 0 and "window" in json.loads(out.out)
    assert run(capsys, ["heisenberg", "--J", "zero", "--F", str(F)])[0] == 2


def test_random_setting(capsys, tmp_path):
    code, out = run(capsys, ["random-setting", "--seed", "4"])
    again = run(capsys, ["random-setting", "--seed", "4"])[1]
    assert code == 0 and out.out == again.out
    assert json.loads(out.out)["omega"]


@pytest.mark.parametrize("claim", sorted(CLAIMS))
def test_campaign_thread_determinism(claim):
    docs = []
    for threads in (1, 3):
        cfg = CampaignConfig(claim=claim, trials=6, max_points=5, seed=7, threads=threads)
        reports, summary = run_campaign(cfg)
        docs.append(dumps({"summary": summary, "reports": [r.to_dict() for r in reports]}))
    assert docs[0] == docs[1]


def test_campaign_config_guards():
    with pytest.raises(KeyError):
        CampaignConfig(claim="nope")
    with pytest.raises(ValueError):
        CampaignConfig(claim="thm-second", trials=0)
    with pytest.raises(ValueError):
        CampaignConfig(claim="thm-second", max_points=40)


def test_verify_fixed_window(capsys, tmp_path):
    out_file = tmp_path / "w.json"
    code, _ = run(capsys, ["verify", "--claim", "corollary", "--window", "0,0,-1,2,0", "--trials", "5",
                           "--out", str(out_file)])
    assert code == 0
    assert json.loads(out_file.read_text())["config"]["extra"]["window"] == [0, 0, -1, 2.0, 0]
    assert run(capsys, ["verify", "--claim", "corollary", "--window", "0,0"])[0] == 2
    assert run(capsys, ["verify", "--claim", "corollary", "--window", "0,5,-5,9,0"])[0] == 2
