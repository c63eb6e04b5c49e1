import json

import pytest

from qschub.cli import main, parse_config, PreconditionError


def test_lp_table(capsys):
    assert main(["lp", "--type", "A2", "--word", "1,2,1"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 6  # one row per interval element


def test_lp_json_schema(tmp_path, capsys):
    path = tmp_path / "lp.json"
    assert main(["lp", "--type", "A2", "--word", "1,2,1", "--out", str(path)]) == 0
    data = json.loads(path.read_text())
    assert data["word"] == [1, 2, 1]
    pairs = {p["y"]: p["lp"] for p in data["pairs"]}
    assert pairs["e"] == []
    assert pairs["s1"] == [1]
    assert pairs["s1.s2.s1"] == [1, 2, 3]


def test_non_reduced_word_is_exit_2(capsys):
    assert main(["lp", "--type", "A2", "--word", "1,1"]) == 2
    assert main(["roots", "--type", "A9", "--word", "1"]) == 2
    assert main(["verify", "main1b", "--type", "A2", "--word", "2,2"]) == 2


def test_bruhat_command(capsys):
    assert main(["bruhat", "--type", "A2", "--y", "1", "--w", "1,2,1"]) == 0
    assert "true" in capsys.readouterr().out
    assert main(["bruhat", "--type", "A2", "--y", "1,2", "--w", "2,1"]) == 0
    assert "false" in capsys.readouterr().out


def test_roots_command(tmp_path):
    path = tmp_path / "roots.json"
    assert main(["roots", "--type", "A2", "--word", "1,2,1", "--out", str(path)]) == 0
    data = json.loads(path.read_text())
    assert data["betas"] == [[1, 0], [1, 1], [0, 1]]


def test_minor_command(capsys):
    assert main(["minor", "--type", "A1", "--word", "1", "--j", "1"]) == 0
    out = capsys.readouterr().out
    assert "-q + q^[-1]" in out
    assert main(["minor", "--type", "A1", "--word", "1", "--j", "5"]) == 2


def test_verify_main1b_cli(capsys):
    assert main(["verify", "main1b", "--type", "A1", "--word", "1"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_dd_run_emits_stages(tmp_path, capsys):
    path = tmp_path / "stages.json"
    assert main(["dd-run", "--type", "A2", "--word", "1,2,1",
                 "--emit", str(path)]) == 0
    data = json.loads(path.read_text())
    assert [s["stage"] for s in data["stages"]] == [3, 2]
    assert "rel 3 1" in data["relation_table"]


def test_parse_config():
    cfg = parse_config("""
        # a comment
        out = r.json
        bound = 6
        case = A1 : 1 : main1b,main2
        case = A3 : all<=6 : main1b
    """)
    assert cfg["bound"] == "6"
    assert cfg["cases"][0] == {"type": "A1", "word": "1",
                               "checks": ["main1b", "main2"]}
    assert cfg["cases"][1]["word"] == "all<=6"
    with pytest.raises(PreconditionError):
        parse_config("case = A1 : 1")


def test_campaign_runs_and_reproduces(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text(
        "bound = 4\n"
        "case = A1 : 1 : main1b,main2\n"
        "case = A2 : 2,1 : main1b\n")
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert main(["campaign", "--config", str(cfg), "--out", str(out1)]) == 0
    assert main(["campaign", "--config", str(cfg), "--out", str(out2)]) == 0
    assert out1.read_text() == out2.read_text()
    data = json.loads(out1.read_text())
    assert data["ok"] is True
    assert len(data["results"]) == 3
    assert all(r["ok"] for r in data["results"])
    assert any("rel" in r["relation_table"] or r["relation_table"].startswith("gens")
               for r in data["results"])


def test_package_surface_imports():
    import qschub
    assert qschub.__version__
    assert callable(qschub.verify_main1b)
    assert callable(qschub.lp_index_set)


def test_lp_poset_export(tmp_path):
    path = tmp_path / "poset.json"
    assert main(["lp", "--type", "A2", "--word", "1,2,1", "--json",
                 "--poset", str(path)]) == 0
    data = json.loads(path.read_text())
    assert len(data["nodes"]) == 6
    assert len(data["edges"]) == 8


def test_verify_gk_and_normality_cli(capsys):
    assert main(["verify", "gk", "--type", "A1", "--word", "1",
                 "--bound", "6"]) == 0
    assert main(["verify", "normality", "--type", "A1", "--word", "1",
                 "--bound", "4"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 2


def test_verify_report_out(tmp_path):
    path = tmp_path / "m2.json"
    assert main(["verify", "main2", "--type", "A1", "--word", "1",
                 "--bound", "4", "--out", str(path)]) == 0
    data = json.loads(path.read_text())
    assert data["ok"] is True
    assert {c["y"]: c["cd"] for c in data["cases"]} == {"e": [], "s1": [1]}
