import json

import pytest

from nilsoliton.cli import main


def test_list_spaces(capsys):
    assert main(["list-spaces"]) == 0
    out = capsys.readouterr().out.split()
    assert "so23" in out and "split:G2" in out


def test_check_json(capsys):
    assert main(["check", "--space", "sl4r", "--xi", "alpha1=s2/2,alpha3=s2/2", "--json"]) == 0
    v = json.loads(capsys.readouterr().out)
    assert v["is_soliton"] and v["c"] == "-1/8" and v["paths_agree"]


def test_check_float(capsys):
    assert main(["check", "--space", "so23", "--xi", "alpha1=1/2,alpha2=s3/2", "--float"]) == 0
    assert "mode float" in capsys.readouterr().out


def test_check_fallback_note(capsys):
    assert main(["check", "--space", "sl4r", "--xi", "alpha1=1/2,alpha2=s2/3,alpha3=s3/4", "--exact"]) == 0
    assert "float" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["check", "--space", "nope", "--xi", "alpha1=1"],
                                  ["check", "--space", "sl3r", "--xi", "alpha4=1"],
                                  ["check", "--space", "sl2r", "--xi", "alpha1=1"]])
def test_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "error:" in capsys.readouterr().err


def test_classify(capsys):
    assert main(["classify", "--space", "so23", "--grid", "2", "--json"]) == 0
    recs = json.loads(capsys.readouterr().out)
    assert len(recs) == 3 and all(r["is_soliton"] for r in recs)


def test_verify(capsys):
    assert main(["verify", "--space", "so23", "--samples", "10"]) == 0
    assert "identities hold on so23" in capsys.readouterr().out
