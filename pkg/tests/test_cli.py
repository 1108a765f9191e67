import json

import pytest

import cli


def test_construct_text(capsys):
    assert cli.main(["construct", "--q", "2", "--n", "3", "--r-tuple", "0,2"]) == 0
    out = capsys.readouterr().out
    assert "f = x^6+x^5+x^3" in out
    assert "r_list: [0;2]" in out


def test_construct_h_family_json(capsys):
    assert cli.main(["construct", "--q", "2", "--n", "5", "--h-family", "--out", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["profile"]["r_list"] == [0, 3]
    assert data["profile"]["deg_f"] == 20


def test_construct_invalid_profile(capsys):
    assert cli.main(["construct", "--q", "2", "--n", "3", "--r-tuple", "2,0"]) == 1
    assert "r_list not strictly increasing from 0" in capsys.readouterr().err


def test_invalid_field_is_input_error(capsys):
    assert cli.main(["construct", "--q", "6", "--n", "3", "--h-family"]) == 1
    assert "prime power" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["construct", "--q", "2", "--n", "3"],
        ["construct", "--q", "2", "--n", "3", "--h-family", "--r-tuple", "0,2"],
        ["construct", "--q", "2", "--n", "3", "--r-tuple", "0,a"],
        ["sweep", "--q-list", "2", "--n-range", "three"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as excinfo:
        cli.main(argv)
    assert excinfo.value.code == 2


def test_certify_json(capsys):
    assert cli.main(["certify", "--q", "2", "--n", "3", "--r-tuple", "0,2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"] == "pass"
    assert data["curve"]["N_bruteforce"] == 33
    assert data["curve"]["genus_formula"] == 6
    assert data["semigroup"]["castle"] is True


def test_certify_text(capsys):
    assert cli.main(["certify", "--q", "2", "--n", "5", "--h-family", "--out", "text"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("verdict: pass")
    assert "N_bruteforce=513" in out
    assert "genus_formula=60" in out


def test_certify_small_direct_bound(capsys):
    # only the direct count is bounded; the fiber count still certifies N
    assert cli.main(["certify", "--q", "2", "--n", "3", "--h-family", "--max-enum", "16"]) == 0
    capsys.readouterr()


def test_certify_skipped_checks_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("MVSP_FIBER_LIMIT", "4")
    assert cli.main(["certify", "--q", "2", "--n", "3", "--h-family"]) == 3
    captured = capsys.readouterr()
    assert json.loads(captured.out)["verdict"] == "incomplete"
    assert "skipped: value_set" in captured.err


def test_sweep_csv(capsys):
    assert cli.main(["sweep", "--q-list", "2", "--n-range", "3..5", "--profiles", "h-family"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("q,n,r_list,deg_f,deg_u,N_formula,N_bruteforce,genus_formula")
    assert len(lines) == 4
    assert all(line.split(",")[12] == "true" for line in lines[1:])


@pytest.mark.parametrize("n_range", ["5..3", "3-2"])
def test_empty_sweep_is_header_only(capsys, n_range):
    assert cli.main(["sweep", "--q-list", "2", "--n-range", n_range]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 1


def test_n_range_forms():
    assert cli._n_range("3..5") == (3, 5)
    assert cli._n_range("3-5") == (3, 5)
    assert cli._n_range("4") == (4, 4)
