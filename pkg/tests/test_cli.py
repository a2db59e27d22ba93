"""Command-line surface: subcommands, formats, exit codes."""

import json

import pytest

from pdacache.cli import main
from pdacache.pda import parse_pda, validate
from helpers import EXAMPLE1_TEXT


@pytest.fixture()
def example_file(tmp_path):
    path = tmp_path / "example1.pda"
    path.write_text(EXAMPLE1_TEXT)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


# ----------------------------------------------------------------------
# validate
# ----------------------------------------------------------------------

def test_validate_ok(capsys, example_file):
    code, out = run(capsys, "validate", example_file)
    assert code == 0
    assert "(K,F,Z,S) = (6,4,2,4)" in out
    assert "g=3" in out


def test_validate_json(capsys, example_file):
    code, obj = run_json(capsys, "validate", example_file, "--json")
    assert code == 0
    assert obj["valid"] is True
    assert (obj["K"], obj["F"], obj["Z"], obj["S"]) == (6, 4, 2, 4)


def test_validate_invalid_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.pda"
    bad.write_text("1 1\n")
    code, out = run(capsys, "validate", str(bad))
    assert code == 1
    assert "C3" in out and "(1,1)" in out


def test_validate_missing_file_exit_2(capsys):
    code, _ = run(capsys, "validate", "/nonexistent/path.pda")
    assert code == 2


# ----------------------------------------------------------------------
# mn
# ----------------------------------------------------------------------

def test_mn_4_2(capsys):
    code, out = run(capsys, "mn", "4", "2")
    assert code == 0
    pda = parse_pda(out)
    assert (pda.K, pda.F, pda.Z, pda.S) == (4, 6, 3, 4)
    assert pda.regularity() == 3
    assert validate(pda).valid


def test_mn_2_1(capsys):
    code, out = run(capsys, "mn", "2", "1")
    assert code == 0
    assert out.split() == ["*", "1", "1", "*"]


def test_mn_to_file(capsys, tmp_path):
    out_path = tmp_path / "mn.pda"
    code, out = run(capsys, "mn", "6", "3", "--out", str(out_path))
    assert code == 0 and out == ""
    pda = parse_pda(out_path.read_text())
    assert (pda.K, pda.F, pda.Z, pda.S) == (6, 20, 10, 15)


def test_mn_bad_t_exit_1(capsys):
    code, _ = run(capsys, "mn", "3", "3")
    assert code == 1


# ----------------------------------------------------------------------
# simulate
# ----------------------------------------------------------------------

def test_simulate_default_secret(capsys, example_file):
    code, obj = run_json(capsys, "simulate", example_file, "--N", "6", "--B", "6")
    assert code == 0
    assert obj["scheme"] == "secret"
    assert obj["rate"]["rate"]["exact"] == "2"
    assert obj["params"]["M"]["exact"] == "7"
    assert all(d["ok"] for d in obj["decode"])
    assert obj["cauchy"]["matrix"] == [[1, 6, 2, 4], [6, 1, 4, 2], [2, 4, 1, 6], [4, 2, 6, 1]]


def test_simulate_plain(capsys, example_file):
    code, obj = run_json(capsys, "simulate", example_file, "--N", "6", "--B", "8", "--plain")
    assert code == 0
    assert obj["scheme"] == "plain"
    assert obj["rate"]["rate"]["exact"] == "1"
    assert obj["params"]["subpacketization_plain"] == 4
    assert all(d["ok"] for d in obj["decode"])


def test_simulate_audit_flag(capsys, example_file):
    code, obj = run_json(capsys, "simulate", example_file, "--audit")
    assert code == 0
    assert obj["audit"]["leak_free"] is True


def test_simulate_inject_randomness(capsys, example_file, tmp_path):
    inject = {
        "files": ["2a", "15", "3f", "01", "1c", "33"],
        "key_vectors": [["3", "5"], ["1", "2"], ["7", "0"], ["4", "6"], ["2", "2"], ["5", "1"]],
        "slot_keys": ["6", "1", "4", "7"],
    }
    path = tmp_path / "inject.json"
    path.write_text(json.dumps(inject))
    code, obj = run_json(
        capsys, "simulate", example_file, "--N", "6", "--B", "6",
        "--inject-randomness", str(path),
    )
    assert code == 0
    assert all(d["ok"] for d in obj["decode"])
    # pinned randomness makes the transcript reproducible
    code2, obj2 = run_json(
        capsys, "simulate", example_file, "--N", "6", "--B", "6",
        "--inject-randomness", str(path),
    )
    assert obj2["transcript"] == obj["transcript"]


def test_simulate_custom_field_poly(capsys, example_file):
    # x^3 + x^2 + 1 is the other irreducible cubic
    code, obj = run_json(
        capsys, "simulate", example_file, "--field-poly", "0xd", "--B", "6"
    )
    assert code == 0
    assert obj["config"]["field"]["poly"] == "0xd"
    assert all(d["ok"] for d in obj["decode"])


def test_simulate_invalid_pda_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.pda"
    bad.write_text("1 1\n")
    code, _ = run(capsys, "simulate", str(bad))
    assert code == 1


# ----------------------------------------------------------------------
# audit
# ----------------------------------------------------------------------

def test_audit_intact(capsys, example_file):
    code, obj = run_json(capsys, "audit", example_file, "--N", "3", "--json")
    assert code == 0
    assert obj["leak_free"] is True
    assert obj["certificates"] == obj["demands_checked"] * 7


def test_audit_ablated_key_flags_leak(capsys, example_file):
    code, obj = run_json(
        capsys, "audit", example_file, "--N", "6",
        "--demand", "1,2,3,4,5,6", "--ablate-key", "2", "--json",
    )
    assert code == 1
    assert obj["leak_free"] is False
    assert obj["leaks"]
    assert any(leak.get("witness") for leak in obj["leaks"])


# ----------------------------------------------------------------------
# tables, envelope, rate points
# ----------------------------------------------------------------------

def test_table1_text_and_flags(capsys):
    code, out = run(capsys, "table1", "--q", "3", "--n", "4")
    assert code == 0
    assert "F_pda" in out  # flagged discrepancy column
    assert "3/2 (1.5000)" in out


def test_table1_csv(capsys):
    code, out = run(capsys, "table1", "--csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("pda,param,K,M")
    assert len(lines) == 5  # header + three q-rows... row1, row2, row3(n), row4


def test_table2_worked_numbers(capsys):
    code, obj = run_json(capsys, "table2", "--q", "2", "--m", "2", "--N", "6", "--json")
    assert code == 0
    row = obj["rows"][0]
    assert row["K"] == 6
    assert row["memory"] == {
        "plain": {"exact": "3", "decimal": "3.0000"},
        "secret": {"exact": "7", "decimal": "7.0000"},
    }
    assert row["subpacketization"] == {"plain": 4, "secret": 2}
    assert row["rate"]["secret"]["exact"] == "2"


def test_table2_length_mismatch(capsys):
    code, _ = run(capsys, "table2", "--q", "2", "--q", "3", "--m", "1")
    assert code == 1


def test_envelope_eval(capsys):
    code, obj = run_json(capsys, "envelope", "--K", "6", "--N", "6", "--eval", "7", "--json")
    assert code == 0
    assert obj["evaluated"]["R"]["exact"] == "3/2"
    assert any(bp["M"]["exact"] == "7" for bp in obj["breakpoints"])


def test_rate_point(capsys):
    code, out = run(capsys, "rate-point", "--K", "6", "--N", "6", "--t", "3")
    assert code == 0
    assert "M = 7 (7.0000)" in out
    assert "R = 3/2 (1.5000)" in out
    assert "subpacketization = 10" in out


def test_rate_point_endpoint(capsys):
    code, obj = run_json(capsys, "rate-point", "--K", "6", "--N", "6", "--endpoint", "--json")
    assert code == 0
    assert obj["M"]["exact"] == "30" and obj["R"]["exact"] == "1"


def test_rate_point_requires_t_or_endpoint(capsys):
    code, _ = run(capsys, "rate-point", "--K", "6", "--N", "6")
    assert code == 1


# ----------------------------------------------------------------------
# figures
# ----------------------------------------------------------------------

def test_table_emitters_byte_identical(capsys):
    first = run(capsys, "table1", "--q", "3", "--n", "4", "--csv")
    second = run(capsys, "table1", "--q", "3", "--n", "4", "--csv")
    assert first == second
    third = run(capsys, "table2", "--q", "3", "--m", "1", "--json")
    fourth = run(capsys, "table2", "--q", "3", "--m", "1", "--json")
    assert third == fourth


def test_envelope_plot_written(capsys, tmp_path):
    fig = tmp_path / "envelope.png"
    code, _ = run(capsys, "envelope", "--K", "6", "--N", "6", "--plot", str(fig))
    assert code == 0
    assert fig.exists() and fig.stat().st_size > 1000


def test_table_plots_written(capsys, tmp_path):
    fig1 = tmp_path / "table1.png"
    fig2 = tmp_path / "table2.png"
    assert main(["table1", "--plot", str(fig1)]) == 0
    assert main(["table2", "--q", "2", "--m", "2", "--plot", str(fig2)]) == 0
    capsys.readouterr()
    assert fig1.exists() and fig1.stat().st_size > 1000
    assert fig2.exists() and fig2.stat().st_size > 1000
