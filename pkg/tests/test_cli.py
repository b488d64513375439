"""CLI contract: formats, exit codes, determinism, round-trips."""

import json

import pytest

from cesaro.cli import run


def cli(capsys, *args):
    code = run(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_means_counterexample_csv(capsys):
    code, out, _ = cli(capsys, "means", "--gen", "counterexample", "--n", "24",
                       "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,a_n"
    assert lines[-1] == "24,0.25"


def test_blocks_table_row(capsys):
    code, out, _ = cli(capsys, "blocks", "--alpha", "2", "--j", "3")
    assert code == 0
    assert "3,4,8,4" in out.splitlines()


def test_block_means_csv_undefined_row(capsys):
    code, out, _ = cli(capsys, "block-means", "--gen", "constant", "--value", "1",
                       "--alpha", "1.1", "--j", "3")
    assert code == 0
    assert "2,0,,false" in out.splitlines()


def test_density_json_a0(capsys):
    code, out, _ = cli(capsys, "density", "--gen", "a_s", "--s", "0", "--n",
                       "1048576", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["lower"] - 0.5) <= 0.01
    assert abs(doc["upper"] - 0.6667) <= 0.01


def test_density_rejects_non_indicator(capsys):
    code, _, err = cli(capsys, "density", "--gen", "constant", "--value", "0.3",
                       "--n", "100")
    assert code == 1
    assert "--gen" in err


def test_strong_means_center(capsys):
    code, out, _ = cli(capsys, "strong-means", "--gen", "constant", "--value",
                       "1.5", "--l", "1.5", "--n", "8")
    assert code == 0
    assert out.splitlines()[-1] == "8,0.0"


def test_w1norm_output(capsys):
    code, out, _ = cli(capsys, "w1norm", "--gen", "counterexample", "--m", "6")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "m,abs_mean,running_sup"
    assert lines[-1] == "6,1.0,1.0"


def test_check_thm1_json(capsys):
    code, out, _ = cli(capsys, "check-thm1", "--gen", "counterexample", "--n",
                       "65536", "--bases", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["theorem"] == "theorem1"
    assert doc["consistent"] is True
    assert doc["cesaro"]["verdict"] == "oscillating"
    assert doc["bases"][0]["verdict"] == "converged"


def test_check_thm1_accepts_e_token(capsys):
    code, out, _ = cli(capsys, "check-thm1", "--gen", "constant", "--value",
                       "1", "--n", "4096", "--bases", "1.5,e")
    assert code == 0
    doc = json.loads(out)
    assert doc["bases"][1]["alpha"] == pytest.approx(2.718281828459045)


def test_check_thm2_json(capsys):
    code, out, _ = cli(capsys, "check-thm2", "--gen", "paper-example",
                       "--alpha", "2", "--n", "65536")
    assert code == 0
    doc = json.loads(out)
    assert doc["theorem"] == "theorem2"
    assert doc["consistent"] is True


def test_demo_json(capsys):
    code, out, _ = cli(capsys, "demo-counterexample", "--n", "4096")
    assert code == 0
    doc = json.loads(out)
    assert doc["max_abs_block_mean_from_2"] == 0.0
    assert doc["cesaro_band"]["verdict"] == "oscillating"


def test_reports_are_json_only(capsys):
    code, _, err = cli(capsys, "demo-counterexample", "--n", "4096",
                       "--format", "csv")
    assert code == 1
    assert "--format" in err


def test_exit_codes(capsys):
    assert cli(capsys, "blocks", "--alpha", "0.9", "--j", "3")[0] == 1
    assert cli(capsys, "means", "--gen", "counterexample")[0] == 1  # missing --n
    assert cli(capsys, "means", "--gen", "nope", "--n", "4")[0] == 1
    assert cli(capsys, "means", "--gen", "file", "--path", "/no/such",
               "--n", "4")[0] == 1
    code, _, err = cli(capsys, "check-thm1", "--gen", "constant", "--value",
                       "1", "--n", "128", "--bases", "0.5,2")
    assert code == 1 and "--bases" in err


def test_error_text_names_flag(capsys):
    _, _, err = cli(capsys, "blocks", "--alpha", "1.0", "--j", "2")
    assert "--alpha" in err
    _, _, err = cli(capsys, "means", "--gen", "a_s", "--s", "2", "--n", "4")
    assert "--s" in err


def test_byte_determinism_stdout(capsys):
    args = ("means", "--gen", "random", "--seed", "9", "--bound", "1",
            "--n", "300", "--format", "csv")
    _, first, _ = cli(capsys, *args)
    _, second, _ = cli(capsys, *args)
    assert first == second
    args = ("check-thm1", "--gen", "random", "--seed", "9", "--bound", "1", "--n", "2048")
    _, first, _ = cli(capsys, *args)
    _, second, _ = cli(capsys, *args)
    assert first == second


def test_byte_determinism_file(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for target in (a, b):
        code = run(["density", "--gen", "a_s", "--s", "0.5", "--n", "8192",
                    "--out", str(target)])
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_roundtrip_bit_identical(tmp_path, capsys):
    seq = tmp_path / "seq.txt"
    code = run(["gen", "--gen", "random", "--seed", "42", "--bound", "1",
                "--n", "500", "--emit", str(seq)])
    assert code == 0
    _, direct, _ = cli(capsys, "means", "--gen", "random", "--seed", "42",
                       "--bound", "1", "--n", "500")
    _, from_file, _ = cli(capsys, "means", "--gen", "file", "--path", str(seq),
                          "--n", "500")
    assert direct == from_file


def test_gen_stdout_is_file_format(capsys, tmp_path):
    _, out, _ = cli(capsys, "gen", "--gen", "counterexample", "--n", "6")
    lines = out.splitlines()
    assert lines[0].startswith("#")
    assert [float(v) for v in lines[1:]] == [-1.0, 1.0, -1.0, 1.0, 1.0, -1.0]


def test_out_dir_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CESARO_OUT_DIR", str(tmp_path))
    code = run(["blocks", "--alpha", "2", "--j", "2", "--out", "table.csv"])
    assert code == 0
    assert (tmp_path / "table.csv").read_text().splitlines()[1] == "1,1,2,1"


def test_absolute_out_ignores_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CESARO_OUT_DIR", str(tmp_path / "ignored"))
    target = tmp_path / "direct.csv"
    assert run(["blocks", "--alpha", "2", "--j", "1", "--out", str(target)]) == 0
    assert target.exists()
