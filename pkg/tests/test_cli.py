import json
from fractions import Fraction

import pytest

from zetaident.cli import main, parse_complex_literal, parse_p_range, parse_rational


def F(n, d=1):
    return Fraction(n, d)


# ---- argument parsing ----


def test_parse_complex_literal_forms():
    assert parse_complex_literal("2") == (F(2), F(0))
    assert parse_complex_literal("-2.5") == (F(-5, 2), F(0))
    assert parse_complex_literal("0.5+14.134725i") == (F(1, 2), F(14134725, 10**6))
    assert parse_complex_literal("1-2i") == (F(1), F(-2))
    assert parse_complex_literal(" 3.25+0.5i ") == (F(13, 4), F(1, 2))


def test_parse_complex_literal_rejects_garbage():
    for bad in ("", "i", "2i", "1+i", "1 + 2i", "abc", "1+2j"):
        with pytest.raises(ValueError):
            parse_complex_literal(bad)


def test_parse_p_range():
    assert parse_p_range("3") == [3]
    assert parse_p_range("1..4") == [1, 2, 3, 4]
    with pytest.raises(ValueError):
        parse_p_range("0")
    with pytest.raises(ValueError):
        parse_p_range("5..2")


def test_parse_rational():
    assert parse_rational("0.25") == F(1, 4)
    assert parse_rational("-1/3") == F(-1, 3)


# ---- derive ----


def test_derive_prints_polynomials(capsys):
    assert main(["derive", "--p", "3"]) == 0
    out = capsys.readouterr().out
    assert "Q_3(s) = 1/2 + 1/12*s" in out
    assert "extends to Re s > -3" in out


def test_derive_writes_identity_file(tmp_path, capsys):
    path = tmp_path / "identities.json"
    assert main(["derive", "--p", "1..12", "--kmax", "64", "--out", str(path)]) == 0
    records = json.loads(path.read_text())
    assert len(records) == 12
    assert [r["p"] for r in records] == list(range(1, 13))
    assert records[2]["k0"] == 4


def test_derive_rejects_bad_depth(capsys):
    assert main(["derive", "--p", "0"]) == 2
    assert main(["derive", "--p", "3", "--kmax", "4"]) == 2


def test_derive_unwritable_output(tmp_path):
    path = tmp_path / "missing" / "identities.json"
    assert main(["derive", "--p", "2", "--out", str(path)]) == 3


# ---- verify ----


def test_verify_named_checks(capsys):
    assert main(["verify", "--only", "coefficients", "--only", "pairing"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 2


def test_verify_file_round_trip(tmp_path, capsys):
    path = tmp_path / "identities.json"
    main(["derive", "--p", "1..12", "--out", str(path)])
    capsys.readouterr()
    assert main(["verify", "--in", str(path)]) == 0
    assert "PASS" in capsys.readouterr().out


def test_verify_corrupted_file_names_first_mismatch(tmp_path, capsys):
    path = tmp_path / "identities.json"
    main(["derive", "--p", "1..12", "--out", str(path)])
    records = json.loads(path.read_text())
    records[4]["terms"][11]["r"] = "7/6"  # p=5, k=17
    path.write_text(json.dumps(records))
    capsys.readouterr()
    assert main(["verify", "--in", str(path)]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out
    assert "p=5" in out and "k=17" in out


def test_verify_missing_file():
    assert main(["verify", "--in", "/nonexistent/identities.json"]) == 3


def test_verify_unparseable_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{ not json")
    assert main(["verify", "--in", str(path)]) == 3


# ---- eval ----


def test_eval_prints_value(capsys):
    assert main(["eval", "--p", "5", "--s", "2", "--digits", "30"]) == 0
    out = capsys.readouterr().out
    assert "1.6449340668482264364724151666" in out
    assert "terms used" in out


def test_eval_picks_depth(capsys):
    assert main(["eval", "--s", "-6.25", "--digits", "20"]) == 0
    out = capsys.readouterr().out
    assert "p = 8" in out


def test_eval_complex(capsys):
    assert main(["eval", "--p", "3", "--s", "0.5+14.134725i", "--digits", "20"]) == 0
    out = capsys.readouterr().out
    assert "j" in out or "e-" in out  # tiny complex value near a zero


def test_eval_domain_errors():
    assert main(["eval", "--p", "3", "--s", "-5"]) == 2
    assert main(["eval", "--s", "1"]) == 2
    assert main(["eval", "--s", "-30"]) == 2
    assert main(["eval", "--p", "1..3", "--s", "2"]) == 2
    assert main(["eval", "--p", "3", "--s", "nonsense"]) == 2


def test_eval_digits_floor():
    assert main(["eval", "--p", "3", "--s", "2", "--digits", "5"]) == 2


# ---- table ----


def test_table_csv_schema_and_pole_skip(tmp_path, capsys):
    path = tmp_path / "grid.csv"
    code = main(
        [
            "table",
            "--p", "3",
            "--start", "-2.5",
            "--stop", "2.5",
            "--step", "0.25",
            "--digits", "30",
            "--out", str(path),
        ]
    )
    assert code == 0
    err = capsys.readouterr().err
    assert "skipping s = 1.0" in err
    lines = path.read_text().splitlines()
    assert lines[0] == "s_re,s_im,value_re,value_im,terms_used,error_estimate"
    assert len(lines) == 1 + 20  # 21 grid points, pole row skipped
    for line in lines[1:]:
        assert "," in line and ";" not in line


def test_table_json_format(capsys):
    assert (
        main(
            [
                "table",
                "--p", "2",
                "--start", "2", "--stop", "3", "--step", "1/2",
                "--digits", "20",
                "--format", "json",
            ]
        )
        == 0
    )
    rows = json.loads(capsys.readouterr().out)
    assert [row["s_re"] for row in rows] == ["2.0", "2.5", "3.0"]
    assert all(row["s_im"] == "0.0" for row in rows)


def test_table_imaginary_offset(capsys):
    assert (
        main(
            [
                "table",
                "--p", "2",
                "--start", "1", "--stop", "2", "--step", "1",
                "--im", "5",
                "--digits", "20",
                "--format", "json",
            ]
        )
        == 0
    )
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 2
    assert all(row["s_im"] == "5.0" for row in rows)
    assert any(row["value_im"] != "0.0" for row in rows)


def test_table_bad_grid():
    assert main(["table", "--start", "2", "--stop", "1", "--step", "1"]) == 2
    assert main(["table", "--start", "1", "--stop", "2", "--step", "0"]) == 2


# ---- special ----


def test_special_checks_pass(capsys):
    assert main(["special", "--check", "zeta0", "--p", "2..4", "--digits", "25"]) == 0
    out = capsys.readouterr().out
    assert out.strip().endswith("PASS")

    assert main(["special", "--check", "trivial_zeros", "--p", "5", "--digits", "25"]) == 0
    out = capsys.readouterr().out
    assert "|zeta(-2)|" in out and "|zeta(-4)|" in out

    assert main(["special", "--check", "sum_identity", "--digits", "25"]) == 0
    assert main(["special", "--check", "zetaprime0", "--digits", "25"]) == 0
    capsys.readouterr()
    assert main(["special", "--check", "zeta2", "--digits", "25"]) == 0
    assert "pi^2/6" in capsys.readouterr().out


def test_special_depth_one_is_domain_error():
    assert main(["special", "--check", "zetaprime0", "--p", "1"]) == 2


# ---- global behavior ----


def test_digits_env_override(monkeypatch, capsys):
    monkeypatch.setenv("ZETA_DIGITS", "21")
    assert main(["eval", "--p", "5", "--s", "2"]) == 0
    out = capsys.readouterr().out
    assert "1.64493406684822643647" in out
    assert "1.644934066848226436472" not in out  # only 21 significant digits


def test_digits_env_invalid(monkeypatch):
    monkeypatch.setenv("ZETA_DIGITS", "plenty")
    assert main(["eval", "--p", "5", "--s", "2"]) == 2


def test_usage_errors_exit_two(capsys):
    assert main(["frobnicate"]) == 2
    assert main(["eval"]) == 2  # --s is required
    assert main([]) == 2


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
