import json

import pytest

from secantdim import cli, schemes


def run(argv):
    return cli.main(argv)


def test_secdim_3_2(capsys):
    assert run(["secdim", "--n", "3", "--s", "2", "--trials", "1"]) == 0
    out = capsys.readouterr().out
    assert "observed dimension  7" in out


def test_secdim_4_3_json(capsys):
    assert run(["secdim", "--n", "4", "--s", "3", "--trials", "2",
                "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["observed"] == 13 and doc["defect"] == 1
    assert doc["trials"] == 100  # escalated before claiming a defect


def test_secdim_missing_flag_is_usage_error(capsys):
    assert run(["secdim", "--n", "3"]) == 2


def test_table_has_single_defective_row(capsys):
    assert run(["table", "--n-min", "3", "--n-max", "5", "--trials", "1",
                "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    header = lines[0].split(",")
    defective = [l for l in lines[1:] if int(l.split(",")[header.index("defect")]) != 0]
    assert len(defective) == 1 and defective[0].startswith("4,3,")


def test_table_resource_guard(capsys):
    assert run(["table", "--n-min", "3", "--n-max", "30"]) == 2


def test_fatpoints_on_transfer_spec(tmp_path, capsys):
    f = tmp_path / "spec.json"
    f.write_text(schemes.to_json(schemes.segre_to_fatpoints(4, 3)))
    assert run(["fatpoints", "--spec", str(f), "--trials", "2"]) == 0
    assert "= 2 in P^4" in capsys.readouterr().out


def test_fatpoints_empty_spec(tmp_path, capsys):
    f = tmp_path / "empty.json"
    f.write_text(schemes.to_json(schemes.SchemeSpec(ambient=3)))
    assert run(["fatpoints", "--spec", str(f), "--degree", "3"]) == 0
    assert "= 20 in P^3" in capsys.readouterr().out


def test_fatpoints_malformed_file(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{ this is not json")
    assert run(["fatpoints", "--spec", str(f), "--degree", "2"]) == 2
    assert run(["fatpoints", "--spec", str(tmp_path / "missing.json")]) == 2


def test_fatpoints_degenerate_span(tmp_path):
    spec = schemes.SchemeSpec(ambient=3, subspaces=(
        ("B", schemes.SubspaceSpec(span=(
            schemes.PointSpec(1, "explicit", coords=(1, 0, 0, 0)),
            schemes.PointSpec(1, "explicit", coords=(2, 0, 0, 0)),
        ), include=True)),
    ))
    f = tmp_path / "degen.json"
    f.write_text(schemes.to_json(spec))
    assert run(["fatpoints", "--spec", str(f), "--degree", "2"]) == 2


def test_certify_5_5(tmp_path):
    out = tmp_path / "cert.json"
    assert run(["certify", "--n", "5", "--s", "5", "--output", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["claimed"] == 2 and doc["status"] == "verified"


def test_certify_exception_case():
    assert run(["certify", "--n", "4", "--s", "3"]) == 2


def test_certify_bound_only_needs_flag(tmp_path):
    args = ["certify", "--n", "9", "--s", "51", "--cap", "1",
            "--output", str(tmp_path / "c.json")]
    assert run(args) == 1
    assert run(args + ["--allow-bound-only"]) == 0


def test_lemmas_trace(capsys):
    assert run(["lemmas", "--which", "trace", "--m", "4", "--x", "1", "--y", "2"]) == 0
    assert "-> 2  pass" in capsys.readouterr().out


def test_lemmas_out_of_guard():
    assert run(["lemmas", "--which", "residue", "--m", "4", "--x", "5", "--y", "0"]) == 2


def test_lemmas_appendix(capsys):
    assert run(["lemmas", "--which", "appendix", "--n-max", "16"]) == 0
    assert "all pass" in capsys.readouterr().out


def test_lemmas_fixcomp(capsys):
    assert run(["lemmas", "--which", "fixcomp", "--i", "1", "--m", "2", "--n", "3"]) == 0


def test_unknown_subcommand():
    assert run(["frobnicate"]) == 2


def test_output_files_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["secdim", "--n", "5", "--s", "3", "--trials", "2",
            "--format", "json", "--seed", "11"]
    assert run(argv + ["--output", str(a)]) == 0
    assert run(argv + ["--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
