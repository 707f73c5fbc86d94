import subprocess
import sys

import pytest

from ltldep.cli import main

from conftest import corpus_path


def run_main(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_deps_subcommand(capsys):
    code, out = run_main(["deps", corpus_path("midbit1.spec")], capsys)
    assert code == 0
    assert "o2\tdependent" in out
    assert "dependent=1 total=2" in out


def test_deps_on_hoa_input(tmp_path, capsys):
    from ltldep.automata import emit_hoa
    from conftest import build_two_state_example

    p = tmp_path / "a.hoa"
    p.write_text(emit_hoa(build_two_state_example()))
    code, out = run_main(["deps", str(p)], capsys)
    assert code == 0
    assert "o1\tdependent" in out


def test_synth_exit_codes(tmp_path, capsys):
    out_file = tmp_path / "c.aag"
    code, out = run_main(
        ["synth", corpus_path("copy4.spec"), "-o", str(out_file)], capsys
    )
    assert code == 0
    assert "REALIZABLE" in out
    assert out_file.read_text().startswith("aag ")
    code, out = run_main(["synth", corpus_path("unreal_predict.spec")], capsys)
    assert code == 2
    assert "UNREALIZABLE" in out


def test_synth_timings_csv(capsys):
    code, out = run_main(["synth", corpus_path("copy4.spec"), "--timings"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert "nba_ms,deps_ms,nondep_ms,dep_ms" in lines
    row = lines[lines.index("nba_ms,deps_ms,nondep_ms,dep_ms") + 1]
    assert len(row.split(",")) == 4
    float(row.split(",")[0])


def test_project_stats(capsys):
    code, out = run_main(["project-stats", corpus_path("midbit2.spec")], capsys)
    assert code == 0
    header, row = out.splitlines()[:2]
    assert header == "spec,states,edges,bdd_before,bdd_after"
    vals = row.split(",")
    assert int(vals[3]) > int(vals[4])


def test_verify_subcommand(tmp_path, capsys):
    p = tmp_path / "c.aag"
    code, _ = run_main(
        ["synth", corpus_path("latch.spec"), "-o", str(p)], capsys
    )
    assert code == 0
    code, out = run_main(["verify", corpus_path("latch.spec"), str(p)], capsys)
    assert code == 0
    assert "VERIFIED" in out
    # wrong controller for the spec
    p2 = tmp_path / "inv.aag"
    run_main(["synth", corpus_path("invert4.spec"), "-o", str(p2)], capsys)
    code, out = run_main(["verify", corpus_path("copy4.spec"), str(p2)], capsys)
    assert code == 2
    assert "NOT-VERIFIED" in out


def test_translate_subcommand(tmp_path, capsys):
    hoa = tmp_path / "a.hoa"
    code, out = run_main(
        ["translate", corpus_path("copy4.spec"), "--hoa", str(hoa)], capsys
    )
    assert code == 0
    assert out.startswith("states=")
    assert hoa.read_text().startswith("HOA: v1")


def test_gen_midbit(capsys):
    code, out = run_main(["gen-midbit", "2"], capsys)
    assert code == 0
    assert out.startswith("INPUTS i1, i2;")


def test_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.spec"
    bad.write_text("INPUTS a;\nOUTPUTS a;\nLTL a;\n")
    code = main(["deps", str(bad)])
    assert code == 1
    code = main(["deps", str(tmp_path / "missing.spec")])
    assert code == 1


def test_installed_entry_point():
    res = subprocess.run(
        ["ltldep", "deps", corpus_path("copy4.spec")],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert "dependent" in res.stdout
