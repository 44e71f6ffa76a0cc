"""Command-line interface: outputs, exit codes, seeds, guards."""

import json
import os

import pytest

from entrokit.cli import main

pytestmark = pytest.mark.usefixtures("outdir")


@pytest.fixture
def outdir(tmp_path, monkeypatch):
    monkeypatch.setenv("ENTROKIT_OUTPUT_DIR", str(tmp_path))
    monkeypatch.chdir(tmp_path)
    return tmp_path


def read_lines(path):
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def test_enumerate_json(outdir):
    assert main(["enumerate", "--d", "2", "--n", "2"]) == 0
    records = read_lines(outdir / "corpus_d2_n2.json")
    assert len(records) == 31
    rec = records[0]
    assert set(rec) == {"index", "d", "n", "generators", "quantum", "classical"}
    assert len(rec["quantum"]["entries"]) == 3


def test_enumerate_csv(outdir):
    assert main(["enumerate", "--d", "2", "--n", "1", "--format", "csv"]) == 0
    lines = (outdir / "corpus_d2_n1.csv").read_text().splitlines()
    assert lines[0] == "state,kind,mask,size,order,entropy_log_d"
    assert len(lines) == 1 + 4 * 2  # 4 states x 2 kinds x 1 mask


def test_enumerate_threads_agree(outdir):
    assert main(["enumerate", "--d", "2", "--n", "2", "--out", str(outdir / "a.json")]) == 0
    assert main(["enumerate", "--d", "2", "--n", "2", "--threads", "3", "--out", str(outdir / "b.json")]) == 0
    key = lambda r: tuple(map(tuple, r["generators"]))
    a = sorted(read_lines(outdir / "a.json"), key=key)
    b = sorted(read_lines(outdir / "b.json"), key=key)
    for ra, rb in zip(a, b):
        assert ra["generators"] == rb["generators"]
        assert ra["quantum"] == rb["quantum"]
    assert len(a) == len(b) == 31


def test_enumerate_guard(outdir, capsys):
    assert main(["enumerate", "--d", "7", "--n", "5"]) == 2
    assert "guard" in capsys.readouterr().err


def test_verify_pass_and_fail(outdir):
    corpus = str(outdir / "corpus.json")
    assert main(["enumerate", "--d", "2", "--n", "2", "--out", corpus]) == 0
    assert main(["verify", "--corpus", corpus, "--family", "ssa"]) == 0
    report = read_lines(outdir / "report.json")[0]
    assert report["passed"] and report["states_checked"] == 31
    # monotonicity fails on quantum vectors but holds classically
    assert main(["verify", "--corpus", corpus, "--family", "monotonicity"]) == 1
    assert main(["verify", "--corpus", corpus, "--family", "monotonicity", "--kind", "classical"]) == 0


def test_verify_balanced_only_drops_unbalanced(outdir, capsys):
    corpus = str(outdir / "corpus.json")
    assert main(["enumerate", "--d", "2", "--n", "2", "--out", corpus]) == 0
    # every monotonicity instance is unbalanced, so nothing is left
    assert main(["verify", "--corpus", corpus, "--family", "monotonicity", "--balanced-only"]) == 2
    assert "no inequalities" in capsys.readouterr().err


def test_verify_inequality_file(outdir):
    corpus = str(outdir / "corpus.json")
    assert main(["enumerate", "--d", "2", "--n", "2", "--out", corpus]) == 0
    path = outdir / "ineqs.json"
    path.write_text('{"n": 2, "name": "ssa", "nu": {"1": 1, "2": 1, "3": -1}}\n')
    assert main(["verify", "--corpus", corpus, "--inequality", str(path)]) == 0


def test_verify_missing_corpus(outdir, capsys):
    assert main(["verify", "--corpus", str(outdir / "nope.json"), "--family", "ssa"]) == 2
    assert "error" in capsys.readouterr().err


def test_oracle_check(outdir):
    assert main(["oracle-check", "--d", "2", "--n", "1"]) == 0
    report = read_lines(outdir / "oracle_check_d2_n1.json")[0]
    assert report["passed"] and report["states"] == 4
    assert main(["oracle-check", "--d", "5", "--n", "6"]) == 2  # dense guard


def test_gaussian_verify(outdir):
    assert main(["gaussian", "verify", "--n", "2", "--trials", "5", "--seed", "1"]) == 0
    report = read_lines(outdir / "gaussian_verify.json")[0]
    assert report["passed"] and report["max_error"] < 1e-10


def test_gaussian_mc(outdir):
    assert main(["gaussian", "mc", "--fixture", "thermal", "--samples", "100000", "--seed", "2"]) == 0
    report = read_lines(outdir / "gaussian_mc.json")[0]
    assert report["passed"]
    assert abs(report["estimate"] - report["exact"]) <= max(3 * report["stderr"], 0.01 * abs(report["exact"]))
    assert main(["gaussian", "mc", "--fixture", "bogus", "--samples", "100000", "--seed", "2"]) == 2


def test_gaussian_ingleton_search(outdir):
    assert main(["gaussian", "ingleton-search", "--seed", "11", "--iters", "3000"]) == 0
    report = read_lines(outdir / "gaussian_ingleton-search.json")[0]
    assert report["found"] and report["ingleton_value"] < -1e-6


def test_seed_is_required(outdir):
    assert main(["gaussian", "mc", "--fixture", "vacuum"]) == 2
    assert main(["gaussian", "ingleton-search"]) == 2
    assert main(["gaussian", "verify"]) == 2


def test_bad_arguments(outdir, capsys):
    assert main(["enumerate", "--d", "1", "--n", "1"]) == 2
    assert main(["enumerate", "--d", "2", "--n", "0"]) == 2
    assert main(["gaussian", "mc", "--samples", "-5", "--seed", "1"]) == 2
    assert main(["nonsense"]) == 2
    capsys.readouterr()


def test_output_dir_env_respected(outdir, tmp_path_factory):
    other = tmp_path_factory.mktemp("elsewhere")
    os.environ["ENTROKIT_OUTPUT_DIR"] = str(other)
    try:
        assert main(["enumerate", "--d", "2", "--n", "1"]) == 0
        assert (other / "corpus_d2_n1.json").exists()
    finally:
        os.environ["ENTROKIT_OUTPUT_DIR"] = str(outdir)
