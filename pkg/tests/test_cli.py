import json

from cli.app import main
from engine.graph6 import parse_graph6
from engine.report import EXIT_OK, EXIT_USAGE


def test_check_fixtures_to_file(tmp_path):
    out = tmp_path / "report.jsonl"
    code = main(["check", "--fixtures", "--methods", "t1d,t2,t3", "--output", str(out)])
    assert code == EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert json.loads(lines[-1])["summary"]["exit_code"] == EXIT_OK


def test_check_graph6_file_as_csv(tmp_path):
    corpus = tmp_path / "corpus.g6"
    corpus.write_bytes(b">>graph6<<\nC~\nEFz_\n")
    out = tmp_path / "report.csv"
    code = main(["check", "--input", str(corpus), "--methods", "t1d", "--format", "csv", "--output", str(out)])
    assert code == EXIT_OK
    assert len(out.read_text(encoding="utf-8").splitlines()) == 3


def test_gen(tmp_path):
    out = tmp_path / "cubic.g6"
    assert main(["gen", "--n", "10", "--delta", "3", "--count", "3", "--seed", "4", "--output", str(out)]) == EXIT_OK
    records = out.read_bytes().splitlines()
    assert len(records) == 3
    assert all(parse_graph6(r).edge_count == 15 for r in records)


def test_bound(capsys):
    assert main(["bound", "--delta", "13"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "theorem1_bound=13315/13312" in out
    assert "threshold_holds=true" in out


def test_usage_errors(tmp_path):
    assert main([]) == EXIT_USAGE
    assert main(["check"]) == EXIT_USAGE
    assert main(["check", "--fixtures", "--methods", "t7"]) == EXIT_USAGE
    assert main(["check", "--input", str(tmp_path / "missing.g6")]) == EXIT_USAGE
    assert main(["gen", "--n", "7", "--delta", "3"]) == EXIT_USAGE
    assert main(["bound", "--delta", "0"]) == EXIT_USAGE
