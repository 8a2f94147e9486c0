import pytest

pytest.importorskip("gradio")

from ui import app  # noqa: E402


def test_check_fixtures():
    summary, rows, jsonl = app.check_graphs("", True, ["t1d", "t2", "t3"], 0, 0)
    assert "clean" in summary
    assert [r[0] for r in rows][:2] == ["figure1", "prism"]
    assert len(jsonl.splitlines()) == len(rows)


def test_check_pasted_graph():
    summary, rows, _ = app.check_graphs("C~\n", False, ["t1d"], 0, 0)
    assert rows[0][:5] == ["line:1", 4, 3, 1, 2]


def test_check_needs_input():
    summary, rows, jsonl = app.check_graphs("", False, ["t1d"], 0, 0)
    assert summary.startswith("❌")
    assert rows == [] and jsonl == ""


def test_generate():
    assert app.generate_graphs(4, 3, 2, 0) == "C~\nC~"
    assert app.generate_graphs(7, 3, 1, 0).startswith("# error")


def test_bounds():
    assert "threshold holds | yes" in app.bound_info(13)
    assert app.bound_info(0).startswith("❌")
