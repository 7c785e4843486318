import io

import pytest

from compograph import catalog
from compograph.cli import run
from compograph.graphs import parse_graph, serialize_graph


def _run(argv, stdin=None):
    out = io.StringIO()
    if stdin is not None:
        import compograph.cli as cli

        args = cli.build_parser().parse_args(argv)
        status = cli.cmd_oracle(args, out, stdin=io.StringIO(stdin))
    else:
        status = run(argv, out)
    return status, out.getvalue()


@pytest.fixture()
def p4_file(tmp_path):
    g = catalog.generate(catalog.path(4))
    path = tmp_path / "p4.g"
    path.write_text(serialize_graph(g, (0, 0, 1, 1)))
    return str(path)


def test_count_closed_form():
    status, out = _run(["count", "--family", "path:4", "--k", "2"])
    assert status == 0
    assert out == "CHI path:4 2 10 closed-form\n"


def test_count_enumeration_agrees():
    _, closed = _run(["count", "--family", "bistar:2,2", "--k", "3"])
    _, enum = _run(["count", "--family", "bistar:2,2", "--k", "3", "--enumerate"])
    assert closed.split()[3] == enum.split()[3]


def test_count_usage_error():
    status, out = _run(["count", "--family", "frob:1", "--k", "2"])
    assert status == 2
    assert out.startswith("ERROR InvalidSpec")


def test_reconstruct_p4(p4_file):
    status, out = _run(["reconstruct", "--graph", p4_file, "--algo", "auto", "--k", "2"])
    assert status == 0
    lines = out.strip().splitlines()
    assert lines[-1].startswith("RESULT unique queries=")
    assert any(line.startswith("RECOVERED ") for line in lines)
    assert all(line.split(" -> ")[0].count(" ") == 2
               for line in lines if line.startswith("Q "))


def test_reconstruct_brute_transcript(p4_file):
    status, out = _run(["reconstruct", "--graph", p4_file, "--algo", "brute"])
    assert status == 0
    q_lines = [l for l in out.splitlines() if l.startswith("Q multiset")]
    assert len(q_lines) == 4
    assert out.strip().endswith("RESULT unique queries=0/4")


def test_scan_order_4():
    status, out = _run(["scan", "--order", "4", "--sum"])
    assert status == 0
    lines = out.strip().splitlines()
    class_lines = [l for l in lines if l.startswith("CLASS ")]
    assert len(class_lines) == 6
    assert not any("confusable" == l.split()[2] for l in class_lines)
    assert any(l.startswith("SUMWITNESS ") for l in lines)


def test_scan_trees_only():
    status, out = _run(["scan", "--order", "5", "--trees-only"])
    assert status == 0
    assert len([l for l in out.splitlines() if l.startswith("CLASS ")]) == 3
    assert "WITNESS" not in out


def test_atlas_writes_parseable_files(tmp_path):
    status, out = _run(["atlas", "--order", "4", "--trees-only",
                        "--out", str(tmp_path / "atlas")])
    assert status == 0
    files = sorted((tmp_path / "atlas").glob("tree-4-*.g"))
    assert len(files) == 2
    for f in files:
        g, _, _ = parse_graph(f.read_text())
        assert g.n == 4


def test_construct_verify(tmp_path):
    status, out = _run(["construct", "--kind", "tm-pair", "--p", "2",
                        "--out", str(tmp_path / "c"), "--verify"])
    assert status == 0
    assert "VERIFIED equicomposable=true" in out
    files = sorted((tmp_path / "c").glob("*.g"))
    assert len(files) == 2


def test_construct_interleave(tmp_path):
    status, out = _run(["construct", "--kind", "interleave", "--p1", "AB",
                        "--p2", "ABC", "--out", str(tmp_path / "i"), "--verify"])
    assert status == 0
    assert "VERIFIED equicomposable=true" in out


def test_oracle_protocol(p4_file):
    status, out = _run(["oracle", "--graph", p4_file], stdin="S 2\nM 3\nQUIT\n")
    assert status == 0
    assert out.splitlines() == [
        "Q sum 2 -> 3,3",
        "Q multiset 3 -> 1x1,2;1x2,1;",
    ]


def test_determinism_of_reports(p4_file):
    for argv in (
        ["scan", "--order", "5"],
        ["count", "--family", "substar:1,1,3", "--k", "3"],
        ["reconstruct", "--graph", p4_file, "--algo", "auto", "--k", "2"],
    ):
        _, first = _run(argv)
        _, second = _run(argv)
        assert first == second


def test_missing_labels_is_an_error(tmp_path):
    g = catalog.generate(catalog.path(3))
    path = tmp_path / "bare.g"
    path.write_text(serialize_graph(g))
    status, out = _run(["reconstruct", "--graph", str(path)])
    assert status == 2
    assert out.startswith("ERROR FormatError")
