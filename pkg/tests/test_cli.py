import io
import json

import pytest

from smoothfano.cli import main


def run(argv, capsys=None):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    def make(name, *args):
        code, text = run(["construct", name, *map(str, args)])
        assert code == 0
        f = tmp_path / f"{name}{'_'.join(map(str, args))}.txt"
        f.write_text(text)
        return str(f)
    return make


def test_construct_outputs(files):
    code, text = run(["construct", "cor45", "5", "4"])
    assert code == 0 and text.startswith("dim 5 vertices 9")
    code, text = run(["construct", "remark7d"])
    assert text.startswith("dim 7 vertices 15")
    assert run(["construct", "T", "0"])[0] == 2
    assert run(["construct", "family", "2", "1", "1", "2"])[0] == 0
    assert run(["construct", "family", "2", "1", "2", "2"])[0] == 2
    assert run(["construct", "nope"])[0] == 2


@pytest.mark.parametrize("args", [("T", 3), ("V", 4), ("Vt", 2), ("pic3", 2, 2), ("family", 3, 1, 2, 1, 1),
                                  ("cor45", 6, 5), ("remark7d",)])
def test_construct_then_verify(files, args):
    assert run(["verify", files(*args)])[0] == 0


def test_freesum(files):
    a = files("T", 1)
    code, text = run(["construct", "freesum", a, a])
    assert code == 0 and text.startswith("dim 2 vertices 4")


def test_verify(files, tmp_path):
    code, text = run(["verify", files("T", 5), "--json"])
    doc = json.loads(text)
    assert code == 0 and doc["smooth_fano"] and doc["reflexive"] and doc["simplicial"]
    assert "pseudo_symmetric" in doc
    doubled = tmp_path / "d.txt"
    doubled.write_text("2 0\n0 1\n-1 0\n0 -1\n")
    assert run(["verify", str(doubled)])[0] == 1
    bad = tmp_path / "b.txt"
    bad.write_text("1 0\n0 1\n-1 -1 4\n")
    assert run(["verify", str(bad)])[0] == 2
    assert run(["verify", str(tmp_path / "missing.txt")])[0] == 2


def test_relations(files):
    code, text = run(["relations", files("pic3", 2, 2), "--pattern", "isolated"])
    assert code == 0 and "(a,b)=(2,2)" in text
    code, text = run(["relations", files("T", 3)])
    assert code == 0 and text == "x0 + x1 + x2 + x3 = 0, degree 4\n"
    code, text = run(["relations", files("T", 3), "--pattern", "isolated"])
    assert code == 1 and text.endswith("no match\n")
    code, text = run(["relations", files("family", 2, 1, 1, 2), "--pattern", "family"])
    assert code == 0 and "family a=2 b=1 k=1 l=[2]" in text
    code, text = run(["relations", files("V", 2), "--pattern", "pic2"])
    assert code == 1


def test_relations_rejects_non_smooth(tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("\n".join(" ".join(map(str, (x, y))) for x in (1, -1) for y in (1, -1)))
    assert run(["relations", str(f)])[0] == 2


def test_isolate_box(files):
    code, text = run(["isolate", files("pic3", 2, 2), "--box", "4"])
    assert code == 0
    assert "removals: none" in text and "additions <= box: none" in text and "bounded(4)" in text
    code, text = run(["isolate", files("T", 2), "--box", "1"])
    assert code == 1 and "I-isolated: false (exact)" in text


def test_isolate_catalog(files):
    code, text = run(["isolate", files("V", 4), "--bundled"])
    assert code == 1 and "F-isolated: true (exact)" in text and "I-isolated: false" in text
    assert run(["isolate", files("V", 4), "--bundled", "--relation", "F"])[0] == 0
    assert run(["isolate", files("T", 3), "--bundled", "4"])[0] == 2


def test_isolate_incomplete_catalog(files, tmp_path):
    cat = tmp_path / "c.txt"
    cat.write_text(run(["construct", "T", "2"])[1])
    assert run(["isolate", files("V", 2), "--catalog", str(cat)])[0] == 3


def test_graph(tmp_path):
    dot, js = tmp_path / "g.dot", tmp_path / "g.json"
    code, text = run(["graph", "--bundled", "2", "--relation", "F", "--dot", str(dot), "--json", str(js),
                      "--report"])
    assert code == 0 and "components: 1" in text
    assert dot.read_text().startswith("digraph") and json.loads(js.read_text())["relation"] == "F"
    assert run(["graph", "--relation", "F"])[0] == 2


def test_graph_incomplete(tmp_path):
    cat = tmp_path / "c.txt"
    cat.write_text(run(["construct", "T", "2"])[1])
    assert run(["graph", "--catalog", str(cat), "--relation", "F"])[0] == 3


def test_enumerate(tmp_path):
    out = tmp_path / "e.txt"
    code, text = run(["enumerate", "2", "--out", str(out)])
    assert code == 0 and text.startswith("dim 2: 5 classes")
    assert out.read_text().count("dim 2") == 5
    assert run(["enumerate", "3", "--box", "2"])[1].startswith("dim 3: 18")
    assert run(["enumerate", "5"])[0] == 2


def test_moves(files):
    code, text = run(["moves", files("T", 2)])
    assert code == 0 and "F-add w=" in text


def test_deterministic(files):
    f = files("pic3", 3, 2)
    assert run(["relations", f])[1] == run(["relations", f])[1]


def test_usage_errors():
    assert run([])[0] == 2
    assert run(["verify"])[0] == 2
