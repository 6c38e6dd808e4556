import json
import subprocess
import sys

import pytest

from transfersys.cli import run
from transfersys.formats import ts_from_json
from transfersys.noncrossing import parse_blocks
from transfersys.poset import make_chain
from transfersys.transfer import validate


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_count(capsys):
    assert call(capsys, "enumerate", "chain:3", "--count") == (0, "14\n", "")
    assert call(capsys, "enumerate", "boolean:2", "--count")[1] == "10\n"


def test_enumerate_lists_json_lines(capsys):
    code, out, _ = call(capsys, "enumerate", "chain:1")
    assert code == 0
    docs = [json.loads(line) for line in out.splitlines()]
    assert docs == [{"edges": [], "poset": "chain:1"}, {"edges": [[0, 1]], "poset": "chain:1"}]


def test_enumerate_out_file_round_trips(capsys, tmp_path):
    path = tmp_path / "all.json"
    code, out, _ = call(capsys, "enumerate", "grid:1x1", "--out", str(path))
    assert code == 0 and out == "10\n"
    docs = json.loads(path.read_text())
    systems = [ts_from_json(d) for d in docs]
    assert len({r.edges for r in systems}) == 10


def test_enumerate_by_generators(capsys):
    code, out, _ = call(capsys, "enumerate", "chain:3", "--by-generators")
    assert out.splitlines() == ["k,count", "0,1", "1,6", "2,6", "3,1"]
    assert call(capsys, "enumerate", "boolean:2", "--by-generators")[0] == 2


def test_enumerate_bound(capsys):
    code, _, err = call(capsys, "enumerate", "chain:4", "--bound", "3")
    assert code == 2 and "bound" in err


def test_enumerate_slats(capsys):
    code, out, _ = call(capsys, "enumerate", "grid:2x1", "--slats")
    assert code == 0
    assert out.splitlines() == ["k,count", "-1,13", "0,21", "1,21", "2,13"]


def test_slats(capsys):
    assert call(capsys, "slats", "1")[1].splitlines() == ["k,count", "-1,3", "0,4", "1,3"]


def test_poset_formats(capsys):
    code, out, _ = call(capsys, "poset", "chain:2")
    assert code == 0 and out.splitlines()[1:] == ["0 < 1", "1 < 2"]
    doc = json.loads(call(capsys, "poset", "divisors:6", "--json")[1])
    assert doc["labels"] == ["1", "2", "3", "6"]
    dot = call(capsys, "poset", "op:chain:1", "--dot")[1]
    assert dot.startswith("digraph poset {") and "n1 -> n0;" in dot


def test_dualize(capsys, tmp_path):
    code, out, _ = call(capsys, "dualize", "chain:1", "--ts", "trivial")
    assert code == 0
    assert json.loads(out) == {"edges": [[0, 1]], "poset": "chain:1"}
    path = tmp_path / "r.json"
    path.write_text(json.dumps({"poset": "chain:2", "edges": [[0, 1]]}))
    outs = {call(capsys, "dualize", "chain:2", "--ts", str(path), "--method", m)[1] for m in ("de", "lifting")}
    assert len(outs) == 1
    assert json.loads(outs.pop())["edges"] == [[0, 1], [0, 2]]


def test_dualize_bbpr_matches_default(capsys, tmp_path):
    path = tmp_path / "r.json"
    path.write_text(json.dumps({"edges": [[0, 1], [2, 3], [4, 5], [6, 7]]}))
    a = call(capsys, "dualize", "boolean:3", "--ts", str(path))[1]
    b = call(capsys, "dualize", "boolean:3", "--ts", str(path), "--method", "bbpr")[1]
    assert a == b


def test_dualize_abelian_and_duality_file(capsys, tmp_path):
    code, out, _ = call(capsys, "dualize", "abelian:2,2", "--ts", "complete")
    assert code == 0 and json.loads(out)["edges"] == []
    dpath = tmp_path / "d.json"
    dpath.write_text(json.dumps({"forward": [2, 1, 0]}))
    assert call(capsys, "dualize", "chain:2", "--ts", "trivial", "--duality", str(dpath))[0] == 0
    dpath.write_text(json.dumps({"forward": [0, 1, 2]}))
    assert call(capsys, "dualize", "chain:2", "--ts", "trivial", "--duality", str(dpath))[0] == 2
    assert call(capsys, "dualize", "abelian:2,2", "--ts", "trivial", "--duality", "canonical")[0] == 2


def test_dualize_dot(capsys):
    out = call(capsys, "dualize", "chain:2", "--ts", "trivial", "--dot")[1]
    assert "n0 -> n2;" in out


def test_wfs(capsys, tmp_path):
    path = tmp_path / "r.json"
    path.write_text(json.dumps({"edges": [[1, 2]]}))
    code, out, _ = call(capsys, "wfs", "chain:2", "--ts", str(path))
    doc = json.loads(out)
    assert code == 0 and doc["is_wfs"] and doc["left"] == [[0, 1]]


def test_nc(capsys):
    out = call(capsys, "nc", "3")[1].splitlines()
    assert out[0] == "rank,count,narayana" and out[-1] == "total,14,14"
    listed = call(capsys, "nc", "2", "--list")[1].splitlines()
    assert len(listed) == 5
    code, out, _ = call(capsys, "nc", "5", "--to-ts", "0,1,2|3,5|4")
    assert code == 0
    assert json.loads(out)["edges"] == [[0, 1], [0, 2], [1, 2], [3, 4], [3, 5]]
    assert call(capsys, "nc", "4", "--to-ts", "0,1,2|3,5|4")[0] == 2


def test_nc_from_ts(capsys, tmp_path):
    path = tmp_path / "r.json"
    r = validate(make_chain(5), [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5)])
    path.write_text(json.dumps({"edges": [list(e) for e in r.pairs]}))
    doc = json.loads(call(capsys, "nc", "5", "--from-ts", str(path))[1])
    assert doc == {"blocks": [[0, 1, 2], [3, 5], [4]], "n": 5, "rank": 3}
    assert parse_blocks("0,1,2|3,5|4").blocks == tuple(tuple(b) for b in doc["blocks"])


def test_verify(capsys):
    code, out, _ = call(capsys, "verify", "catalan", "--max", "6")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["checks"] == 6


@pytest.mark.parametrize(
    "argv",
    [
        ["poset", "chain:x"],
        ["poset", "wheel:3"],
        ["poset", "chain3"],
        ["enumerate", "chain:2", "--ts"],
        ["dualize", "chain:2", "--ts", "/nonexistent.json"],
        ["wfs", "op:abelian:2"],
        ["nc", "-1"],
        ["verify", "nonsense"],
    ],
)
def test_malformed_input_exits_2(capsys, argv):
    assert call(capsys, *argv)[0] == 2


def test_invalid_transfer_system_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"edges": [[0, 1], [1, 2]]}))
    code, _, err = call(capsys, "dualize", "chain:2", "--ts", str(path))
    assert code == 2 and "transitivity" in err


def test_deterministic_output(capsys):
    a = call(capsys, "enumerate", "grid:2x1")[1]
    b = call(capsys, "enumerate", "grid:2x1")[1]
    assert a == b and len(a.splitlines()) == 68


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "transfersys", "enumerate", "chain:3", "--count"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "14\n"
