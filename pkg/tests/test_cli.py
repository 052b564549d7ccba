import json
import subprocess
import sys

import pytest

from indres.cli import main
from indres.homology import AbGroup


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def groups(obj):
    return AbGroup.from_json(obj["K0"]), AbGroup.from_json(obj["K1"])


def text_groups(text):
    found = {}
    for line in text.splitlines():
        for name in ("K0", "K1"):
            if line.startswith(name + " = "):
                found[name] = AbGroup.parse(line.split(" = ", 1)[1])
    return found["K0"], found["K1"]


def test_nq_primes(capsys):
    code, out, _ = run(capsys, "nq", "--primes", "3,5")
    assert code == 0
    obj = json.loads(out)
    assert obj["K0"] == {"rank": 0, "torsion": [2]}
    assert obj["K1"] == {"rank": 0, "torsion": [2]}


def test_graph_two_loops_trivial(capsys):
    g = json.dumps({"vertices": ["v"], "edges": [{"src": "v", "dst": "v"}] * 2})
    code, out, _ = run(capsys, "graph", g)
    assert code == 0
    assert groups(json.loads(out)) == (AbGroup(), AbGroup())


def test_complex_zero_map_and_round_trip(capsys):
    code, out, _ = run(capsys, "complex", json.dumps({"ranks": [1, 1], "boundaries": [[0]]}))
    assert code == 0
    obj = json.loads(out)
    assert [AbGroup.from_json(h) for h in obj["homology"]] == [AbGroup(1), AbGroup(1)]
    code, again, _ = run(capsys, "complex", out)
    assert code == 0 and json.loads(again)["homology"] == obj["homology"]


def test_complex_koszul_noncommuting_refused(capsys):
    ops = {"operators": [[[1, 1], [0, 1]], [[1, 0], [1, 1]]], "m": 2}
    code, _, err = run(capsys, "complex", json.dumps(ops))
    assert code == 2 and "commute" in err


@pytest.mark.parametrize("argv", [
    ["graph", "{not json"],
    ["graph", json.dumps({"vertices": ["v"], "edges": [{"src": "x", "dst": "v"}]})],
    ["nq", "--primes", "4"],
    ["nq", "--primes", "x"],
    ["complex", json.dumps({"ranks": [1, 1, 1], "boundaries": [[[1]], [[1]]]})],
    ["tiling", json.dumps({"period": "ab"}), "--depths", "3"],
])
def test_validation_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as info:
        raise SystemExit(main(argv))
    assert info.value.code == 1


def test_undetermined_exit_2(capsys):
    code, _, err = run(capsys, "nq", "--primes", "3,5,7,11", "--no-check")
    assert code == 2
    assert '"status": "undetermined"' in err


def test_check_covers_word_list_inconclusive(capsys):
    words = sorted({("ab" * 4)[i:i + n] for n in range(1, 4) for i in range(8 - n + 1)})
    code, out, _ = run(capsys, "check-covers", "--family", "tiling", "--depth", "2",
                       json.dumps({"words": words}))
    assert code == 0 and json.loads(out)["verdict"] == "inconclusive"


def test_check_covers_pass(capsys):
    code, out, _ = run(capsys, "check-covers", "--family", "tiling", json.dumps({"period": "ab"}))
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    g = json.dumps({"vertices": ["v", "w"], "edges": [{"src": "v", "dst": "w"}, {"src": "w", "dst": "v"}]})
    code, out, _ = run(capsys, "check-covers", "--family", "graph", g)
    assert code == 0 and json.loads(out)["verdict"] == "pass"


@pytest.mark.parametrize("argv", [
    ["nq", "--primes", "3,5"],
    ["nq", "--primes", "3,5,7"],
    ["raam", json.dumps({"generators": list("abcd"), "edges": [["a", "b"], ["b", "c"], ["c", "d"]]})],
    ["graph", json.dumps({"vertices": ["v"], "edges": [{"src": "v", "dst": "v"}] * 4})],
])
def test_text_and_json_agree(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    obj = json.loads(out)
    code, text, _ = run(capsys, *argv, "--format", "text")
    assert code == 0
    if "extension" in obj["K0"]:
        assert "extension" in text
        assert AbGroup.from_json(obj["K1"]) == text_groups_k1(text)
    else:
        assert groups(obj) == text_groups(text)


def text_groups_k1(text):
    line = next(ln for ln in text.splitlines() if ln.startswith("K1 = "))
    return AbGroup.parse(line.split(" = ", 1)[1])


def test_tiling_text_and_json(capsys):
    code, out, _ = run(capsys, "tiling", json.dumps({"period": "ab"}), "--depths", "3,4")
    assert code == 0
    obj = json.loads(out)
    assert obj["stabilized"] is True
    code, text, _ = run(capsys, "tiling", json.dumps({"period": "ab"}), "--depths", "3,4", "--format", "text")
    assert groups(obj["result"]) == text_groups(text)


def test_input_file(capsys, tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"vertices": ["v"], "edges": [{"src": "v", "dst": "v"}] * 3}))
    code, out, _ = run(capsys, "graph", "--input", str(p))
    assert code == 0 and json.loads(out)["K0"] == {"rank": 0, "torsion": [2]}
    code, _, _ = run(capsys, "graph", "--input", str(tmp_path / "missing.json"))
    assert code == 1


def test_deterministic_subprocess():
    cmd = [sys.executable, "-m", "indres", "nq", "--primes", "3,5,7"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and b"extension_ambiguous" in a
