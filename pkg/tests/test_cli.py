import json
import subprocess
import sys

import pytest

from contextua import datasets
from contextua.cli import main


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


AXIS_X = {"dim": 3, "basis": [["1", "0", "0"]]}
AXIS_Y = {"dim": 3, "basis": [["0", "1", "0"]]}


class TestTruth:
    def test_files(self, tmp_path, capsys):
        state = write(tmp_path, "s.json", {"vector": ["1", "1", "0"]})
        prop = write(tmp_path, "p.json", AXIS_X)
        code, out, _ = run(["truth", "--state", state, "--prop", prop], capsys)
        assert code == 0
        assert json.loads(out) == {"probability": "1/2", "value": "indeterminate"}

    def test_dataset(self, capsys):
        code, out, _ = run(["truth", "--dataset", "spin-half", "--prop-name", "Sy_up"], capsys)
        assert code == 0 and json.loads(out)["probability"] == "1/2"

    def test_missing_args_is_usage(self, capsys):
        assert run(["truth"], capsys)[0] == 1


class TestExitCodes:
    def test_usage(self, capsys):
        assert run([], capsys)[0] == 1
        assert run(["nosuch"], capsys)[0] == 1
        assert run(["ks", "--enumerate", "x"], capsys)[0] == 1
        assert run(["datasets", "show"], capsys)[0] == 1

    def test_parse_errors(self, tmp_path, capsys):
        bad_json = write(tmp_path, "bad.json", "{not json")
        bad_scalar = write(tmp_path, "s.json", {"vector": ["1", "r3"]})
        missing_key = write(tmp_path, "m.json", {"vec": ["1"]})
        prop = write(tmp_path, "p.json", AXIS_X)
        assert run(["truth", "--state", bad_json, "--prop", prop], capsys)[0] == 2
        assert run(["truth", "--state", bad_scalar, "--prop", prop], capsys)[0] == 2
        assert run(["truth", "--state", missing_key, "--prop", prop], capsys)[0] == 2
        assert run(["truth", "--state", str(tmp_path / "absent.json"), "--prop", prop], capsys)[0] == 2

    def test_domain_errors(self, tmp_path, capsys):
        zero = write(tmp_path, "z.json", {"vector": ["0", "0", "0"]})
        prop = write(tmp_path, "p.json", AXIS_X)
        assert run(["truth", "--state", zero, "--prop", prop], capsys)[0] == 3
        wrong_dim = write(tmp_path, "w.json", {"vector": ["1", "0"]})
        assert run(["truth", "--state", wrong_dim, "--prop", prop], capsys)[0] == 3
        assert run(["datasets", "show", "nosuch"], capsys)[0] == 3
        assert run(["ks", "--dataset", "bc-axes"], capsys)[0] == 3
        parallel = write(tmp_path, "r.json", {"dim": 2, "rays": [{"label": "a", "v": ["1", "0"]},
                                                                  {"label": "b", "v": ["2", "0"]}]})
        assert run(["ks", "--rays", parallel], capsys)[0] == 3
        too_big = write(tmp_path, "big.json", {"vector": ["1"] * 9})
        big_prop = write(tmp_path, "bp.json", {"dim": 9, "basis": [["1"] + ["0"] * 8]})
        assert run(["truth", "--state", too_big, "--prop", big_prop], capsys)[0] == 3


class TestBc:
    def test_dataset_with_everything(self, tmp_path, capsys):
        q = write(tmp_path, "q.json", AXIS_X)
        code, out, _ = run(["bc", "--dataset", "bc-axes", "--query", q, "--homs", "--contextual-state"], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["k"] == 3 and data["weights"] == ["1/3"] * 3
        assert data["query"] == {"member": True, "values": [1, 0, 0]}
        assert [h["values_on_projected_rays"] for h in data["homomorphisms"]] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        assert data["contextual_state"]["trace"] == "1"

    def test_non_member_query(self, tmp_path, capsys):
        q = write(tmp_path, "q.json", {"dim": 3, "basis": [["1", "1", "0"]]})
        data = json.loads(run(["bc", "--dataset", "bc-axes", "--query", q], capsys)[1])
        assert data["query"] == {"member": False, "values": "non-member"}

    def test_context_file_round_trip(self, tmp_path, capsys):
        code, out, _ = run(["datasets", "show", "bc-degenerate"], capsys)
        ctx = write(tmp_path, "ctx.json", json.loads(out)["context"])
        a = run(["bc", "--context", ctx], capsys)[1]
        b = run(["bc", "--dataset", "bc-degenerate"], capsys)[1]
        assert a == b


class TestKs:
    def test_cabello(self, capsys):
        data = json.loads(run(["ks", "--dataset", "cabello18", "--certificate"], capsys)[1])
        assert data["verdict"] == "unsat" and data["parity_certificate"]["num_bases"] == 9

    def test_enumerate(self, capsys):
        data = json.loads(run(["ks", "--dataset", "yuoh13", "--enumerate", "100"], capsys)[1])
        assert data["verdict"] == "sat" and data["count"] == 24

    def test_rays_file(self, tmp_path, capsys):
        rays = write(tmp_path, "r.json", {"dim": 2, "rays": [{"label": "x", "v": ["1", "0"]},
                                                              {"label": "y", "v": ["0", "1"]}]})
        data = json.loads(run(["ks", "--rays", rays], capsys)[1])
        assert data["coloring"] == {"x": 1, "y": 0}


class TestClassical:
    def test_table(self, tmp_path, capsys):
        space = write(tmp_path, "sp.json", {"points": ["a", "b"], "properties": {"P": ["a"], "Q": []}})
        data = json.loads(run(["classical", "--space", space, "--point", "a"], capsys)[1])
        assert data == {"point": "a", "table": {"P": True, "Q": False}}

    def test_empty_property_set(self, tmp_path, capsys):
        space = write(tmp_path, "sp.json", {"points": ["a"]})
        code, out, _ = run(["classical", "--space", space, "--point", "a"], capsys)
        assert code == 0 and json.loads(out)["table"] == {}

    def test_unknown_point(self, tmp_path, capsys):
        space = write(tmp_path, "sp.json", {"points": ["a"]})
        assert run(["classical", "--space", space, "--point", "z"], capsys)[0] == 3


def test_contrast(capsys):
    data = json.loads(run(["contrast"], capsys)[1])
    assert data["classical_homomorphisms"] >= 1
    assert data["cabello18"] == "unsat"


def test_datasets_list(capsys):
    data = json.loads(run(["datasets", "list"], capsys)[1])
    assert [d["name"] for d in data["datasets"]] == datasets.names()


class TestLattice:
    @pytest.fixture
    def files(self, tmp_path):
        return write(tmp_path, "a.json", AXIS_X), write(tmp_path, "b.json", AXIS_Y)

    def test_join_meet_ortho_leq(self, files, capsys):
        a, b = files
        assert json.loads(run(["lattice", "join", a, b], capsys)[1])["basis"] == [["1", "0", "0"], ["0", "1", "0"]]
        assert json.loads(run(["lattice", "meet", a, b], capsys)[1])["basis"] == []
        assert len(json.loads(run(["lattice", "ortho", a], capsys)[1])["basis"]) == 2
        assert json.loads(run(["lattice", "leq", a, b], capsys)[1]) == {"leq": False}

    def test_arity(self, files, capsys):
        a, b = files
        assert run(["lattice", "ortho", a, b], capsys)[0] == 1
        assert run(["lattice", "meet", a], capsys)[0] == 1


def test_output_file(tmp_path, capsys):
    out = tmp_path / "o.json"
    assert run(["-o", str(out), "datasets", "list"], capsys)[1] == ""
    assert json.loads(out.read_text())["datasets"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "contextua", "datasets", "list"], capture_output=True, text=True)
    assert proc.returncode == 0 and "cabello18" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "contextua", "bogus"], capture_output=True, text=True)
    assert proc.returncode == 1
