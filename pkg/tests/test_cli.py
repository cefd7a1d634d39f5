import io
import json
import subprocess
import sys

import pytest

from dyckpaint.cli import main


def run(*argv, stdin=""):
    out = io.StringIO()
    code = main(list(argv), stdout=out, stdin=io.StringIO(stdin))
    return code, out.getvalue()


@pytest.fixture
def instance_file(tmp_path):
    def make(kind, n, f, m=0, edges=None):
        path = tmp_path / f"{kind}{n}_{m}.json"
        graph = {"kind": kind, "n": n}
        if edges is not None:
            graph["edges"] = edges
        path.write_text(json.dumps({"graph": graph, "f": list(f), "m": m}))
        return str(path)

    return make


def test_psi():
    assert run("psi", "2,3,3,5") == (0, "72\n")
    for method in ("dp", "rec", "det", "auto"):
        assert run("psi", "2,3,3,5", "--method", method)[1] == "72\n"


def test_psi_negative_entries():
    assert run("psi", "-1,0") == (0, "0\n")


def test_reduce():
    assert run("reduce", "5,10,7,13,12,16,21,18,24") == (0, "5,7,7,12,12,16,18,18,24\n")


def test_xvec():
    assert run("xvec", "3,6,6,9") == (0, "2,4,3,5\nreduced 2,3,3,5\n")
    assert run("xvec", "3,1")[0] == 2


def test_paths_encode():
    code, out = run("paths", "0,1", "--encode")
    assert code == 0
    assert out.splitlines() == ["UUR\t{1,2}", "URU\t{1,3}"]
    code, out = run("--json", "paths", "0,1")
    assert json.loads(out) == ["UUR", "URU"]


def test_json_output():
    code, out = run("--json", "psi", "0,1,2,3")
    assert json.loads(out) == {"x": [0, 1, 2, 3], "method": "auto", "psi": "14"}


def test_big_numbers_are_exact():
    code, out = run("psi", ",".join(map(str, range(30))))
    assert out.strip() == "3814986502092304"


def test_malformed_vector_exit_code():
    assert run("psi", "1,x")[0] == 2


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as err:
        main(["nosuch"], stdout=io.StringIO())
    assert err.value.code == 2


def test_mp_and_mc(instance_file):
    path = instance_file("complete", 2, (1, 3))
    assert run("mp", path) == (0, "2\n")
    assert run("mc", path) == (0, "2\n")
    code, out = run("--json", "mp", path, "--stats")
    data = json.loads(out)
    assert data["m_p"] == 2 and data["paintable_at_m"] is True
    assert data["stats"]["states"] > 0


def test_mc_infinite_kappa(instance_file):
    path = instance_file("edgeless", 1, (1,))
    assert run("mc", path) == (0, "1\n")


def test_mc_cap_exit_code(instance_file):
    path = instance_file("complete", 4, (1, 1, 1, 1))
    assert run("mc", path)[0] == 2


def test_mp_cap_exit_code(instance_file, monkeypatch):
    monkeypatch.setenv("DYCKPAINT_MAX_VERTICES", "4")
    path = instance_file("edgeless", 2, (2, 2))
    assert run("mp", path)[0] == 2


def test_bad_instance_file(tmp_path):
    path = tmp_path / "x.json"
    path.write_text("[]")
    assert run("mp", str(path))[0] == 2
    assert run("mp", str(tmp_path / "missing.json"))[0] == 2


def test_badlist():
    code, out = run("--json", "badlist", "1,3")
    data = json.loads(out)
    assert data["instance"]["m"] == 2
    assert data["assignment"]["lists"] == [[1], [1, 2, 3], [1, 2], [1, 3]]
    code, out = run("badlist", "1,3")
    assert out.splitlines()[0] == "m = 2"


def test_verify_sweeps(tmp_path):
    code, out = run("verify", "thm2", "--n-max", "1", "--f-max", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split("\t") == ["instance", "psi_dp", "psi_rec", "psi_det", "m_p", "m_c", "expected", "status"]
    assert len(lines) == 4
    target = tmp_path / "p3.json"
    code, out = run("--json", "verify", "p3", "--f-max", "2", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["summary"]["rows"] == 8
    assert run("verify", "thm1", "--n-max", "2", "--f-max", "2")[0] == 0
    assert run("verify", "mult", "--f-max", "2")[0] == 0


def test_bench():
    code, out = run("bench", "--nmax", "4", "--samples", "3")
    assert code == 0
    assert out.splitlines()[0] == "n\tdp_ms\trec_ms\tdet_ms"
    assert len(out.splitlines()) == 5
    code, out = run("--json", "bench", "--nmax", "2", "--samples", "1")
    assert [r["n"] for r in json.loads(out)] == [1, 2]


def test_play_as_painter(instance_file):
    path = instance_file("complete", 1, (1,))
    code, out = run("--json", "play", path, "--as", "painter", stdin="0\n")
    assert code == 0
    lines = out.splitlines()
    assert "painter wins" in lines
    assert json.loads(lines[-1]) == [{"marked": [0], "colored": [0]}]
    assert "  G: 0[1]" in lines


def test_play_as_lister_rejects_illegal_input(instance_file):
    path = instance_file("complete", 2, (1, 1))
    code, out = run("play", path, "--as", "lister", stdin="7\n\n0,1\n")
    assert code == 0
    assert out.count("mark a nonempty set") == 2
    assert out.splitlines()[-1] == "lister wins"


def test_play_painter_rejects_non_independent(instance_file):
    path = instance_file("complete", 2, (1, 1))
    code, out = run("play", path, "--as", "painter", stdin="0,1\n0\n")
    assert "colour an independent subset" in out
    assert out.splitlines()[-1] == "lister wins"


def test_play_join_shows_both_sides(instance_file):
    path = instance_file("complete", 1, (2,), m=1)
    code, out = run("play", path, "--as", "painter", stdin="0\n0\n1\n1\n")
    assert "  E: 1[1]" in out
    assert out.rstrip().endswith("wins")


def test_play_input_exhausted(instance_file):
    path = instance_file("complete", 2, (2, 2))
    assert run("play", path, "--as", "lister", stdin="")[0] == 2


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "dyckpaint", "psi", "2,3,3,5"], capture_output=True, text=True, check=False
    )
    assert res.returncode == 0 and res.stdout == "72\n"
