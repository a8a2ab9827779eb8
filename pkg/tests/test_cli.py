from __future__ import annotations

import json
import subprocess
import sys

import jsonschema
import pytest

from pcsp_adjoint.cli import main
from pcsp_adjoint.graph import clique, cycle, parse, read_graph
from pcsp_adjoint.schemas import RESULTS, report_schema


def run(*args: str, cwd=None) -> subprocess.CompletedProcess:
    return subprocess.run([sys.executable, "-m", "pcsp_adjoint", *args], capture_output=True, text=True, cwd=cwd)


def report(capsys, *args: str) -> tuple[int, dict]:
    code = main(list(args) + ["--json"])
    data = json.loads(capsys.readouterr().out)
    jsonschema.validate(data, report_schema(args[0]))
    return code, data


@pytest.fixture
def files(tmp_path):
    paths = {}
    for spec in ("cycle:5", "clique:3", "clique:4", "circular:5/2", "circular:7/2", "kneser:6,2"):
        name = spec.replace(":", "").replace("/", "_").replace(",", "_")
        path = tmp_path / f"{name}.txt"
        assert main(["gen", spec, "--out", str(path)]) == 0
        paths[spec] = str(path)
    return paths


def test_gen(capsys):
    assert main(["gen", "clique:4"]) == 0
    G = parse(capsys.readouterr().out)
    assert G.n == 4 and len(G.arcs) == 12
    code, data = report(capsys, "gen", "circular:7/2")
    assert code == 0 and data["result"]["n"] == 7 and data["result"]["arcs"] == 28
    code, data = report(capsys, "gen", "kneser:5,2")
    assert data["result"]["arcs"] == 30
    assert main(["gen", "circular:4/2"]) == 1


def test_hom_exit_codes(files, capsys, tmp_path):
    code, data = report(capsys, "hom", "--from", files["cycle:5"], "--to", files["clique:3"], "--verify")
    assert code == 0 and data["result"]["status"] == "found" and data["result"]["verified"]
    code, data = report(capsys, "hom", "--from", files["clique:4"], "--to", files["circular:7/2"])
    assert code == 0 and data["result"]["status"] == "none" and data["result"]["certificate"] is None
    code, data = report(capsys, "hom", "--from", files["kneser:6,2"], "--to", files["clique:3"], "--budget", "2")
    assert code == 2 and data["result"]["status"] == "unknown"
    assert main(["hom", "--from", str(tmp_path / "missing.txt"), "--to", files["clique:3"]]) == 1
    assert main(["hom", "--from", files["cycle:5"]]) == 1


def test_budget_env(files, monkeypatch, capsys):
    monkeypatch.setenv("PCSP_ADJOINT_BUDGET", "2")
    assert main(["hom", "--from", files["kneser:6,2"], "--to", files["clique:3"]]) == 2


def test_chi(files, capsys, tmp_path):
    code, data = report(capsys, "chi", "--in", files["kneser:6,2"], "--verify")
    assert code == 0 and data["result"]["chromatic_number"] == 4
    code, data = report(capsys, "chi", "--in", files["kneser:6,2"], "--budget", "3")
    assert code == 2 and data["result"]["lower"] < data["result"]["upper"]
    loop = tmp_path / "loop.txt"
    loop.write_text("graph 2 2\n0 0\n0 1\n")
    code, data = report(capsys, "chi", "--in", str(loop))
    assert code == 0 and data["result"]["status"] == "has-loop"


def test_apply(files, capsys, tmp_path):
    out = tmp_path / "g.txt"
    assert main(["apply", "--functor", "gamma:3", "--in", files["cycle:5"], "--out", str(out)]) == 0
    assert read_graph(str(out)) == clique(5)
    first = out.read_text().splitlines()[0]
    assert first.startswith("# functor gamma:3 input ")
    code, data = report(capsys, "apply", "--functor", "delta", "--in", files["clique:3"])
    assert data["result"]["n"] == 6
    assert main(["apply", "--functor", "gamma", "--in", files["cycle:5"]]) == 1


def test_reduce(files, capsys, tmp_path):
    trace = tmp_path / "t.json"
    out = tmp_path / "o.txt"
    assert main(["reduce", "--pipeline", "arc", "--in", files["clique:3"], "--out", str(out),
                 "--trace", str(trace)]) == 0
    t = json.loads(trace.read_text())
    assert t["schema_version"] == 1 and t["steps"][0]["ops"] == ["delta"]
    spec = tmp_path / "p.json"
    spec.write_text(json.dumps({"steps": [{"name": "twice", "ops": ["lambda:3", "gamma:3"]}]}))
    code, data = report(capsys, "reduce", "--pipeline", str(spec), "--in", files["cycle:5"])
    assert code == 0 and len(data["result"]["trace"]["steps"]) == 1
    assert main(["reduce", "--pipeline", "bogus", "--in", files["cycle:5"]]) == 1


def test_topo(files, capsys):
    code, data = report(capsys, "topo", "--complex", "box", "--in", files["clique:4"])
    r = data["result"]
    assert (r["betti0"], r["betti1"], r["torsion1"], r["euler"]) == (1, 0, [], 2)
    assert r["free"] and r["quotient"]["torsion1"] == [2]
    code, data = report(capsys, "topo", "--complex", "hom", "--in", files["cycle:5"])
    assert data["result"]["betti1"] == 1 and len(data["result"]["vertices"]) == 10


def test_wind_on_identity(files, capsys, tmp_path):
    cert = tmp_path / "id.json"
    assert main(["hom", "--from", files["cycle:5"], "--to", files["cycle:5"], "--out", str(cert)]) == 0
    capsys.readouterr()
    # the target file is C_5 in cycle labelling; wind relabels it onto K_5/2
    code, data = report(capsys, "wind", "--hom", str(cert), "--target", "5/2")
    assert code == 0 and abs(data["result"]["d"]) == 1 and data["result"]["violations"] == []
    assert main(["wind", "--hom", str(cert), "--target", "6/2"]) == 1


def test_pol(files, capsys, tmp_path):
    code, data = report(capsys, "pol", "--base", files["cycle:5"], "--target", files["circular:5/2"],
                        "--arity", "2", "--verify")
    assert code == 0 and data["result"]["count"] == 20 and len(data["result"]["certificates"]) == 20
    code, data = report(capsys, "pol", "--base", files["cycle:5"], "--target", files["clique:3"], "--count")
    assert data["result"]["count"] == 7560
    out = tmp_path / "p.json"
    assert main(["pol", "--base", files["cycle:5"], "--target", files["circular:5/2"], "--limit", "1",
                 "--out", str(out)]) == 0
    capsys.readouterr()
    code, data = report(capsys, "wind", "--hom", str(out), "--target", "5/2")
    assert code == 0 and len(data["result"]["a"]) == 2


def test_check(capsys):
    code, data = report(capsys, "check", "topology", "--jobs", "2")
    assert code == 0 and data["result"]["passed"]
    names = [p["property"] for p in data["result"]["properties"]]
    main(["check", "topology", "--json"])
    single = json.loads(capsys.readouterr().out)
    assert names == [p["property"] for p in single["result"]["properties"]]
    assert main(["check", "nonsense"]) == 1


def test_verify_rejects_tampering(files, capsys, tmp_path):
    cert = tmp_path / "c.json"
    main(["hom", "--from", files["cycle:5"], "--to", files["clique:3"], "--out", str(cert)])
    capsys.readouterr()
    data = json.loads(cert.read_text())
    data["map"] = [0, 0, 0, 0, 0]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, rep = report(capsys, "verify", str(bad))
    assert code == 1 and not rep["result"]["valid"]


def test_fresh_process_verify_and_determinism(files, tmp_path):
    outputs = []
    for _ in range(2):
        cert = tmp_path / "chi.json"
        proc = run("chi", "--in", files["kneser:6,2"], "--json", "--verify", "--out", str(cert))
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        data.pop("wall_time")
        outputs.append(json.dumps(data, sort_keys=True))
        check = run("verify", str(cert))
        assert check.returncode == 0 and check.stdout.strip() == "valid"
    assert outputs[0] == outputs[1]
    pol = tmp_path / "pol.json"
    assert run("pol", "--base", files["cycle:5"], "--target", files["clique:3"], "--limit", "3",
               "--out", str(pol)).returncode == 0
    assert run("verify", str(pol)).returncode == 0


def test_console_script_help():
    proc = run("--help")
    assert proc.returncode == 0 and "gen" in proc.stdout


def test_every_command_has_a_schema():
    from pcsp_adjoint.cli import build_parser
    sub = next(a for a in build_parser()._actions if a.dest == "command")
    assert set(sub.choices) == set(RESULTS)


def test_graph_io_round_trip(tmp_path):
    p = tmp_path / "c.txt"
    assert main(["gen", "cycle:5", "--out", str(p)]) == 0
    assert read_graph(str(p)) == cycle(5)
