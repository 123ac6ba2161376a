from __future__ import annotations

import json
import shutil
import subprocess
import sys

import pytest

from stardecomp.cli import main
from stardecomp.formats import parse_graph, serialize_graph, serialize_graph6
from stardecomp.gen import complete, cycle, edgeless, heawood, path, random_regular
from stardecomp.star import Coloring, verify_star


@pytest.fixture
def write(tmp_path):
    def _write(name, g_or_text, fmt="edgelist"):
        p = tmp_path / name
        p.write_text(g_or_text if isinstance(g_or_text, str) else serialize_graph(g_or_text, fmt))
        return str(p)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mad(capsys, write):
    assert run(capsys, "mad", write("c5.txt", cycle(5)))[:2] == (0, "2/1\n")
    assert run(capsys, "mad", write("e.txt", edgeless(3)))[:2] == (0, "0/1\n")
    code, out, _ = run(capsys, "mad", "--brute", "--witness", write("p4.txt", path(4)))
    assert code == 0 and out.splitlines() == ["3/2", "witness 0 1 2 3"]


def test_mad_formats_and_json(capsys, write):
    f = write("k4.g6", complete(4), "graph6")
    code, out, _ = run(capsys, "mad", "--json", f)
    assert code == 0 and json.loads(out)["mad"] == "3/1"
    code, out, _ = run(capsys, "mad", "--format", "dimacs", write("c.col", cycle(4), "dimacs"))
    assert out == "2/1\n"


def test_color(capsys, write):
    code, out, _ = run(capsys, "color", "--verify", write("t.txt", path(5)))
    assert code == 0 and "palette 3" in out and "route forest3" in out
    code, out, _ = run(capsys, "color", "--json", write("c5.txt", cycle(5)))
    rec = json.loads(out)
    assert code == 0 and rec["route"] == "thm_i_4" and rec["palette_size"] == 4
    colors = {int(k): v for k, v in rec["coloring"].items()}
    assert verify_star(cycle(5), Coloring(colors, 4)).ok
    code, out, _ = run(capsys, "color", "--route", "exact", write("k4.txt", complete(4)))
    assert code == 0 and "palette 4" in out
    code, out, _ = run(capsys, "color", "--route", "thm1", write("k4b.txt", complete(4)))
    assert code == 1 and out.startswith("not covered")
    code, _, _ = run(capsys, "color", "--no-exact", write("k5.txt", complete(5)))
    assert code == 1


def test_detect(capsys, write):
    code, out, _ = run(capsys, "detect", "--family", "L3", write("t.txt", path(6)))
    assert code == 0 and out.startswith("L3 kind 1")
    code, out, _ = run(capsys, "detect", "--family", "L3", write("h.txt", heawood()))
    assert code == 1 and out == "none\n"
    code, out, _ = run(capsys, "detect", "--family", "L2", "--json", write("c5.txt", cycle(5)))
    assert code == 0 and json.loads(out)["family"] == "L2"


def test_discharge_with_plot(capsys, write, tmp_path):
    import random

    from stardecomp.gen import config_free

    g = config_free("L3", random.Random(3))
    png = tmp_path / "charges.png"
    code, out, _ = run(capsys, "discharge", "--family", "L3", "--plot", str(png), write("g.txt", g))
    assert code == 0 and png.stat().st_size > 0
    rows = [ln.split("\t") for ln in out.splitlines() if not ln.startswith("#")]
    assert rows[0] == ["vertex", "degree", "profile", "initial", "final"] and len(rows) == g.order() + 1
    assert "passed True" in out
    code, out, _ = run(capsys, "discharge", "--family", "L2", "--json", write("c.txt", cycle(7)))
    assert code == 0 and json.loads(out)["vacuous"] is True


def test_verify(capsys, write):
    g = write("c5.txt", cycle(5))
    code, out, _ = run(capsys, "verify", g, write("bad.txt", "0 1\n1 2\n2 1\n3 2\n4 3\n"))
    assert code == 1 and out == "violation p4 0 1 2 3\n"
    code, out, _ = run(capsys, "verify", g, write("good.txt", "0 0\n1 1\n2 2\n3 0\n4 3\n"))
    assert (code, out) == (0, "ok\n")
    code, _, err = run(capsys, "verify", g, write("junk.txt", "0 x\n"))
    assert code == 2 and "line 1" in err


def test_search(capsys, write, tmp_path):
    stream = write("s.g6", "".join(serialize_graph6(cycle(n)) + "\n" for n in range(3, 9)))
    png = tmp_path / "s.png"
    code, out, _ = run(capsys, "search", "--target", "3", "--stream", stream, "--max-n", "9", "--plot", str(png))
    rows = out.splitlines()
    assert code == 0 and rows[0] == "graph6\tmad\tchi_s" and rows[1].split("\t") == ["Dhc", "2/1", "4"]
    assert png.exists()
    code, out, _ = run(capsys, "search", "--target", "2", "--max-n", "4", "--json")
    assert json.loads(out)["min_mad"] == "3/2"


def test_gen_is_seeded(capsys):
    a = run(capsys, "gen", "--n", "20", "--bound", "18/7", "--girth", "6", "--seed", "3")[1]
    b = run(capsys, "gen", "--n", "20", "--bound", "18/7", "--girth", "6", "--seed", "3")[1]
    assert a == b and parse_graph(a).order() >= 20
    rec = json.loads(run(capsys, "gen", "--n", "12", "--bound", "26/11", "--json")[1])
    assert rec["prng"] == "python-random-mt19937"


def test_decompose(capsys, write):
    code, out, _ = run(capsys, "decompose", "--scheme", "FI", "--trace", write("c5.txt", cycle(5)))
    assert code == 0 and out.splitlines()[1] == "I 0"
    code, out, _ = run(capsys, "decompose", "--scheme", "FI1I2", write("c5b.txt", cycle(5)))
    assert code == 1 and "girth" in out
    code, _, _ = run(capsys, "decompose", "--scheme", "FI1I2", "--no-girth", write("c5c.txt", cycle(5)))
    assert code == 0


def test_usage_errors(capsys, write, tmp_path):
    assert run(capsys, "mad", str(tmp_path / "missing.txt"))[0] == 2
    assert run(capsys, "mad", write("bad.txt", "0 0\n"))[0] == 2
    assert run(capsys, "mad", write("empty.txt", "n=0\n"))[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["detect", "x.txt"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["search", "--target", "0"])
    assert info.value.code == 2


def test_threads_env(capsys, write, monkeypatch):
    stream = write("s.g6", "".join(serialize_graph6(random_regular(8, 3, __import__("random").Random(i))) + "\n" for i in range(4)))
    monkeypatch.setenv("STARDECOMP_THREADS", "2")
    code, out2, _ = run(capsys, "search", "--target", "3", "--stream", stream, "--max-n", "9")
    monkeypatch.setenv("STARDECOMP_THREADS", "1")
    code, out1, _ = run(capsys, "search", "--target", "3", "--stream", stream, "--max-n", "9")
    assert out1 == out2
    monkeypatch.setenv("STARDECOMP_THREADS", "many")
    assert run(capsys, "search", "--target", "3", "--stream", stream)[0] == 2


def test_console_script_stdin():
    exe = shutil.which("stardecomp")
    cmd = [exe] if exe else [sys.executable, "-m", "stardecomp.cli"]
    done = subprocess.run(cmd + ["mad", "-"], input="0 1\n1 2\n2 3\n", capture_output=True, text=True, check=False)
    assert done.returncode == 0 and done.stdout == "3/2\n"
