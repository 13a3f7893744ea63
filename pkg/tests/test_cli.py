import io
import json

import pytest

from polyadic.cli import main
from polyadic.core import NaryGroup, NaryTable
from polyadic.enumeration import catalog
from polyadic.formats import format_hgs, format_ngt
from polyadic.hg import HgAlgebra, cyclic_family, hg_construct


def run(*argv):
    out = io.StringIO()
    code = main(list(map(str, argv)), out=out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        p = tmp_path / name
        p.write_text(text)
        return p

    S3 = dict(catalog(6))["S3"]
    return {
        "g2": put("z3-g2.ngt", format_ngt(cyclic_family("g_d", 3, 3, d=2).table)),
        "f0": put("f0-z2.ngt", format_ngt(cyclic_family("f_a", 2, 3, a=0).table)),
        "f1": put("f1-z2.ngt", format_ngt(cyclic_family("f_a", 2, 3, a=1).table)),
        "z8": put("z8.ngt", format_ngt(NaryTable.from_function(4, 8, lambda *x: sum(x)))),
        "s3": put("s3.ngt", format_ngt(hg_construct(HgAlgebra(S3, tuple(range(6)), 0, 3)).table)),
        "alt": put("alt.ngt", format_ngt(NaryTable.from_function(3, 3, lambda x, y, z: x - y + z))),
        "bad": put("bad.ngt", "NGT 1\narity 3\norder 2\n" + "0 " * 8 + "\n"),
        "broken": put("broken.ngt", "NGT 1\narity 3\norder 2\n0 1 2\n"),
        "z2": put("z2.hgs", format_hgs(HgAlgebra(catalog(2)[0][1], (0, 1), 0, 3))),
        "tmp": tmp_path,
    }


def test_validate(files):
    assert run("validate", files["g2"]) == (0, "n-ary group: yes\n")
    code, text = run("validate", files["bad"])
    assert code == 1 and text.startswith("n-ary group: no\nfailure: ")
    code, text = run("--json", "validate", files["g2"])
    assert code == 0 and json.loads(text)["group"] is True


def test_iso(files):
    assert run("iso", files["f0"], files["f1"]) == (1, "isomorphic: no\n")
    code, text = run("iso", files["g2"], files["g2"])
    assert code == 0 and text == "isomorphic: yes\nmap 0 1 2\n"


def test_decompose_construct_round_trip(files):
    code, text = run("decompose", files["g2"], "--at", 0)
    assert code == 0
    lines = text.splitlines()
    assert lines[3] == "b 0" and lines[4] == "phi 0 2 1"
    hgs = files["tmp"] / "g2.hgs"
    assert run("decompose", files["g2"], "--at", 0, "-o", hgs)[0] == 0
    out = files["tmp"] / "back.ngt"
    assert run("construct", hgs, "-o", out)[0] == 0
    assert out.read_bytes() == files["g2"].read_bytes()
    assert run("decompose", files["g2"], "--at", 7)[0] == 2


def test_analyze(files):
    code, text = run("analyze", files["z8"])
    assert code == 0
    assert "skew " + " ".join(str(6 * x % 8) for x in range(8)) in text
    assert "chain 0 4" in text
    code, text = run("--json", "analyze", files["s3"])
    data = json.loads(text)
    assert code == 0 and data["semiabelian"] is False and data["neutral"] == [0]


def test_cover(files):
    code, text = run("cover", files["f0"])
    assert code == 0
    lines = text.splitlines()
    assert lines[:3] == ["HGS 1", "arity 2", "order 4"]
    assert lines[-4:] == ["pair 0 0", "pair 0 1", "pair 1 0", "pair 1 1"]
    code, text = run("cover", files["g2"], "--anchor", 1, "--json")
    assert code == 0 and json.loads(text)["order"] == 6


def test_enumerate(files):
    code, text = run("enumerate", "--arity", 3, "--order", 2, "--method", "both", "--emit", files["tmp"] / "em")
    assert code == 0
    assert text.splitlines()[:3] == ["tables 2", "classes 2", "oracle agreement: yes"]
    assert sorted(p.name for p in (files["tmp"] / "em").iterdir()) == ["n2a3-1.ngt", "n2a3-2.ngt"]
    assert run("enumerate", "--arity", 3, "--order", 3, "--method", "brute")[0] == 2


def test_represent(files):
    code, text = run("represent", files["alt"], "--args", "2,0", "--check")
    assert code == 0
    lines = text.splitlines()
    assert lines[:3] == ["0 1 0", "0 0 1", "1 0 0"]
    assert lines[3] == "eigen -0.500000000000 -0.866025403784"
    assert lines[5] == "eigen 1.000000000000 0.000000000000"
    assert lines[-2:] == ["charpoly 1 0 0 -1", "axioms: yes"]
    code, text = run("represent", files["alt"], "--kind", "middle", "--args", "0,0")
    assert code == 0 and text.splitlines()[:3] == ["1 0 0", "0 0 1", "0 1 0"]
    assert run("represent", files["alt"], "--kind", "middle", "--args", "0")[0] == 2
    assert run("represent", files["alt"], "--args", "a,b")[0] == 2


def test_independent(files):
    assert run("independent", files["z2"], "--set", "1") == (0, "G-independent: yes\nM-independent: yes\n")
    assert run("independent", files["z2"], "--set", "0") == (1, "G-independent: yes\nM-independent: no\n")
    assert run("independent", files["z2"], "--set", "0", "--mode", "G") == (0, "G-independent: yes\n")


def test_classify(files):
    code, text = run("classify-cyclic", "--order", 3, "--arity", 3)
    assert code == 0 and text.startswith("classes 2\nclass 1: ")
    assert "g_d(d=2)" in text


def test_errors(files, capsys):
    assert run("validate", files["tmp"] / "missing.ngt")[0] == 2
    assert run("validate", files["broken"])[0] == 2
    assert "line 4" in capsys.readouterr().err
    assert run("analyze", files["bad"])[0] == 1
    assert run("nosuchverb")[0] == 2
    assert run("enumerate", "--arity", 3)[0] == 2


def test_deterministic(files):
    assert run("classify-cyclic", "--order", 4, "--arity", 3) == run("classify-cyclic", "--order", 4, "--arity", 3)
    assert run("--json", "cover", files["g2"]) == run("cover", "--json", files["g2"])


def test_module_entry_point(files):
    import subprocess
    import sys

    r = subprocess.run([sys.executable, "-m", "polyadic", "validate", str(files["g2"])], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "n-ary group: yes\n"
