import pytest
from hypothesis import given

from polyadic.formats import (
    FormatError,
    format_hgs,
    format_ngt,
    parse_hgs,
    parse_ngt,
    read_ngt,
    write_hgs,
    read_hgs,
    write_ngt,
)
from polyadic.groups import cyclic_group
from polyadic.hg import HgAlgebra, HgInvariantError, cyclic_family, hg_decompose

from conftest import groups_strategy


def test_ngt_layout():
    g = cyclic_family("f_a", 2, 3, a=1)
    text = format_ngt(g.table)
    assert text == "NGT 1\narity 3\norder 2\n1 0\n0 1\n0 1\n1 0\n"
    assert parse_ngt(text) == g.table


def test_ngt_free_layout():
    t = parse_ngt("NGT 1\narity 2\norder 2\n0 1 1\n  0\n")
    assert t.table == (0, 1, 1, 0)


@pytest.mark.parametrize("text,line,col", [
    ("NGT 2\narity 2\norder 2\n0 1 1 0\n", 1, 1),
    ("NGT 1\narity 2\norder 2\n0 1 1\n", 4, 5),
    ("NGT 1\narity 2\norder 2\n0 1 1 0 1\n", 4, 9),
    ("NGT 1\narity 2\norder 2\n0 1 2 0\n", 4, 5),
    ("NGT 1\narity 2\norder 2\n0 x 1 0\n", 4, 3),
    ("NGT 1\narty 2\norder 2\n0 1 1 0\n", 2, 1),
    ("NGT 1\narity 2\n", 3, 1),
])
def test_ngt_errors(text, line, col):
    with pytest.raises(FormatError) as e:
        parse_ngt(text)
    assert (e.value.line, e.value.col) == (line, col)


def test_hgs_round_trip(tmp_path):
    h = hg_decompose(cyclic_family("g_d", 3, 3, d=2), 0)
    text = format_hgs(h)
    assert text.splitlines()[:5] == ["HGS 1", "arity 3", "order 3", "b 0", "phi 0 2 1"]
    assert parse_hgs(text) == h
    p = tmp_path / "x.hgs"
    write_hgs(p, h)
    assert read_hgs(p) == h


def test_hgs_errors():
    good = format_hgs(HgAlgebra(cyclic_group(3), (0, 2, 1), 0, 3))
    with pytest.raises(HgInvariantError) as e:
        parse_hgs(good.replace("arity 3", "arity 4"))
    assert "phi^(n-1)" in str(e.value)
    with pytest.raises(FormatError):
        parse_hgs(good.replace("phi 0 2 1", "phi 0 2"))
    with pytest.raises(FormatError):
        parse_hgs(good.replace("phi 0 2 1", "phi 0 2 3"))
    with pytest.raises(FormatError):
        parse_hgs(good.replace("0 1 2\n1 2 0", "0 1 2\n1 1 0"))


@given(groups_strategy(ns=(2, 3, 4), max_k=5))
def test_ngt_round_trip(tmp_path_factory, g):
    p = tmp_path_factory.mktemp("ngt") / "g.ngt"
    write_ngt(p, g.table)
    assert read_ngt(p) == g.table
    assert parse_ngt(format_ngt(g.table)) == g.table
