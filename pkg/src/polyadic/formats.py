"""Text formats: NGT (n-ary table) and HGS (Hosszu-Gluskin data).

NGT::

    NGT 1
    arity <n>
    order <k>
    <k^n integers, lexicographic index order>

HGS::

    HGS 1
    arity <n>
    order <k>
    b <element>
    phi <k integers>
    <k^2 group-table integers, row-major>

Writers put k values per line; readers accept any whitespace layout after the
header lines.
"""

from __future__ import annotations

import re
from typing import Iterator, Sequence

from .core import NaryTable
from .groups import GroupTable, NotAGroup
from .hg import HgAlgebra

_WORD = re.compile(r"\S+")


class FormatError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


def _tokens(lines: Sequence[str], start: int) -> Iterator[tuple[str, int, int]]:
    for ln in range(start, len(lines)):
        for m in _WORD.finditer(lines[ln]):
            yield m.group(), ln + 1, m.start() + 1


def _header(lines: Sequence[str], idx: int, key: str) -> list[tuple[str, int]]:
    if idx >= len(lines):
        raise FormatError(f"missing '{key}' line", idx + 1, 1)
    words = [(m.group(), m.start() + 1) for m in _WORD.finditer(lines[idx])]
    if not words or words[0][0] != key:
        raise FormatError(f"expected '{key}'", idx + 1, words[0][1] if words else 1)
    return words[1:]


def _int(tok: str, line: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"not an integer: {tok!r}", line, col) from None


def _single(lines, idx, key) -> int:
    vals = _header(lines, idx, key)
    if len(vals) != 1:
        raise FormatError(f"'{key}' takes exactly one value", idx + 1, 1)
    tok, col = vals[0]
    return _int(tok, idx + 1, col)


def _values(lines, start, count, k, what) -> list[int]:
    out = []
    last = (start, 1)
    for tok, ln, col in _tokens(lines, start):
        v = _int(tok, ln, col)
        if not 0 <= v < k:
            raise FormatError(f"{what} value {v} outside 0..{k - 1}", ln, col)
        if len(out) == count:
            raise FormatError(f"too many {what} values (expected {count})", ln, col)
        out.append(v)
        last = (ln, col)
    if len(out) != count:
        raise FormatError(f"expected {count} {what} values, got {len(out)}", last[0], last[1])
    return out


def _magic(lines, tag):
    if not lines or lines[0].split() != [tag, "1"]:
        raise FormatError(f"expected '{tag} 1'", 1, 1)


def parse_ngt(text: str) -> NaryTable:
    lines = text.splitlines()
    _magic(lines, "NGT")
    n = _single(lines, 1, "arity")
    k = _single(lines, 2, "order")
    if n < 2:
        raise FormatError(f"arity must be >= 2, got {n}", 2, 7)
    if k < 1:
        raise FormatError(f"order must be >= 1, got {k}", 3, 7)
    if k**n > 2**20:
        raise FormatError(f"table of {k}^{n} entries exceeds 2^20", 3, 7)
    return NaryTable(n, k, _values(lines, 3, k**n, k, "table"))


def _grid(values: Sequence[int], width: int) -> list[str]:
    return [" ".join(str(int(v)) for v in values[i:i + width]) for i in range(0, len(values), width)]


def format_ngt(t: NaryTable) -> str:
    head = ["NGT 1", f"arity {t.arity}", f"order {t.order}"]
    return "\n".join(head + _grid(t.table, t.order)) + "\n"


def parse_hgs(text: str) -> HgAlgebra:
    lines = text.splitlines()
    _magic(lines, "HGS")
    n = _single(lines, 1, "arity")
    k = _single(lines, 2, "order")
    if k < 1:
        raise FormatError(f"order must be >= 1, got {k}", 3, 7)
    b = _single(lines, 3, "b")
    phi_toks = _header(lines, 4, "phi")
    if len(phi_toks) != k:
        raise FormatError(f"phi needs {k} values, got {len(phi_toks)}", 5, 1)
    phi = []
    for tok, col in phi_toks:
        v = _int(tok, 5, col)
        if not 0 <= v < k:
            raise FormatError(f"phi value {v} outside 0..{k - 1}", 5, col)
        phi.append(v)
    vals = _values(lines, 5, k * k, k, "group")
    try:
        G = GroupTable(k, vals)
    except NotAGroup as e:
        raise FormatError(f"group table invalid: {e}", 6, 1) from None
    return HgAlgebra(G, tuple(phi), b, n)


def format_hgs(h: HgAlgebra) -> str:
    head = ["HGS 1", f"arity {h.arity}", f"order {h.order}", f"b {h.b}",
            "phi " + " ".join(str(v) for v in h.phi)]
    return "\n".join(head + _grid(h.group.table, h.order)) + "\n"


def read_ngt(path) -> NaryTable:
    with open(path) as fh:
        return parse_ngt(fh.read())


def write_ngt(path, t: NaryTable) -> None:
    with open(path, "w") as fh:
        fh.write(format_ngt(t))


def read_hgs(path) -> HgAlgebra:
    with open(path) as fh:
        return parse_hgs(fh.read())


def write_hgs(path, h: HgAlgebra) -> None:
    with open(path, "w") as fh:
        fh.write(format_hgs(h))
