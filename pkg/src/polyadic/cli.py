"""Command line interface.  Exit status: 0 success/true, 1 false/invalid, 2 usage or I/O error."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import covering, enumeration, formats, hg, independence, representations, skew
from .core import GuardError, NaryGroup, NotAGroupError, check_axioms, neutral_elements


class UsageError(Exception):
    pass


def _elements(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise UsageError(f"bad element list {text!r}") from None


def _load_group(path) -> NaryGroup:
    t = formats.read_ngt(path)
    rep = check_axioms(t)
    if not rep.is_group:
        raise NotAGroupError(rep)
    return NaryGroup(t, rep)


def _emit(out, payload: dict, text: str, as_json: bool):
    if as_json:
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def _write_or_print(out, text: str, path: Optional[str]):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        out.write(text)


# -- verbs -----------------------------------------------------------------

def cmd_validate(a, out) -> int:
    t = formats.read_ngt(a.file)
    rep = check_axioms(t)
    lines = [f"n-ary group: {_yn(rep.is_group)}"]
    if not rep.is_group:
        lines.append(f"failure: {rep.failure_kind} witness {' '.join(map(str, rep.failure_witness))}")
    payload = {
        "group": rep.is_group,
        "failure_kind": rep.failure_kind,
        "failure_witness": list(rep.failure_witness) if rep.failure_witness else None,
    }
    _emit(out, payload, "\n".join(lines), a.json)
    return 0 if rep.is_group else 1


def cmd_analyze(a, out) -> int:
    g = _load_group(a.file)
    orders = [skew.order(g, x) for x in range(g.order)]
    semi = skew.is_semiabelian(g)
    endo = skew.skew_endomorphism_check(g, "direct")
    payload = {
        "arity": g.arity,
        "order": g.order,
        "skew": list(g.skew_map),
        "orders": orders,
        "neutral": sorted(neutral_elements(g)),
        "semiabelian": semi,
        "idempotent": hg.is_idempotent(g),
        "skew_endomorphism": endo,
        "chain": [sorted(s) for s in skew.g_chain(g)] if endo else None,
    }
    lines = [
        f"arity {g.arity}",
        f"order {g.order}",
        "skew " + " ".join(map(str, g.skew_map)),
        "orders " + " ".join(map(str, orders)),
        "neutral " + (" ".join(map(str, payload["neutral"])) or "-"),
        f"semiabelian: {_yn(semi)}",
        f"idempotent: {_yn(payload['idempotent'])}",
    ]
    lines.append(f"skew endomorphism: {_yn(endo)}")
    for s in payload["chain"] or []:
        lines.append("chain " + " ".join(map(str, s)))
    _emit(out, payload, "\n".join(lines), a.json)
    return 0


def cmd_decompose(a, out) -> int:
    g = _load_group(a.file)
    if not 0 <= a.at < g.order:
        raise UsageError(f"--at {a.at} outside 0..{g.order - 1}")
    h = hg.hg_decompose(g, a.at)
    text = formats.format_hgs(h)
    if a.json:
        _emit(out, {"arity": h.arity, "order": h.order, "b": h.b, "phi": list(h.phi),
                    "group": list(h.group.table)}, "", True)
    else:
        _write_or_print(out, text, a.output)
    return 0


def cmd_construct(a, out) -> int:
    h = formats.read_hgs(a.file)
    g = hg.hg_construct(h)
    if a.json:
        _emit(out, {"arity": g.arity, "order": g.order, "table": list(g.table.table)}, "", True)
    else:
        _write_or_print(out, formats.format_ngt(g.table), a.output)
    return 0


def cmd_iso(a, out) -> int:
    g1, g2 = _load_group(a.first), _load_group(a.second)
    m = hg.isomorphic(g1, g2)
    text = f"isomorphic: {_yn(m is not None)}"
    if m is not None:
        text += "\nmap " + " ".join(map(str, m))
    _emit(out, {"isomorphic": m is not None, "map": list(m) if m else None}, text, a.json)
    return 0 if m is not None else 1


def cmd_cover(a, out) -> int:
    g = _load_group(a.file)
    if not 0 <= a.anchor < g.order:
        raise UsageError(f"--anchor {a.anchor} outside 0..{g.order - 1}")
    cg = covering.cover(g, a.anchor)
    iso = covering.retract_vs_kernel(cg)
    G = cg.group
    if a.json:
        _emit(out, {"order": G.order, "table": list(G.table), "identity": G.identity,
                    "pairs": [list(p) for p in cg.carrier], "retract_iso": list(iso) if iso else None}, "", True)
    else:
        h = hg.HgAlgebra(G, tuple(range(G.order)), G.identity, 2)
        text = formats.format_hgs(h) + "".join(f"pair {x} {s}\n" for x, s in cg.carrier)
        _write_or_print(out, text, a.output)
    return 0 if iso is not None else 1


def cmd_enumerate(a, out) -> int:
    if a.method == "brute":
        found = enumeration.brute_force_enumerate(a.arity, a.order)
    else:
        found = enumeration.hg_enumerate(a.arity, a.order)
    agree = None
    if a.method == "both":
        brute = enumeration.brute_force_enumerate(a.arity, a.order)
        agree = [g.table for g in brute] == [g.table for g in found]
    reps = enumeration.iso_classes(found)
    paths = enumeration.emit(a.emit, reps) if a.emit else []
    payload = {"tables": len(found), "classes": len(reps),
               "representatives": [list(g.table.table) for g in reps]}
    lines = [f"tables {len(found)}", f"classes {len(reps)}"]
    if agree is not None:
        payload["oracle_agreement"] = agree
        lines.append(f"oracle agreement: {_yn(agree)}")
    lines += [f"wrote {p}" for p in paths]
    _emit(out, payload, "\n".join(lines), a.json)
    return 1 if agree is False else 0


def _fmt_complex(z: complex) -> str:
    re_, im_ = round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0
    return f"{re_:.12f} {im_:.12f}"


def cmd_represent(a, out) -> int:
    g = _load_group(a.file)
    args = _elements(a.args)
    try:
        if a.kind == "left":
            m = representations.left_regular(g, args)
        elif a.kind == "right":
            m = representations.right_regular(g, args)
        else:
            if g.arity != 3 or len(args) != 2:
                raise UsageError("middle representations need a ternary group and two elements")
            m = representations.middle_regular(g, args[0], args[1])
    except ValueError as e:
        raise UsageError(str(e)) from None
    ev = representations.eigenvalues(m)
    cp = representations.char_poly(m)
    ok = None
    if a.check:
        ok = representations.check_rep_axioms(representations.regular_rep(g, a.kind))
    payload = {"matrix": m.tolist(), "eigenvalues": [[round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0] for z in ev],
               "char_poly": cp}
    lines = [" ".join(map(str, row)) for row in m.tolist()]
    lines += ["eigen " + _fmt_complex(z) for z in ev]
    lines.append("charpoly " + " ".join(map(str, cp)))
    if ok is not None:
        payload["axioms"] = ok
        lines.append(f"axioms: {_yn(ok)}")
    _emit(out, payload, "\n".join(lines), a.json)
    return 1 if ok is False else 0


def cmd_independent(a, out) -> int:
    h = formats.read_hgs(a.file)
    X = _elements(a.set)
    res = {}
    if a.mode in ("G", "both"):
        res["G"] = independence.is_g_independent(h, X)
    if a.mode in ("M", "both"):
        res["M"] = independence.is_m_independent(h, X)
    lines = [f"{k}-independent: {_yn(v)}" for k, v in res.items()]
    _emit(out, res, "\n".join(lines), a.json)
    return 0 if all(res.values()) else 1


def cmd_classify(a, out) -> int:
    classes = hg.classify_cyclic(a.order, a.arity)
    reps = [c.representative for c in classes]
    paths = enumeration.emit(a.emit, reps) if a.emit else []
    payload = {"classes": [{"members": [[kind, dict(p)] for kind, p in c.members],
                            "table": list(c.representative.table.table)} for c in classes]}
    lines = [f"classes {len(classes)}"]
    for i, c in enumerate(classes, start=1):
        names = ", ".join(kind + "(" + ",".join(f"{k}={v}" for k, v in p) + ")" for kind, p in c.members)
        lines.append(f"class {i}: {names}")
    lines += [f"wrote {p}" for p in paths]
    _emit(out, payload, "\n".join(lines), a.json)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyadic", description="Finite n-ary groups: validate, decompose, classify, represent.")
    p.add_argument("--json", action="store_true", help="structured output")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="structured output")
        s.set_defaults(fn=fn)
        return s

    s = verb("validate", cmd_validate, "check the n-ary group axioms on an NGT file")
    s.add_argument("file")
    s = verb("analyze", cmd_analyze, "skew map, orders and structural properties")
    s.add_argument("file")
    s = verb("decompose", cmd_decompose, "Hosszu-Gluskin decomposition at an anchor (HGS output)")
    s.add_argument("file")
    s.add_argument("--at", type=int, required=True, help="anchor element a")
    s.add_argument("-o", "--output", help="write to file instead of stdout")
    s = verb("construct", cmd_construct, "build the NGT table of an HGS file")
    s.add_argument("file")
    s.add_argument("-o", "--output", help="write to file instead of stdout")
    s = verb("iso", cmd_iso, "test two NGT groups for isomorphism")
    s.add_argument("first")
    s.add_argument("second")
    s = verb("cover", cmd_cover, "covering group at an anchor")
    s.add_argument("file")
    s.add_argument("--anchor", type=int, default=0, help="anchor element c (default 0)")
    s.add_argument("-o", "--output", help="write to file instead of stdout")
    s = verb("enumerate", cmd_enumerate, "enumerate n-ary groups of a given order")
    s.add_argument("--arity", type=int, required=True)
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--method", choices=("hg", "brute", "both"), default="hg")
    s.add_argument("--emit", metavar="DIR", help="write one NGT file per class")
    s = verb("represent", cmd_represent, "regular bi-element representation matrix")
    s.add_argument("file")
    s.add_argument("--kind", choices=("left", "right", "middle"), default="left")
    s.add_argument("--args", required=True, help="comma-separated elements")
    s.add_argument("--check", action="store_true", help="verify the representation axioms")
    s = verb("independent", cmd_independent, "G-/M-independence of a set in an HGS algebra")
    s.add_argument("file")
    s.add_argument("--set", required=True, help="comma-separated elements")
    s.add_argument("--mode", choices=("G", "M", "both"), default="both")
    s = verb("classify-cyclic", cmd_classify, "classes of n-ary groups derived from Z_k")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--arity", type=int, required=True)
    s.add_argument("--emit", metavar="DIR", help="write one NGT file per class")
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    try:
        return a.fn(a, out)
    except (UsageError, OSError, formats.FormatError, GuardError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except (NotAGroupError, hg.HgInvariantError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
