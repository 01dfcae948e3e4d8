"""Command-line interface: ``lquasi <command> ...``.

Every command builds a report with the fields
``{input, command, verdicts, witnesses, timings}``.  It is printed as text by
default and as JSON with ``--json``.

Exit codes: 0 ok, 1 a requested assertion failed, 2 input error, 3 resource
cap reached.  An "unknown" verdict is not a failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Optional

from . import __version__
from .algebra import FiniteLeftQuasigroup, find_isomorphism, properties
from .errors import InputError, LQError, ResourceCapError
from .io import format_lqt, parse_lqt

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

# defaults for the cap flags; a config file may override them, flags win
DEFAULTS: dict[str, Any] = {
    "format": "lqt",
    "transpose": False,
    "group_cap": None,
    "free_cap": None,
    "limit": None,
    "jobs": 1,
    "up_to_iso": False,
    "allow_large": False,
}


class Report:
    def __init__(self, command: str, input_: Any):
        self.command = command
        self.input = input_
        self.verdicts: list[dict] = []
        self.witnesses: list[dict] = []
        self.timings: dict[str, float] = {}
        self.failed = False
        self.text: list[str] = []
        self.payload: list[str] = []   # LQT blocks
        self._t0 = time.perf_counter()

    def verdict(self, name: str, value, assertion: bool = False, expected=True):
        self.verdicts.append({"name": name, "value": value})
        if assertion and value != expected:
            self.failed = True

    def witness(self, name: str, value):
        if value is not None:
            self.witnesses.append({"name": name, "value": value})

    def to_dict(self) -> dict:
        d = {
            "input": self.input,
            "command": self.command,
            "verdicts": self.verdicts,
            "witnesses": self.witnesses,
            "timings": self.timings,
        }
        if self.payload:
            d["models"] = self.payload
        d["status"] = "fail" if self.failed else "ok"
        return d

    def finish(self):
        self.timings["total_s"] = round(time.perf_counter() - self._t0, 6)


def _jsonable(x):
    import numpy as np
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if hasattr(x, "to_dict"):
        return _jsonable(x.to_dict())
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


# ---------------------------------------------------------------- input

def load_algebra(spec: str, fmt: str = "lqt", transpose: bool = False) -> FiniteLeftQuasigroup:
    """A path, ``-`` for stdin, or the name of a built-in instance (``D3``, ``P2``, ...)."""
    from . import corpus
    if spec == "-":
        return parse_lqt(sys.stdin.read(), fmt=fmt, transpose=transpose, name="stdin")
    p = Path(spec)
    if p.is_file():
        return parse_lqt(p.read_text(), fmt=fmt, transpose=transpose, name=p.stem)
    key = spec[1:] if spec.startswith("@") else spec
    if key in corpus.NAMED:
        return corpus.get(key)
    raise InputError(f"no such file or built-in instance: {spec}")


def _props_list(s: Optional[str]) -> list[str]:
    if not s:
        return []
    return [x.strip() for x in s.split(",") if x.strip()]


# ---------------------------------------------------------------- commands

def cmd_check(args, rep: Report):
    Q = load_algebra(args.file, args.format, args.transpose)
    flags = properties(Q).as_dict()
    requested = _props_list(args.props)
    table = {k[3:] if k.startswith("is_") else k: v for k, v in flags.items()}
    for name in requested:
        key = name.lower()
        if key not in table:
            raise InputError(f"unknown property {name!r}; known: {', '.join(sorted(table))}")
    rep.input = {"file": args.file, "name": Q.name, "order": Q.order}
    shown = requested or list(table)
    for key in shown:
        rep.verdict(key, table[key.lower()], assertion=key in requested and table[key.lower()] is not None)
    rep.text += [f"{k}: {_yn(table[k.lower()])}" for k in shown]


def _yn(v) -> str:
    if v is True:
        return "yes"
    if v is False:
        return "no"
    return str(v)


def cmd_classify(args, rep: Report):
    from .classify import FREE_ALGEBRA_CAP, classification_report
    Q = load_algebra(args.file, args.format, args.transpose)
    rep.input = {"file": args.file, "name": Q.name, "order": Q.order}
    r = classification_report(Q, free_cap=args.free_cap or FREE_ALGEBRA_CAP,
                              galois=not args.no_galois, obstructions=not args.no_obstructions)
    d = r.to_dict()
    rep.verdict("malcev", r.malcev.verdict)
    rep.verdict("connected", r.connected)
    rep.verdict("superconnected", r.superconnected)
    if r.malcev.free_order is not None:
        rep.verdict("free_algebra_order", r.malcev.free_order)
    for c in r.checks:
        rep.verdict(c.law, c.passed, assertion=True)
    rep.witness("malcev", r.malcev.witness)
    rep.witness("superconnected", r.superconnected_witness)
    rep.witness("report", d)
    rep.text.append(r.render())


def cmd_search(args, rep: Report):
    from .search import SearchSpec, SearchStats, search
    axioms = frozenset(_props_list(args.axioms))
    spec = SearchSpec(args.order, axioms=axioms, identities=list(args.identity or []), limit=args.limit,
                      up_to_iso=bool(args.up_to_iso), allow_large=bool(args.allow_large))
    rep.input = spec.to_dict()
    stats = SearchStats()
    blocks = []
    for i, Q in enumerate(search(spec, jobs=args.jobs or 1, stats=stats)):
        blocks.append(format_lqt(Q, comment=f"model {i}"))
    rep.payload = blocks
    rep.verdict("models", stats.models)
    rep.timings["search_s"] = round(stats.seconds, 6)
    rep.witness("stats", stats.to_dict())
    rep.text.append("\n".join(blocks))
    rep.text.append(f"# {stats.models} models ({'up to isomorphism' if spec.up_to_iso else 'labeled'}), "
                    f"{stats.nodes} nodes, {stats.seconds:.3f}s")


def cmd_con(args, rep: Report):
    from .congruence import congruence_lattice, is_coherent, is_regular, is_uniform
    Q = load_algebra(args.file, args.format, args.transpose)
    rep.input = {"file": args.file, "name": Q.name, "order": Q.order}
    L = congruence_lattice(Q)
    rep.verdict("count", len(L))
    for name, fn in (("uniform", is_uniform), ("regular", is_regular), ("coherent", is_coherent)):
        ok, w = fn(Q, L)
        rep.verdict(name, ok)
        rep.witness(name, w)
    rep.witness("lattice", L.to_dict())
    rep.witness("flags", L.flags())
    rep.text.append(f"{len(L)} congruences")
    for f in L.flags():
        tags = [t for t in ("abelian", "strongly_abelian") if f[t]]
        rep.text.append(f"  {f['congruence']}" + (f"  ({', '.join(tags)})" if tags else ""))
    for v in rep.verdicts[1:]:
        rep.text.append(f"{v['name']}: {_yn(v['value'])}")


def cmd_groups(args, rep: Report):
    from .action import cayley_kernel, dis, lmlt
    from .permgroup import DEFAULT_CAP, is_regular, is_solvable, is_transitive, orbits
    Q = load_algebra(args.file, args.format, args.transpose)
    rep.input = {"file": args.file, "name": Q.name, "order": Q.order}
    cap = args.group_cap or DEFAULT_CAP
    G, D = lmlt(Q, cap), dis(Q, cap)
    vals = {
        "lmlt_order": G.order(),
        "dis_order": D.order(),
        "lmlt_transitive": is_transitive(G),
        "dis_transitive": is_transitive(D),
        "dis_regular": is_regular(D),
        "dis_solvable": is_solvable(D),
    }
    for k, v in vals.items():
        rep.verdict(k, v)
    rep.witness("lmlt_generators", G.to_dict()["generators"])
    rep.witness("dis_generators", D.to_dict()["generators"])
    rep.witness("dis_orbits", [sorted(b) for b in orbits(D).blocks()])
    rep.witness("cayley_kernel", str(cayley_kernel(Q)))
    rep.text += [f"|LMlt| = {vals['lmlt_order']}", f"|Dis| = {vals['dis_order']}"]
    rep.text += [f"{k}: {_yn(v)}" for k, v in vals.items() if k.endswith(("transitive", "regular", "solvable"))]


def _int_list(s: str) -> list[int]:
    return [int(x) for x in s.replace(",", " ").split()]


def cmd_make(args, rep: Report):
    from . import construct as C
    fam, params = args.family, args.params
    rep.input = {"family": fam, "params": params}

    def need(k):
        if len(params) != k:
            raise InputError(f"make {fam} takes {k} integer argument(s)")
        try:
            return [int(p) for p in params]
        except ValueError:
            raise InputError(f"make {fam}: arguments must be integers") from None

    if fam == "coset":
        if args.group is None or args.auto is None:
            raise InputError("make coset needs --group and --auto")
        if args.group.startswith("cyclic:"):
            G = C.FiniteGroupTable.cyclic(int(args.group.split(":", 1)[1]))
        else:
            rows = [_int_list(line) for line in Path(args.group).read_text().splitlines()
                    if line.strip() and not line.lstrip().startswith("#")]
            G = C.FiniteGroupTable(rows)
        H = _int_list(args.subgroup) if args.subgroup else [G.identity]
        Q = C.coset_quandle(G, H, _int_list(args.auto))
    elif fam == "dis-coset":
        if len(params) != 2:
            raise InputError("make dis-coset takes FILE BASEPOINT")
        Q = C.displacement_coset_quandle(load_algebra(params[0], args.format, args.transpose), int(params[1]))
    elif fam in ("projection", "dihedral", "subtraction", "cyclic"):
        Q = C.FAMILIES[fam](*need(1))
    elif fam in ("affine", "constpow"):
        Q = C.FAMILIES[fam](*need(2))
    else:
        raise InputError(f"unknown family {fam!r}")
    text = format_lqt(Q, fmt=args.out_format)
    if args.output:
        Path(args.output).write_text(text)
    rep.payload = [text]
    rep.verdict("order", Q.order)
    rep.text.append(text.rstrip("\n"))


def cmd_iso(args, rep: Report):
    A = load_algebra(args.a, args.format, args.transpose)
    B = load_algebra(args.b, args.format, args.transpose)
    rep.input = {"a": args.a, "b": args.b}
    sigma = find_isomorphism(A, B)
    rep.verdict("isomorphic", sigma is not None, assertion=True)
    rep.witness("isomorphism", sigma)
    rep.text.append(f"isomorphic: {_yn(sigma is not None)}" + (f"  sigma = {sigma}" if sigma else ""))


def cmd_verify(args, rep: Report):
    from .terms import is_malcev_term_for, satisfies_identity
    Q = load_algebra(args.file, args.format, args.transpose)
    rep.input = {"file": args.file, "name": Q.name, "order": Q.order}
    if not args.identity and not args.malcev:
        raise InputError("verify needs --identity or --malcev")
    for ident in args.identity or []:
        ok, cx = satisfies_identity(Q, ident)
        rep.verdict(ident, ok, assertion=True)
        rep.witness(ident, cx)
        rep.text.append(f"{ident}: {'satisfied' if ok else 'violated'}" + (f" at {cx}" if cx else ""))
    for t in args.malcev or []:
        ok = is_malcev_term_for(Q, t)
        rep.verdict(f"malcev term {t}", ok, assertion=True)
        rep.text.append(f"Mal'cev term {t}: {_yn(ok)}")


COMMANDS = {
    "check": cmd_check,
    "classify": cmd_classify,
    "search": cmd_search,
    "con": cmd_con,
    "groups": cmd_groups,
    "make": cmd_make,
    "iso": cmd_iso,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--format", choices=("lqt", "rig"), default=None, help="input table format (rig is 1-based)")
    common.add_argument("--transpose", action="store_true", default=None, help="read columns as translations")
    common.add_argument("--config", help="JSON file with default option values")
    common.add_argument("--group-cap", type=int, default=None, help="maximum permutation group order")
    common.add_argument("--free-cap", type=int, default=None, help="maximum size of the free algebra F(2)")

    p = argparse.ArgumentParser(prog="lquasi", description="Finite left quasigroups, racks and quandles.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="property flags")
    s.add_argument("file")
    s.add_argument("--props", help="comma-separated properties to assert, e.g. quandle,latin")

    s = sub.add_parser("classify", parents=[common], help="full classification report")
    s.add_argument("file")
    s.add_argument("--no-galois", action="store_true")
    s.add_argument("--no-obstructions", action="store_true")

    s = sub.add_parser("search", parents=[common], help="enumerate models of given order")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--axioms", default="", help="comma-separated: idempotent,rack,quandle,semimedial,medial,"
                                                "involutory,latin,unipotent")
    s.add_argument("--identity", action="append", help="extra identity, may be repeated")
    s.add_argument("--limit", type=int, default=None)
    s.add_argument("--up-to-iso", action="store_true", default=None)
    s.add_argument("--jobs", type=int, default=None)
    s.add_argument("--allow-large", action="store_true", default=None, help="lift the order-6 exhaustive limit")

    s = sub.add_parser("con", parents=[common], help="congruence lattice")
    s.add_argument("file")

    s = sub.add_parser("groups", parents=[common], help="LMlt and Dis")
    s.add_argument("file")

    s = sub.add_parser("make", parents=[common], help="build a named family")
    s.add_argument("family", choices=("projection", "affine", "dihedral", "subtraction", "cyclic", "constpow",
                                      "coset", "dis-coset"))
    s.add_argument("params", nargs="*")
    s.add_argument("--group", help="for coset: 'cyclic:m' or a group table file")
    s.add_argument("--subgroup", help="for coset: elements of H (default trivial)")
    s.add_argument("--auto", help="for coset: images of the automorphism f")
    s.add_argument("--out-format", choices=("lqt", "rig"), default="lqt")
    s.add_argument("-o", "--output", help="write the table here")

    s = sub.add_parser("iso", parents=[common], help="isomorphism test")
    s.add_argument("a")
    s.add_argument("b")

    s = sub.add_parser("verify", parents=[common], help="check identities or a Mal'cev term")
    s.add_argument("file")
    s.add_argument("--identity", action="append")
    s.add_argument("--malcev", action="append", help="ternary term in x,y,z to test as a Mal'cev term")
    return p


def _apply_config(args) -> None:
    cfg = {}
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(cfg, dict):
            raise InputError("config must be a JSON object")
    for key, val in {**DEFAULTS, **{k.replace("-", "_"): v for k, v in cfg.items()}}.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, val)


def run(argv=None) -> tuple[int, Report]:
    args = build_parser().parse_args(argv)
    rep = Report(args.command, None)
    try:
        _apply_config(args)
        COMMANDS[args.command](args, rep)
        code = EXIT_FAIL if rep.failed else EXIT_OK
    except ResourceCapError as exc:
        rep.verdicts.append({"name": "error", "value": f"resource cap: {exc}"})
        code = EXIT_CAP
    except (InputError, OSError) as exc:
        rep.verdicts.append({"name": "error", "value": f"input error: {exc}"})
        code = EXIT_INPUT
    except LQError as exc:
        rep.verdicts.append({"name": "error", "value": f"{type(exc).__name__}: {exc}"})
        code = EXIT_FAIL
    rep.finish()
    rep.exit_code = code
    rep.json_mode = args.json
    return code, rep


def main(argv=None) -> int:
    code, rep = run(argv)
    if rep.json_mode:
        print(json.dumps(_jsonable(rep.to_dict()), indent=2))
    else:
        for v in rep.verdicts:
            if v["name"] == "error":
                print(f"lquasi: {v['value']}", file=sys.stderr)
        if rep.text:
            print("\n".join(rep.text))
    return code


if __name__ == "__main__":
    sys.exit(main())
