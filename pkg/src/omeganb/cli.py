"""Command-line entry point.

Exit codes: 0 success / property holds, 2 property fails or problem
unsolvable, 1 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .automata import Automaton, star_contains
from .dot import export_dot
from .fixtures import FIXTURES
from .io import DocumentError, dumps_json, load, save, serialize, write_atomic
from .langops import NotPrefixClosed, clo, lim_of_closed, omega_contains, omega_intersect, pre_of_omega
from .omega import markable_check, omega_closed_check, omega_controllable_check
from .solver import PruningError, synthesize, theorem1_check
from .star import PreconditionError, star_controllable, star_nonblocking, star_relatively_closed
from .verifier import check_omega_nonblocking

OK, FAIL, ERROR = 0, 2, 1


class UsageError(Exception):
    pass


def _color(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") is not None or not sys.stderr.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _err(msg: str) -> None:
    print(f"{_color('error', '31;1')}: {msg}", file=sys.stderr)


def _emit(obj, as_json: bool, text: str) -> None:
    print(dumps_json(obj) if as_json else text, end="" if as_json else "\n")


# subcommands ---------------------------------------------------------------


def cmd_synth(args) -> int:
    g, e_s, e_l, a_l = (load(p) for p in (args.plant, args.safety, args.max_legal, args.min_accept))
    res = synthesize(g, e_s, e_l, a_l, skip_markable=args.skip_markable)
    out = Path(args.out_dir)
    rep = res.report
    write_atomic(out / "report.json", dumps_json(rep.to_json()))
    if res.supervisor is not None:
        save(res.supervisor, out / "supervisor.json")
        disabled = [(d.state, d.event) for d in rep.disabled]
        write_atomic(out / "supervisor.dot", export_dot(res.supervisor, disabled))
    status = "solvable" if rep.solvable else "unsolvable"
    line = f"{status}: N={rep.n_final}"
    if rep.verification is not None:
        nb, df, lf = rep.verification.triple()
        line += f", nonblocking={nb}, deadlock_free={df}, livelock_free={lf}"
    if rep.diagnostics:
        line += " (" + "; ".join(rep.diagnostics) + ")"
    print(line)
    return OK if rep.solvable else FAIL


def cmd_verify(args) -> int:
    a = load(args.automaton)
    v = check_omega_nonblocking(a)
    lines = []
    for key, chk in (("nonblocking", v.nonblocking), ("deadlock-free", v.deadlock_free),
                     ("livelock-free", v.livelock_free)):
        lines.append(f"{key}: {'yes' if chk.holds else 'no'}" + (f"  witness: {chk.witness}" if chk.witness else ""))
    _emit(v.to_json(), args.json, "\n".join(lines))
    return OK if v.holds else FAIL


PROPERTIES = ("star-controllable", "star-closed", "star-nonblocking", "omega-controllable",
              "omega-closed", "markable", "pair")


def cmd_check(args) -> int:
    prop = args.property
    a = load(args.inputs[0])
    need_plant = prop != "star-nonblocking"
    g = load(args.plant) if args.plant else None
    if need_plant and g is None:
        raise UsageError(f"{prop} needs --plant")
    if prop == "pair":
        if len(args.inputs) != 2:
            raise UsageError("pair takes K and T")
        v = theorem1_check(a, load(args.inputs[1]), g)
        _emit(v.to_json(), args.json, "\n".join(
            f"{k}: {'yes' if c['holds'] else 'no'}" + (f"  {c.get('detail', '')} {c.get('witness', '')}".rstrip()
                                                        if not c["holds"] else "")
            for k, c in v.to_json().items()))
        return OK if v.holds else FAIL
    if len(args.inputs) != 1:
        raise UsageError(f"{prop} takes one automaton")
    if prop == "star-controllable":
        v = star_controllable(a, g)
    elif prop == "star-closed":
        v = star_relatively_closed(a, g)
    elif prop == "star-nonblocking":
        v = star_nonblocking(a)
    else:
        fn = {"omega-controllable": omega_controllable_check, "omega-closed": omega_closed_check,
              "markable": markable_check}[prop]
        v = fn(a, g)
    holds = v.holds
    witness = None
    if not holds:
        if hasattr(v, "violation"):
            w = v.violation
            witness = (" ".join(w.witness) or "ε") + (f" / {w.event}" if w.event else "")
        else:
            witness = str(v.counterexample)
    obj = {"property": prop, "holds": holds}
    if witness is not None:
        obj["witness"] = witness
    _emit(obj, args.json, f"{prop}: {'yes' if holds else 'no'}" + (f"  witness: {witness}" if witness else ""))
    return OK if holds else FAIL


def _write_or_print(a: Automaton, out: str | None) -> None:
    if out:
        save(a, out)
    else:
        print(serialize(a), end="")


def cmd_unary(args) -> int:
    a = load(args.automaton)
    fn = {"pre": pre_of_omega, "lim": lim_of_closed, "clo": clo}[args.command]
    _write_or_print(fn(a).with_(name=f"{args.command}({a.name})" if a.name else ""), args.output)
    return OK


def cmd_intersect(args) -> int:
    a, b = load(args.a), load(args.b)
    _write_or_print(omega_intersect(a, b), args.output)
    return OK


def cmd_contains(args) -> int:
    a, b = load(args.a), load(args.b)
    if args.star:
        ok, w = star_contains(a, b)
        witness = None if ok else (" ".join(w) or "ε")
    else:
        v = omega_contains(a, b)
        ok, witness = v.holds, None if v.holds else str(v.counterexample)
    obj = {"holds": ok}
    if witness is not None:
        obj["counterexample"] = witness
    _emit(obj, args.json, "holds" if ok else f"does not hold; counterexample: {witness}")
    return OK if ok else FAIL


def cmd_export_dot(args) -> int:
    a = load(args.automaton)
    disabled = []
    if args.report:
        try:
            rep = json.loads(Path(args.report).read_text(encoding="utf-8"))
            disabled = [(d["state"], d["event"]) for d in rep.get("disabled", [])]
        except (OSError, ValueError, KeyError, TypeError) as err:
            raise DocumentError("report", str(err), args.report) from None
    text = export_dot(a, disabled)
    if args.output:
        write_atomic(args.output, text)
    else:
        print(text, end="")
    return OK


def cmd_fixtures(args) -> int:
    out = Path(args.out_dir)
    for key in sorted(FIXTURES):
        p = FIXTURES[key]()
        for role, a in (("plant", p.plant), ("safety", p.safety), ("liveness", p.liveness),
                        ("min_accept", p.min_accept)):
            save(a, out / f"{key}_{role}.json")
    print(f"wrote {4 * len(FIXTURES)} documents to {out}")
    return OK


def cmd_oracle(args) -> int:
    from .derive import derive_all

    facts = derive_all(seed=args.seed, count=args.count)
    ok = all(f["holds"] for f in facts)
    text = "\n".join(f"{'PASS' if f['holds'] else 'FAIL'}  {f['name']}: {f['value']}" for f in facts)
    _emit({"facts": facts, "all_hold": ok}, args.json, text)
    return OK if ok else FAIL


# parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="omeganb", description="Omega-nonblocking supervisor synthesis")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synth", help="synthesize a supervisor")
    s.add_argument("--plant", required=True)
    s.add_argument("--safety", required=True, help="finite-behaviour specification")
    s.add_argument("--max-legal", required=True, help="largest admissible infinite behaviour")
    s.add_argument("--min-accept", required=True, help="smallest acceptable infinite behaviour")
    s.add_argument("--out-dir", required=True)
    s.add_argument("--skip-markable", action="store_true",
                   help="leave out the markability restriction and realise a strategy-only supervisor")
    s.set_defaults(func=cmd_synth)

    v = sub.add_parser("verify", help="check omega-nonblocking on a controlled automaton")
    v.add_argument("automaton")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("check", help="evaluate a named property")
    c.add_argument("property", choices=PROPERTIES)
    c.add_argument("inputs", nargs="+")
    c.add_argument("--plant")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    for name, helptext in (("pre", "prefixes of the infinite behaviour"),
                           ("lim", "infinite extensions of a prefix-closed marker language"),
                           ("clo", "topological closure of the infinite behaviour")):
        u = sub.add_parser(name, help=helptext)
        u.add_argument("automaton")
        u.add_argument("-o", "--output")
        u.set_defaults(func=cmd_unary)

    i = sub.add_parser("intersect", help="intersection of two infinite behaviours")
    i.add_argument("a")
    i.add_argument("b")
    i.add_argument("-o", "--output")
    i.set_defaults(func=cmd_intersect)

    k = sub.add_parser("contains", help="decide S(a) ⊆ S(b)")
    k.add_argument("a")
    k.add_argument("b")
    k.add_argument("--star", action="store_true", help="compare marker languages instead")
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_contains)

    o = sub.add_parser("oracle", help="re-derive the reference values with brute-force oracles")
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--count", type=int, default=50, help="random instances per suite")
    o.add_argument("--json", action="store_true")
    o.set_defaults(func=cmd_oracle)

    d = sub.add_parser("export-dot", help="render an automaton as Graphviz DOT")
    d.add_argument("automaton")
    d.add_argument("--report", help="synth report whose disablements are drawn")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_export_dot)

    f = sub.add_parser("fixtures", help="write the shipped problem documents")
    f.add_argument("out_dir")
    f.set_defaults(func=cmd_fixtures)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code not in (0, None) else OK
    try:
        return args.func(args)
    except (DocumentError, UsageError, NotPrefixClosed, PreconditionError, PruningError, ValueError) as err:
        _err(str(err))
        return ERROR
    except OSError as err:
        _err(f"{getattr(err, 'filename', '') or ''}: {err.strerror or err}")
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
