"""JSON automaton documents: parsing with positioned diagnostics, deterministic
serialization, and atomic file writes."""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .automata import Alphabet, Automaton


class DocumentError(ValueError):
    """Malformed automaton document; ``where`` names the line/column or field."""

    def __init__(self, where: str, message: str, source: str | None = None):
        self.where = where
        self.message = message
        self.source = source
        prefix = f"{source}: " if source else ""
        super().__init__(f"{prefix}{where}: {message}")


def _need(doc: dict, key: str, kind, where: str):
    if key not in doc:
        raise DocumentError(where, f"missing field {key!r}")
    val = doc[key]
    if not isinstance(val, kind):
        raise DocumentError(f"{where}.{key}" if where != "$" else key,
                            f"expected {getattr(kind, '__name__', kind)}")
    return val


def _state_id(x, where: str) -> str:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise DocumentError(where, "state ids must be strings or integers")
    return str(x)


def from_dict(doc, source: str | None = None) -> Automaton:
    try:
        return _from_dict(doc)
    except DocumentError as err:
        if source and not err.source:
            raise DocumentError(err.where, err.message, source) from None
        raise


def _from_dict(doc) -> Automaton:
    if not isinstance(doc, dict):
        raise DocumentError("$", "document must be a JSON object")
    alpha = _need(doc, "alphabet", dict, "$")
    ctrl = _need(alpha, "controllable", list, "alphabet")
    unc = _need(alpha, "uncontrollable", list, "alphabet")
    for i, ev in enumerate(ctrl + unc):
        if not isinstance(ev, str) or not ev:
            field = f"alphabet.controllable[{i}]" if i < len(ctrl) else f"alphabet.uncontrollable[{i - len(ctrl)}]"
            raise DocumentError(field, "events must be non-empty strings")
    try:
        alphabet = Alphabet.of(ctrl, unc)
    except ValueError as err:
        raise DocumentError("alphabet", str(err)) from None

    raw_states = _need(doc, "states", list, "$")
    states = [_state_id(s, f"states[{i}]") for i, s in enumerate(raw_states)]
    seen = set()
    for i, s in enumerate(states):
        if s in seen:
            raise DocumentError(f"states[{i}]", f"duplicate state {s!r}")
        seen.add(s)

    role = doc.get("role", "")
    if not isinstance(role, str):
        raise DocumentError("role", "expected str")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("name", "expected str")

    if "initial" not in doc:
        raise DocumentError("$", "missing field 'initial'")
    initial = doc["initial"]
    if initial is None:
        if states:
            raise DocumentError("initial", "a non-empty automaton needs an initial state")
    else:
        initial = _state_id(initial, "initial")
        if initial not in seen:
            raise DocumentError("initial", f"undeclared state {initial!r}")

    def state_list(key: str, default):
        if key not in doc:
            return default
        vals = doc[key]
        if not isinstance(vals, list):
            raise DocumentError(key, "expected list")
        out = []
        for i, s in enumerate(vals):
            s = _state_id(s, f"{key}[{i}]")
            if s not in seen:
                raise DocumentError(f"{key}[{i}]", f"undeclared state {s!r}")
            out.append(s)
        return out

    marker = state_list("marker", [])
    buchi = state_list("buchi", None)

    raw_edges = _need(doc, "transitions", list, "$")
    edges = []
    used: dict[tuple[str, str], int] = {}
    for i, t in enumerate(raw_edges):
        where = f"transitions[{i}]"
        if not isinstance(t, list) or len(t) != 3:
            raise DocumentError(where, "expected [from, event, to]")
        src = _state_id(t[0], where + "[0]")
        ev = t[1]
        dst = _state_id(t[2], where + "[2]")
        if src not in seen:
            raise DocumentError(where + "[0]", f"undeclared state {src!r}")
        if dst not in seen:
            raise DocumentError(where + "[2]", f"undeclared state {dst!r}")
        if not isinstance(ev, str) or ev not in alphabet.order:
            raise DocumentError(where + "[1]", f"undeclared event {ev!r}")
        if (src, ev) in used:
            raise DocumentError(where, f"nondeterminism: event {ev!r} from {src!r} already defined "
                                       f"at transitions[{used[(src, ev)]}]")
        used[(src, ev)] = i
        edges.append((src, ev, dst))

    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise DocumentError("meta", "expected object")
    if initial is None:
        if edges:
            raise DocumentError("transitions", "an empty automaton has no transitions")
        return Automaton.empty(alphabet, names=(), name=name, role=role, meta=meta)
    return Automaton.from_edges(alphabet, states, initial, edges, marker, buchi,
                                name=name, role=role, meta=meta)


def parse(text: str, source: str | None = None) -> Automaton:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise DocumentError(f"line {err.lineno}, column {err.colno}", err.msg, source) from None
    return from_dict(doc, source)


def load(path: str | os.PathLike) -> Automaton:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as err:
        raise DocumentError("file", err.strerror or str(err), str(p)) from None
    return parse(text, str(p))


def to_dict(a: Automaton) -> dict:
    names = [a.label(q) for q in a.states]
    doc = {
        "name": a.name,
        "role": a.role,
        "alphabet": {
            "controllable": [e for e in a.alphabet.events if a.alphabet.is_controllable(e)],
            "uncontrollable": [e for e in a.alphabet.events if not a.alphabet.is_controllable(e)],
        },
        "states": names,
        "initial": None if a.is_empty else names[a.initial],
        "marker": [names[q] for q in sorted(a.marker)],
        "buchi": [names[q] for q in sorted(a.buchi)],
        "transitions": [[names[q], ev, names[r]] for q in a.states for ev, r in a.out[q]],
    }
    if a.meta:
        doc["meta"] = dict(a.meta)
    return doc


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def serialize(a: Automaton) -> str:
    """Stable text form: one field per line, one transition per line."""
    doc = to_dict(a)
    lines = []
    for key, val in doc.items():
        if key == "transitions" and val:
            rows = ",\n".join("    " + json.dumps(t, ensure_ascii=False) for t in val)
            lines.append(f'  "transitions": [\n{rows}\n  ]')
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(val, ensure_ascii=False)}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the same directory, then rename over ``path``."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{p.name}.", dir=p.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, p)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save(a: Automaton, path: str | os.PathLike) -> None:
    write_atomic(path, serialize(a))


def structurally_equal(a: Automaton, b: Automaton) -> bool:
    """Same alphabet, state names, initial, marker, buchi and labelled transitions."""
    if a.alphabet != b.alphabet or a.n_states != b.n_states or a.is_empty != b.is_empty:
        return False
    la = [a.label(q) for q in a.states]
    lb = [b.label(q) for q in b.states]
    if la != lb:
        return False
    if a.initial != b.initial or a.marker != b.marker or a.buchi != b.buchi:
        return False
    return dict(a.delta) == dict(b.delta)
