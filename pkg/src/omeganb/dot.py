"""Graphviz export."""
from __future__ import annotations

from collections.abc import Iterable

from .automata import Automaton


def _esc(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def _q(s: str) -> str:
    return '"' + _esc(s) + '"'


def export_dot(a: Automaton, disabled: Iterable[tuple[str, str]] = (), title: str | None = None,
               plant_image: dict[str, str] | None = None) -> str:
    """Deterministic DOT text.

    Marker states are double circles, buchi states carry a ``★`` in their
    label, uncontrollable edges are dashed.  ``disabled`` lists
    ``(state label, event)`` pairs drawn as red dotted stubs.
    """
    name = title or a.name or "automaton"
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;", '  node [shape=circle, fontname="Helvetica"];',
             '  edge [fontname="Helvetica"];']
    if a.is_empty:
        lines.append('  empty [shape=plaintext, label="(empty)"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    image = plant_image if plant_image is not None else a.meta.get("plant_image", {})
    lines.append('  __start [shape=point, width=0.08];')
    for q in a.states:
        label = a.label(q)
        text = _esc(label)
        if label in image:
            text += "\\n[" + _esc(image[label]) + "]"
        if q in a.buchi and len(a.buchi) != a.n_states:
            text += " ★"
        shape = "doublecircle" if q in a.marker else "circle"
        lines.append(f'  {_q(label)} [shape={shape}, label="{text}"];')
    lines.append(f"  __start -> {_q(a.label(a.initial))};")
    for q in a.states:
        for ev, r in a.out[q]:
            style = "" if a.alphabet.is_controllable(ev) else ", style=dashed"
            lines.append(f"  {_q(a.label(q))} -> {_q(a.label(r))} [label={_q(ev)}{style}];")
    for k, (state, ev) in enumerate(sorted(set(disabled))):
        stub = f"__off{k}"
        lines.append(f"  {stub} [shape=point, width=0.05, color=red];")
        lines.append(f"  {_q(state)} -> {stub} [label={_q(ev)}, color=red, fontcolor=red, style=dotted];")
    lines.append("}")
    return "\n".join(lines) + "\n"
