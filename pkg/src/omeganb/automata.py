"""Deterministic automata and the graph primitives everything else builds on.

One ``Automaton`` type carries both a marker set (the finite, ``*``-language
view) and a Buchi set (the infinite, omega-language view).  Each operation
states which view it reads.  States are the integers ``0..n_states-1``;
the automaton with zero states and ``initial=None`` recognises nothing,
not even the empty string.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    events: tuple[str, ...]
    controllable: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "controllable", frozenset(self.controllable))
        if not self.events:
            raise ValueError("alphabet must contain at least one event")
        if len(set(self.events)) != len(self.events):
            raise ValueError("duplicate event identifiers in alphabet")
        extra = self.controllable - set(self.events)
        if extra:
            raise ValueError(f"controllable events not in alphabet: {sorted(extra)}")

    @classmethod
    def of(cls, controllable: Iterable[str], uncontrollable: Iterable[str]) -> "Alphabet":
        controllable = list(controllable)
        return cls(tuple(controllable) + tuple(uncontrollable), frozenset(controllable))

    @cached_property
    def uncontrollable(self) -> frozenset[str]:
        return frozenset(self.events) - self.controllable

    @cached_property
    def order(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.events)}

    def is_controllable(self, event: str) -> bool:
        return event in self.controllable


@dataclass(frozen=True)
class ControlPattern:
    """A set of enabled events; always contains every uncontrollable event."""

    alphabet: Alphabet
    enabled: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "enabled", frozenset(self.enabled))
        if not self.alphabet.uncontrollable <= self.enabled:
            raise ValueError("a control pattern must enable every uncontrollable event")
        if not self.enabled <= set(self.alphabet.events):
            raise ValueError("control pattern mentions events outside the alphabet")


@dataclass(frozen=True)
class Lasso:
    """The ultimately periodic word ``stem . cycle^omega``."""

    stem: tuple[str, ...]
    cycle: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "stem", tuple(self.stem))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ValueError("lasso cycle must be nonempty")

    @classmethod
    def of(cls, stem: str, cycle: str) -> "Lasso":
        """Build from whitespace-separated event strings: ``Lasso.of("c1", "u1 c3")``."""
        return cls(tuple(stem.split()), tuple(cycle.split()))

    def canonical(self) -> "Lasso":
        """Shortest stem and primitive cycle representing the same word."""
        cycle = self.cycle
        n = len(cycle)
        for p in range(1, n + 1):
            if n % p == 0 and cycle[:p] * (n // p) == cycle:
                cycle = cycle[:p]
                break
        stem = self.stem
        while stem and stem[-1] == cycle[-1]:
            stem = stem[:-1]
            cycle = cycle[-1:] + cycle[:-1]
        return Lasso(stem, cycle)

    def same_word(self, other: "Lasso") -> bool:
        return self.canonical() == other.canonical()

    def prefix(self, n: int) -> tuple[str, ...]:
        out = list(self.stem[:n])
        while len(out) < n:
            out.extend(self.cycle[: n - len(out)])
        return tuple(out)

    def __str__(self):
        return f"{' '.join(self.stem) or 'ε'} ({' '.join(self.cycle)})^ω"

    def to_json(self) -> dict:
        return {"stem": list(self.stem), "cycle": list(self.cycle)}


@dataclass(frozen=True)
class ValidationVerdict:
    ok: bool
    message: str = ""
    state: int | None = None
    event: str | None = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True, eq=False)
class Automaton:
    alphabet: Alphabet
    n_states: int
    delta: Mapping[tuple[int, str], int]
    initial: int | None
    marker: frozenset[int] = frozenset()
    buchi: frozenset[int] = frozenset()
    names: tuple[str, ...] | None = None
    name: str = ""
    role: str = ""
    meta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "marker", frozenset(self.marker))
        object.__setattr__(self, "buchi", frozenset(self.buchi))
        object.__setattr__(self, "delta", dict(self.delta))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))

    # construction ---------------------------------------------------------

    @classmethod
    def empty(cls, alphabet: Alphabet, **kw) -> "Automaton":
        return cls(alphabet, 0, {}, None, **kw)

    @classmethod
    def from_edges(
        cls,
        alphabet: Alphabet,
        states: Sequence,
        initial,
        edges: Iterable[tuple],
        marker: Iterable = (),
        buchi: Iterable | None = None,
        **kw,
    ) -> "Automaton":
        """Build from arbitrary hashable state ids; ``buchi=None`` means all states."""
        states = list(states)
        index = {s: i for i, s in enumerate(states)}
        if len(index) != len(states):
            raise ValueError("duplicate state identifiers")
        delta: dict[tuple[int, str], int] = {}
        for src, ev, dst in edges:
            key = (index[src], ev)
            if key in delta and delta[key] != index[dst]:
                raise ValueError(f"nondeterministic transition on {ev!r} from {src!r}")
            delta[key] = index[dst]
        buchi_ids = range(len(states)) if buchi is None else [index[s] for s in buchi]
        return cls(
            alphabet,
            len(states),
            delta,
            index[initial],
            frozenset(index[s] for s in marker),
            frozenset(buchi_ids),
            names=tuple(str(s) for s in states),
            **kw,
        )

    def with_(self, **changes) -> "Automaton":
        return replace(self, **changes)

    # views -----------------------------------------------------------------

    @property
    def states(self) -> range:
        return range(self.n_states)

    @property
    def is_empty(self) -> bool:
        return self.initial is None

    def label(self, q: int) -> str:
        return self.names[q] if self.names is not None else str(q)

    @cached_property
    def out(self) -> tuple[tuple[tuple[str, int], ...], ...]:
        """Outgoing ``(event, target)`` pairs per state, in alphabet order."""
        rows: list[list[tuple[str, int]]] = [[] for _ in range(self.n_states)]
        for (q, ev), r in self.delta.items():
            rows[q].append((ev, r))
        order = self.alphabet.order
        return tuple(tuple(sorted(row, key=lambda x: order[x[0]])) for row in rows)

    @cached_property
    def inn(self) -> tuple[tuple[tuple[int, str], ...], ...]:
        rows: list[list[tuple[int, str]]] = [[] for _ in range(self.n_states)]
        for (q, ev), r in self.delta.items():
            rows[r].append((q, ev))
        return tuple(tuple(row) for row in rows)

    def step(self, q: int | None, event: str) -> int | None:
        if q is None:
            return None
        return self.delta.get((q, event))

    def run(self, word: Iterable[str]) -> int | None:
        q = self.initial
        for ev in word:
            q = self.step(q, ev)
            if q is None:
                return None
        return q

    def accepts_star(self, word: Iterable[str]) -> bool:
        q = self.run(word)
        return q is not None and q in self.marker

    def generates(self, word: Iterable[str]) -> bool:
        return self.run(word) is not None

    def accepts_omega(self, lasso: Lasso) -> bool:
        """Buchi membership of ``lasso`` by direct replay of the unique run."""
        q = self.run(lasso.stem)
        if q is None:
            return False
        seen: dict[int, int] = {}
        hits: list[bool] = []
        while q not in seen:
            seen[q] = len(hits)
            hit = False
            for ev in lasso.cycle:
                q = self.step(q, ev)
                if q is None:
                    return False
                hit = hit or q in self.buchi
            hits.append(hit)
        return any(hits[seen[q]:])

    def restrict(self, keep: Iterable[int], drop: Iterable[tuple[int, str]] = ()) -> "Automaton":
        """Sub-automaton on ``keep`` (index order preserved) without the ``drop`` edges."""
        keep = sorted(set(keep))
        if self.initial not in keep:
            return self.with_(n_states=0, delta={}, initial=None, marker=frozenset(),
                              buchi=frozenset(), names=() if self.names is not None else None)
        new = {q: i for i, q in enumerate(keep)}
        drop = set(drop)
        delta = {
            (new[q], ev): new[r]
            for (q, ev), r in self.delta.items()
            if q in new and r in new and (q, ev) not in drop
        }
        return self.with_(
            n_states=len(keep),
            delta=delta,
            initial=new[self.initial],
            marker=frozenset(new[q] for q in self.marker if q in new),
            buchi=frozenset(new[q] for q in self.buchi if q in new),
            names=tuple(self.label(q) for q in keep) if self.names is not None else None,
        )

    def __repr__(self):
        return (f"Automaton(name={self.name!r}, states={self.n_states}, "
                f"transitions={len(self.delta)}, marker={len(self.marker)}, buchi={len(self.buchi)})")


def same_alphabet(a: Automaton, b: Automaton) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch("operands are over different alphabets")


def validate(a: Automaton) -> ValidationVerdict:
    """Check the structural invariants; report the first violation found."""
    if a.n_states < 0:
        return ValidationVerdict(False, "negative state count")
    if a.n_states == 0:
        if a.initial is not None:
            return ValidationVerdict(False, "initial state not in states", a.initial)
    elif a.initial is None or not 0 <= a.initial < a.n_states:
        return ValidationVerdict(False, "initial state not in states", a.initial)
    for q in sorted(a.marker):
        if not 0 <= q < a.n_states:
            return ValidationVerdict(False, "marker not subset of states", q)
    for q in sorted(a.buchi):
        if not 0 <= q < a.n_states:
            return ValidationVerdict(False, "buchi not subset of states", q)
    events = set(a.alphabet.events)
    for (q, ev), r in sorted(a.delta.items(), key=lambda kv: kv[0]):
        if not 0 <= q < a.n_states:
            return ValidationVerdict(False, "transition source not in states", q, ev)
        if ev not in events:
            return ValidationVerdict(False, "transition event not in alphabet", q, ev)
        if not 0 <= r < a.n_states:
            return ValidationVerdict(False, "transition target not in states", q, ev)
    if a.names is not None and len(a.names) != a.n_states:
        return ValidationVerdict(False, "state name count differs from state count")
    return ValidationVerdict(True)


def validate_plant(a: Automaton) -> ValidationVerdict:
    v = validate(a)
    if not v:
        return v
    missing = set(a.states) - a.buchi
    if missing:
        return ValidationVerdict(False, "plant requires buchi = states", min(missing))
    return v


# search -------------------------------------------------------------------

def bfs_tree(a: Automaton, sources: Iterable[int] | None = None) -> dict[int, tuple[int, str] | None]:
    """Breadth-first parent map from the initial state (or ``sources``)."""
    if sources is None:
        sources = [] if a.is_empty else [a.initial]
    parent: dict[int, tuple[int, str] | None] = {}
    queue = deque()
    for s in sources:
        if s not in parent:
            parent[s] = None
            queue.append(s)
    while queue:
        q = queue.popleft()
        for ev, r in a.out[q]:
            if r not in parent:
                parent[r] = (q, ev)
                queue.append(r)
    return parent


def path_from_tree(parent: Mapping[int, tuple[int, str] | None], q: int) -> tuple[str, ...]:
    word = []
    while parent[q] is not None:
        q, ev = parent[q]
        word.append(ev)
    return tuple(reversed(word))


def shortest_word_to(a: Automaton, targets: Iterable[int]) -> tuple[str, ...] | None:
    """Shortest string (ties by event order) driving the initial state into ``targets``."""
    targets = set(targets)
    parent = bfs_tree(a)
    for q in parent:  # dict preserves BFS discovery order
        if q in targets:
            return path_from_tree(parent, q)
    return None


def shortest_cycle(a: Automaton, q: int, within: Iterable[int] | None = None) -> tuple[str, ...] | None:
    """Shortest nonempty word leading from ``q`` back to ``q`` inside ``within``."""
    allowed = set(a.states) if within is None else set(within)
    parent: dict[int, tuple[int, str] | None] = {}
    queue = deque()
    for ev, r in a.out[q]:
        if r == q:
            return (ev,)
        if r in allowed and r not in parent:
            parent[r] = (q, ev)
            queue.append(r)
    while queue:
        x = queue.popleft()
        for ev, r in a.out[x]:
            if r == q:
                word = [ev]
                while x != q:
                    x, e = parent[x]
                    word.append(e)
                return tuple(reversed(word))
            if r in allowed and r not in parent:
                parent[r] = (x, ev)
                queue.append(r)
    return None


def reachable_set(a: Automaton) -> set[int]:
    return set(bfs_tree(a))


def coreachable_set(a: Automaton, targets: Iterable[int] | None = None) -> set[int]:
    """States from which ``targets`` (default: the marker set) can be reached."""
    seen = set(a.marker if targets is None else targets)
    stack = list(seen)
    while stack:
        r = stack.pop()
        for q, _ in a.inn[r]:
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


def reachable(a: Automaton) -> Automaton:
    return a.restrict(reachable_set(a))


def coreachable(a: Automaton) -> Automaton:
    return a.restrict(coreachable_set(a))


def trim(a: Automaton) -> Automaton:
    return coreachable(reachable(a))


def closure(k: Automaton) -> Automaton:
    """Recogniser of the prefix closure of the marker language."""
    t = trim(k)
    return t.with_(marker=frozenset(t.states))


def all_marked(a: Automaton) -> Automaton:
    return a.with_(marker=frozenset(a.states))


# products -----------------------------------------------------------------

def product_pairs(a: Automaton, b: Automaton) -> tuple[list[tuple[int, int]], dict[tuple[int, str], int]]:
    """Reachable synchronous product; pair list is in breadth-first discovery order."""
    same_alphabet(a, b)
    if a.is_empty or b.is_empty:
        return [], {}
    start = (a.initial, b.initial)
    index = {start: 0}
    pairs = [start]
    delta: dict[tuple[int, str], int] = {}
    i = 0
    while i < len(pairs):
        p, q = pairs[i]
        bq = dict(b.out[q])
        for ev, p2 in a.out[p]:
            q2 = bq.get(ev)
            if q2 is None:
                continue
            nxt = (p2, q2)
            if nxt not in index:
                index[nxt] = len(pairs)
                pairs.append(nxt)
            delta[(i, ev)] = index[nxt]
        i += 1
    return pairs, delta


def product(a: Automaton, b: Automaton) -> Automaton:
    """Synchronous product: marker is the pairs marked in both; buchi is left empty."""
    pairs, delta = product_pairs(a, b)
    if not pairs:
        return Automaton.empty(a.alphabet)
    return Automaton(
        a.alphabet,
        len(pairs),
        delta,
        0,
        frozenset(i for i, (p, q) in enumerate(pairs) if p in a.marker and q in b.marker),
        frozenset(),
        names=tuple(f"({p},{q})" for p, q in pairs),
    )


def plant_image(a: Automaton, g: Automaton) -> dict[int, int]:
    """Map each reachable state of ``a`` to the plant state reached by the same strings.

    Raises ``ValueError`` when ``a`` is not a refinement of ``g`` (some state is
    reached by strings leading to different plant states, or by a string the
    plant cannot generate).
    """
    pairs, _ = product_pairs(a, g)
    image: dict[int, int] = {}
    for p, q in pairs:
        if image.setdefault(p, q) != q:
            raise ValueError(f"state {a.label(p)} maps to several plant states")
    for (p, ev), _ in a.delta.items():
        if p in image and g.step(image[p], ev) is None:
            raise ValueError(f"event {ev} at {a.label(p)} is not generated by the plant")
    return image


def star_contains(a: Automaton, b: Automaton) -> tuple[bool, tuple[str, ...] | None]:
    """Marker-language containment ``Lm(a) ⊆ Lm(b)`` with a shortest counterexample."""
    same_alphabet(a, b)
    a = trim(a)
    if a.is_empty:
        return True, None
    sink = -1
    start = (a.initial, sink if b.is_empty else b.initial)
    parent: dict[tuple[int, int], tuple[tuple[int, int], str] | None] = {start: None}
    queue = deque([start])
    while queue:
        x, y = queue.popleft()
        if x in a.marker and (y == sink or y not in b.marker):
            word = []
            node = (x, y)
            while parent[node] is not None:
                node, ev = parent[node]
                word.append(ev)
            return False, tuple(reversed(word))
        for ev, x2 in a.out[x]:
            y2 = sink if y == sink else b.delta.get((y, ev), sink)
            if (x2, y2) not in parent:
                parent[(x2, y2)] = ((x, y), ev)
                queue.append((x2, y2))
    return True, None


def star_equivalent(a: Automaton, b: Automaton) -> bool:
    return star_contains(a, b)[0] and star_contains(b, a)[0]


def star_is_empty(a: Automaton) -> bool:
    return trim(a).is_empty


# strongly connected components --------------------------------------------

@dataclass(frozen=True)
class SCCPartition:
    components: tuple[frozenset[int], ...]
    cyclic: tuple[bool, ...]
    edges: frozenset[tuple[int, int]]
    index: Mapping[int, int]


def scc_partition(a: Automaton, within: Iterable[int] | None = None) -> SCCPartition:
    """Tarjan's algorithm over reachable states (optionally only those in ``within``).

    Components are returned in topological order of the component DAG.
    """
    allowed = reachable_set(a)
    if within is not None:
        allowed &= set(within)
    num: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[frozenset[int]] = []
    counter = 0
    for root in sorted(allowed):
        if root in num:
            continue
        work = [(root, iter(a.out[root]))]
        num[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            q, it = work[-1]
            advanced = False
            for _, r in it:
                if r not in allowed:
                    continue
                if r not in num:
                    num[r] = low[r] = counter
                    counter += 1
                    stack.append(r)
                    on_stack.add(r)
                    work.append((r, iter(a.out[r])))
                    advanced = True
                    break
                if r in on_stack:
                    low[q] = min(low[q], num[r])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[q])
            if low[q] == num[q]:
                comp = set()
                while True:
                    r = stack.pop()
                    on_stack.discard(r)
                    comp.add(r)
                    if r == q:
                        break
                comps.append(frozenset(comp))
    comps.reverse()
    index = {q: i for i, c in enumerate(comps) for q in c}
    cyclic = []
    for c in comps:
        if len(c) > 1:
            cyclic.append(True)
        else:
            (q,) = c
            cyclic.append(any(r == q for _, r in a.out[q]))
    edges = frozenset(
        (index[q], index[r])
        for q in index
        for _, r in a.out[q]
        if r in index and index[q] != index[r]
    )
    return SCCPartition(tuple(comps), tuple(cyclic), edges, index)


def has_cycle(a: Automaton, within: Iterable[int] | None = None) -> bool:
    return any(scc_partition(a, within).cyclic)
