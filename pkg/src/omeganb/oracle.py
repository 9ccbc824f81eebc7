"""Brute-force reference semantics for desk-scale instances.

Everything here works by enumeration: lassos are listed explicitly, supervisors
are tried one control map at a time, and sublanguages are built from every
edge subset.  Nothing here calls the fixpoint or game code it is used to check.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .automata import Alphabet, Automaton, Lasso, product_pairs


class OracleTooLarge(ValueError):
    """Instance exceeds the size guard of a brute-force routine."""


@dataclass(frozen=True)
class LassoSet:
    bound_stem: int
    bound_cycle: int
    members: frozenset[Lasso]

    def __len__(self):
        return len(self.members)

    def __contains__(self, lasso: Lasso):
        return lasso.canonical() in self.members


def _paths(a: Automaton, q: int, max_len: int):
    """Every (word, end state) generated from ``q`` with ``len(word) <= max_len``."""
    stack = [((), q)]
    while stack:
        w, r = stack.pop()
        yield w, r
        if len(w) < max_len:
            for ev, r2 in a.out[r]:
                stack.append((w + (ev,), r2))


def _closed_walks(a: Automaton, q: int, max_len: int):
    for w, r in _paths(a, q, max_len):
        if w and r == q:
            yield w


def enumerate_lassos(a: Automaton, bound_stem: int, bound_cycle: int, limit: int = 200_000) -> LassoSet:
    """Accepted lassos whose stem and cycle follow the automaton's own graph.

    The stem is any generated word of length ``<= bound_stem``; the cycle is a
    closed walk of length ``<= bound_cycle`` from the stem's end state.  Every
    member is replayed for acceptance and stored in canonical form.
    """
    if bound_cycle < 1:
        raise ValueError("cycle bound must be at least 1")
    out: set[Lasso] = set()
    if a.is_empty:
        return LassoSet(bound_stem, bound_cycle, frozenset())
    walks: dict[int, list[tuple[str, ...]]] = {}
    count = 0
    for stem, q in _paths(a, a.initial, bound_stem):
        if q not in walks:
            walks[q] = list(_closed_walks(a, q, bound_cycle))
        for cyc in walks[q]:
            count += 1
            if count > limit:
                raise OracleTooLarge(f"more than {limit} candidate lassos")
            lasso = Lasso(stem, cyc)
            if a.accepts_omega(lasso):
                out.add(lasso.canonical())
    return LassoSet(bound_stem, bound_cycle, frozenset(out))


def _bound(*autos: Automaton) -> int:
    n = 1
    for a in autos:
        n *= max(a.n_states, 1)
    return n


def _accepts(a: Automaton, lasso: Lasso) -> bool:
    return not a.is_empty and a.accepts_omega(lasso)


def _run_cycle_states(a: Automaton, lasso: Lasso) -> set[int] | None:
    """States visited infinitely often by the run on ``lasso`` (None if the run dies)."""
    q = a.run(lasso.stem)
    if q is None:
        return None
    seen: dict[int, int] = {}
    visits: list[set[int]] = []
    while q not in seen:
        seen[q] = len(visits)
        vs = set()
        for ev in lasso.cycle:
            q = a.step(q, ev)
            if q is None:
                return None
            vs.add(q)
        visits.append(vs)
    return set().union(*visits[seen[q]:])


# ---------------------------------------------------------------------------
# language-level references


def brute_contains(a: Automaton, b: Automaton, margin: int = 2) -> tuple[bool, Lasso | None]:
    """S(a) ⊆ S(b) by checking every lasso of ``a`` up to the product size.

    The verdict is recomputed with both bounds raised by ``margin`` and must
    not change.
    """
    n = _bound(a, b)
    verdicts = []
    for bound in (n, n + margin):
        bad = sorted((x for x in enumerate_lassos(a, bound, bound).members if not _accepts(b, x)),
                     key=lambda x: (len(x.stem) + len(x.cycle), x.stem, x.cycle))
        verdicts.append((not bad, bad[0] if bad else None))
        if margin == 0:
            break
    if verdicts[0][0] != verdicts[-1][0]:
        raise AssertionError("containment verdict changed when the bounds were raised")
    return verdicts[0]


def brute_intersect_member(a: Automaton, b: Automaton, lasso: Lasso) -> bool:
    return _accepts(a, lasso) and _accepts(b, lasso)


def brute_live_states(a: Automaton) -> set[int]:
    """States from which some accepted lasso starts."""
    live = set()
    n = max(a.n_states, 1)
    for q in a.states:
        sub = a.with_(initial=q)
        if enumerate_lassos(sub, n, n).members:
            live.add(q)
    return live


def brute_clo_member(a: Automaton, lasso: Lasso) -> bool:
    """Every finite prefix of ``lasso`` extends to some accepted word of ``a``."""
    if a.is_empty:
        return False
    live = brute_live_states(a)
    q = a.initial
    if q not in live:
        return False
    word = list(lasso.stem) + list(lasso.cycle) * (a.n_states + 1)
    for ev in word:
        q = a.step(q, ev)
        if q is None or q not in live:
            return False
    return True


def brute_pre_member(a: Automaton, word: tuple[str, ...]) -> bool:
    q = a.run(word)
    return q is not None and q in brute_live_states(a)


def brute_markable(t: Automaton, g: Automaton) -> tuple[bool, Lasso | None]:
    """Every accepted lasso of ``t`` drives ``g`` through a marker state infinitely often."""
    n = _bound(t, g)
    for x in sorted(enumerate_lassos(t, n, n).members, key=lambda x: (len(x.stem) + len(x.cycle), x.stem)):
        if not brute_supM_member(t, g, x):
            return False, x
    return True, None


def brute_supM_member(e: Automaton, g: Automaton, lasso: Lasso) -> bool:
    """Membership in the largest markable sublanguage.

    A single word forms a markable language exactly when its plant run visits
    a marker state infinitely often, and markable languages are closed under
    union, so the supremal one is the set of such words.
    """
    if not _accepts(e, lasso):
        return False
    cyc = _run_cycle_states(g, lasso)
    return cyc is not None and bool(cyc & g.marker)


# ---------------------------------------------------------------------------
# *-synthesis reference


def brute_supCstar(e: Automaton, g: Automaton, max_transitions: int = 12) -> Automaton:
    """Largest edge subset of e×g whose reachable part is controllable,
    *-closed and nonblocking, found by trying every subset."""
    pairs, delta = product_pairs(e, g)
    if not pairs:
        return Automaton.empty(e.alphabet)
    edges = sorted(delta.items())
    if len(edges) > max_transitions:
        raise OracleTooLarge(f"{len(edges)} product transitions exceed the guard of {max_transitions}")
    marked = {i for i, (x, p) in enumerate(pairs) if x in e.marker and p in g.marker}
    unc = e.alphabet.uncontrollable
    best: set[tuple[int, str]] = set()
    found = False
    for r in range(len(edges) + 1):
        for subset in itertools.combinations(range(len(edges)), r):
            chosen = {edges[j][0]: edges[j][1] for j in subset}
            if _valid_star(pairs, chosen, marked, e, g, unc):
                found = True
                reach = _reach(chosen)
                best |= {k for k in chosen if k[0] in reach}
    if not found:
        return Automaton.empty(e.alphabet)
    keep_delta = {k: delta[k] for k in best}
    prod = Automaton(e.alphabet, len(pairs), keep_delta, 0, frozenset(marked))
    return prod.restrict(_reach(keep_delta))


def _reach(chosen: dict[tuple[int, str], int]) -> set[int]:
    seen = {0}
    stack = [0]
    while stack:
        q = stack.pop()
        for (s, _), r in chosen.items():
            if s == q and r not in seen:
                seen.add(r)
                stack.append(r)
    return seen


def _valid_star(pairs, chosen, marked, e, g, unc) -> bool:
    reach = _reach(chosen)
    if not (reach & marked):
        return False
    for q in reach:
        x, p = pairs[q]
        if p in g.marker and x not in e.marker:
            return False
        for ev, _ in g.out[p]:
            if ev in unc and (q, ev) not in chosen:
                return False
    # nonblocking: every reachable state reaches a marked one inside the subset
    good = set(marked & reach)
    changed = True
    while changed:
        changed = False
        for (s, _), r in chosen.items():
            if s in reach and s not in good and r in good:
                good.add(s)
                changed = True
    return reach <= good


# ---------------------------------------------------------------------------
# omega-synthesis reference


@dataclass(frozen=True)
class BruteArena:
    pairs: tuple[tuple[int, int], ...]
    delta: dict
    buchi: frozenset[int]
    unc_moves: tuple[tuple[tuple[str, int | None], ...], ...]
    ctrl_moves: tuple[tuple[tuple[str, int], ...], ...]


def brute_arena(e: Automaton, g: Automaton) -> BruteArena:
    pairs, delta = product_pairs(e, g)
    unc_moves, ctrl_moves = [], []
    for i, (x, p) in enumerate(pairs):
        u, c = [], []
        for ev, _ in g.out[p]:
            r = delta.get((i, ev))
            if ev in e.alphabet.uncontrollable:
                u.append((ev, r))
            elif r is not None:
                c.append((ev, r))
        unc_moves.append(tuple(u))
        ctrl_moves.append(tuple(c))
    buchi = frozenset(i for i, (x, _) in enumerate(pairs) if x in e.buchi)
    return BruteArena(tuple(pairs), delta, buchi, tuple(unc_moves), tuple(ctrl_moves))


def _wins_from(arena: BruteArena, choice: tuple[frozenset[str], ...], q: int) -> bool:
    """Closed loop of one control map, from ``q``: no escape, no dead end,
    and no reachable cycle avoiding the buchi states."""
    seen = {q}
    stack = [q]
    succ: dict[int, list[int]] = {}
    while stack:
        s = stack.pop()
        nxt = []
        for _, r in arena.unc_moves[s]:
            if r is None:
                return False
            nxt.append(r)
        for ev, r in arena.ctrl_moves[s]:
            if ev in choice[s]:
                nxt.append(r)
        if not nxt:
            return False
        succ[s] = nxt
        for r in nxt:
            if r not in seen:
                seen.add(r)
                stack.append(r)
    # reachable non-buchi subgraph must be acyclic
    nodes = [s for s in seen if s not in arena.buchi]
    indeg = {s: 0 for s in nodes}
    for s in nodes:
        for r in succ[s]:
            if r in indeg:
                indeg[r] += 1
    queue = [s for s in nodes if indeg[s] == 0]
    removed = 0
    while queue:
        s = queue.pop()
        removed += 1
        for r in succ[s]:
            if r in indeg:
                indeg[r] -= 1
                if indeg[r] == 0:
                    queue.append(r)
    return removed == len(nodes)


def memoryless_winning(arena: BruteArena, max_maps: int = 1 << 14) -> frozenset[int]:
    """Arena states from which at least one memoryless control map wins.

    Only maps enabling at most one controllable event per state are tried.
    Dropping enabled events shrinks the set of closed-loop runs, so any winning
    map can be cut down to one of these while it still wins, as long as every
    state keeps a successor.
    """
    options = []
    total = 1
    for moves in arena.ctrl_moves:
        evs = sorted({ev for ev, _ in moves})
        subsets = [frozenset()] + [frozenset([ev]) for ev in evs]
        options.append(subsets)
        total *= len(subsets)
    if total > max_maps:
        raise OracleTooLarge(f"{total} control maps exceed the guard of {max_maps}")
    won: set[int] = set()
    n = len(arena.pairs)
    for choice in itertools.product(*options):
        for q in range(n):
            if q not in won and _wins_from(arena, choice, q):
                won.add(q)
        if len(won) == n:
            break
    return frozenset(won)


def brute_supComega_member(e: Automaton, g: Automaton, lasso: Lasso,
                           arena: BruteArena | None = None, winning: frozenset[int] | None = None) -> bool:
    """Membership in the supremal omega-controllable sublanguage of S(e).

    The word must be accepted by ``e`` and every arena state along its run must
    be one from which some control map wins.
    """
    if not _accepts(e, lasso):
        return False
    arena = arena or brute_arena(e, g)
    winning = brute_winning(e, g) if winning is None else winning
    idx = {pq: i for i, pq in enumerate(arena.pairs)}
    q = 0
    if q not in winning:
        return False
    x, p = arena.pairs[0]
    word = list(lasso.stem) + list(lasso.cycle) * (len(arena.pairs) + 1)
    for ev in word:
        x, p = e.step(x, ev), g.step(p, ev)
        if x is None or p is None:
            return False
        q = idx[(x, p)]
        if q not in winning:
            return False
    return True


def brute_winning(e: Automaton, g: Automaton, max_states: int = 6, max_controllable: int = 3) -> frozenset[int]:
    if len(e.alphabet.controllable) > max_controllable:
        raise OracleTooLarge("too many controllable events")
    arena = brute_arena(e, g)
    if len(arena.pairs) > max_states:
        raise OracleTooLarge(f"{len(arena.pairs)} arena states exceed the guard of {max_states}")
    return memoryless_winning(arena)


def memory_one_winning(e: Automaton, g: Automaton, max_maps: int = 1 << 14) -> frozenset[int]:
    """Winning arena states when the control map may also see the last event.

    Built by unfolding the arena over (state, last event) and reusing the
    memoryless search; returns the projection back to arena states.
    """
    base = brute_arena(e, g)
    start = (0, None)
    index = {start: 0}
    nodes = [start]
    unc, ctrl = [], []
    i = 0
    while i < len(nodes):
        q, _ = nodes[i]
        u, c = [], []
        for ev, r in base.unc_moves[q]:
            if r is None:
                u.append((ev, None))
                continue
            key = (r, ev)
            if key not in index:
                index[key] = len(nodes)
                nodes.append(key)
            u.append((ev, index[key]))
        for ev, r in base.ctrl_moves[q]:
            key = (r, ev)
            if key not in index:
                index[key] = len(nodes)
                nodes.append(key)
            c.append((ev, index[key]))
        unc.append(tuple(u))
        ctrl.append(tuple(c))
        i += 1
    unfolded = BruteArena(
        tuple((q, 0) for q, _ in nodes), {},
        frozenset(k for k, (q, _) in enumerate(nodes) if q in base.buchi),
        tuple(unc), tuple(ctrl),
    )
    won = memoryless_winning(unfolded, max_maps)
    return frozenset(nodes[k][0] for k in won)


# ---------------------------------------------------------------------------
# random instances


def random_automaton(rng: random.Random, alphabet: Alphabet, n_states: int, *, density: float = 0.5,
                     p_marker: float = 0.5, p_buchi: float | None = 0.5, name: str = "") -> Automaton:
    """Random deterministic automaton; ``p_buchi=None`` makes every state accepting."""
    delta = {}
    for q in range(n_states):
        for ev in alphabet.events:
            if rng.random() < density:
                delta[(q, ev)] = rng.randrange(n_states)
    marker = frozenset(q for q in range(n_states) if rng.random() < p_marker)
    buchi = frozenset(range(n_states)) if p_buchi is None else frozenset(
        q for q in range(n_states) if rng.random() < p_buchi)
    return Automaton(alphabet, n_states, delta, 0, marker, buchi, name=name)


def random_sub(rng: random.Random, a: Automaton, keep_edge: float = 0.7) -> Automaton:
    """Random sub-automaton of ``a``: same states, a random subset of the edges."""
    delta = {k: r for k, r in a.delta.items() if rng.random() < keep_edge}
    return a.with_(delta=delta)


SMALL = Alphabet.of(["a", "b"], ["u"])


def random_plant(rng: random.Random, alphabet: Alphabet = SMALL, max_states: int = 3,
                 density: float = 0.6) -> Automaton:
    return random_automaton(rng, alphabet, rng.randint(1, max_states), density=density,
                            p_buchi=None, name="plant")


def random_spec_of(rng: random.Random, g: Automaton, keep_edge: float = 0.8) -> Automaton:
    """Random specification inside the plant: an edge subset with fresh marker and buchi sets."""
    e = random_sub(rng, g, keep_edge)
    return e.with_(
        marker=frozenset(q for q in g.marker if rng.random() < 0.8),
        buchi=frozenset(q for q in g.states if rng.random() < 0.5),
        name="spec",
    )


def cap_bound(n: int, cap: int = 6) -> int:
    return min(n, cap)
