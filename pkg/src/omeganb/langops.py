"""Operator algebra on recognisers: pre, lim, clo, omega intersection,
emptiness and containment (with lasso witnesses)."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .automata import (
    Automaton,
    Lasso,
    all_marked,
    coreachable_set,
    product_pairs,
    same_alphabet,
    scc_partition,
    shortest_cycle,
    shortest_word_to,
    trim,
)


class NotPrefixClosed(ValueError):
    def __init__(self, witness: tuple[str, ...]):
        super().__init__(f"marker language is not prefix-closed: {' '.join(witness) or 'ε'} is unmarked")
        self.witness = witness


@dataclass(frozen=True)
class ContainmentVerdict:
    holds: bool
    counterexample: Lasso | None = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class EmptinessVerdict:
    empty: bool
    witness: Lasso | None = None

    def __bool__(self):
        return self.empty


def live_states(t: Automaton) -> set[int]:
    """Reachable states from which a reachable cycle through a buchi state exists."""
    scc = scc_partition(t)
    good = set()
    for comp, cyc in zip(scc.components, scc.cyclic):
        if cyc and comp & t.buchi:
            good |= comp
    return coreachable_set(t, good) & set(scc.index)


def pre_of_omega(t: Automaton) -> Automaton:
    """Recogniser of the prefixes of the omega-language; every state is marked."""
    sub = t.restrict(live_states(t))
    return sub.with_(marker=frozenset(sub.states), buchi=frozenset())


def lim_of_closed(k: Automaton) -> Automaton:
    """DBA for the omega-words all of whose prefixes lie in the (closed) marker language."""
    t = trim(k)
    unmarked = set(t.states) - t.marker
    if unmarked:
        raise NotPrefixClosed(shortest_word_to(t, unmarked))
    return t.with_(buchi=frozenset(t.states))


def clo(t: Automaton) -> Automaton:
    return lim_of_closed(pre_of_omega(t))


def _is_safety(a: Automaton) -> bool:
    return len(a.buchi) == a.n_states


def omega_intersect(a: Automaton, b: Automaton) -> Automaton:
    """DBA accepting S(a) ∩ S(b).

    When one operand accepts every infinite run (buchi = all states) the plain
    product suffices.  Otherwise states carry a phase bit: phase 0 waits for an
    ``a``-accepting state, phase 1 for a ``b``-accepting one, and the accepting
    states are the phase-1 states where ``b`` accepts.
    """
    same_alphabet(a, b)
    if a.is_empty or b.is_empty:
        return Automaton.empty(a.alphabet)
    if _is_safety(a) or _is_safety(b):
        pairs, delta = product_pairs(a, b)
        buchi = {i for i, (p, q) in enumerate(pairs) if p in a.buchi and q in b.buchi}
        return Automaton(
            a.alphabet, len(pairs), delta, 0,
            frozenset(i for i, (p, q) in enumerate(pairs) if p in a.marker and q in b.marker),
            frozenset(buchi),
            names=tuple(f"({p},{q})" for p, q in pairs),
        )
    start = (a.initial, b.initial, 0)
    index = {start: 0}
    triples = [start]
    delta = {}
    i = 0
    while i < len(triples):
        p, q, phase = triples[i]
        if phase == 0 and p in a.buchi:
            nphase = 1
        elif phase == 1 and q in b.buchi:
            nphase = 0
        else:
            nphase = phase
        bq = dict(b.out[q])
        for ev, p2 in a.out[p]:
            q2 = bq.get(ev)
            if q2 is None:
                continue
            nxt = (p2, q2, nphase)
            if nxt not in index:
                index[nxt] = len(triples)
                triples.append(nxt)
            delta[(i, ev)] = index[nxt]
        i += 1
    return Automaton(
        a.alphabet, len(triples), delta, 0,
        frozenset(i for i, (p, q, _) in enumerate(triples) if p in a.marker and q in b.marker),
        frozenset(i for i, (_, q, ph) in enumerate(triples) if ph == 1 and q in b.buchi),
        names=tuple(f"({p},{q},{ph})" for p, q, ph in triples),
    )


def _bfs_order(a: Automaton) -> list[int]:
    if a.is_empty:
        return []
    seen = {a.initial}
    order = [a.initial]
    queue = deque(order)
    while queue:
        q = queue.popleft()
        for _, r in a.out[q]:
            if r not in seen:
                seen.add(r)
                order.append(r)
                queue.append(r)
    return order


def omega_empty(a: Automaton) -> EmptinessVerdict:
    scc = scc_partition(a)
    good: set[int] = set()
    members: dict[int, frozenset[int]] = {}
    for comp, cyc in zip(scc.components, scc.cyclic):
        if cyc and comp & a.buchi:
            for q in comp & a.buchi:
                members[q] = comp
            good |= comp & a.buchi
    if not good:
        return EmptinessVerdict(True)
    for q in _bfs_order(a):
        if q in good:
            return EmptinessVerdict(False, Lasso(shortest_word_to(a, [q]), shortest_cycle(a, q, members[q])))
    raise AssertionError("unreachable")


def omega_contains(a: Automaton, b: Automaton) -> ContainmentVerdict:
    """Decide S(a) ⊆ S(b) for deterministic ``b``.

    Works on the product of ``a`` with ``b`` completed by a dead sink: a
    counterexample is a reachable cycle that contains an ``a``-accepting pair
    and avoids every ``b``-accepting pair (the sink never accepts).
    """
    same_alphabet(a, b)
    if a.is_empty:
        return ContainmentVerdict(True)
    sink = -1
    start = (a.initial, sink if b.is_empty else b.initial)
    index = {start: 0}
    pairs = [start]
    delta = {}
    i = 0
    while i < len(pairs):
        p, q = pairs[i]
        for ev, p2 in a.out[p]:
            q2 = sink if q == sink else b.delta.get((q, ev), sink)
            nxt = (p2, q2)
            if nxt not in index:
                index[nxt] = len(pairs)
                pairs.append(nxt)
            delta[(i, ev)] = index[nxt]
        i += 1
    prod = Automaton(
        a.alphabet, len(pairs), delta, 0,
        buchi=frozenset(k for k, (p, _) in enumerate(pairs) if p in a.buchi),
    )
    avoid = {k for k, (_, q) in enumerate(pairs) if q != sink and q in b.buchi}
    allowed = set(range(len(pairs))) - avoid
    scc = scc_partition(prod, allowed)
    targets: set[int] = set()
    members: dict[int, frozenset[int]] = {}
    for comp, cyc in zip(scc.components, scc.cyclic):
        if cyc and comp & prod.buchi:
            for k in comp & prod.buchi:
                members[k] = comp
            targets |= comp & prod.buchi
    if not targets:
        return ContainmentVerdict(True)
    for k in _bfs_order(prod):
        if k in targets:
            lasso = Lasso(shortest_word_to(prod, [k]), shortest_cycle(prod, k, members[k]))
            return ContainmentVerdict(False, lasso.canonical())
    raise AssertionError("unreachable")


def omega_equivalent(a: Automaton, b: Automaton) -> bool:
    return omega_contains(a, b).holds and omega_contains(b, a).holds


def as_omega_closed_loop(a: Automaton) -> Automaton:
    """Controlled-plant convention: every state accepting, i.e. S = lim(L)."""
    return a.with_(buchi=frozenset(a.states))


def closed_language(a: Automaton) -> Automaton:
    """Recogniser of L(a) (every reachable state marked)."""
    return all_marked(a)
