"""Supremal *-controllable and *-closed sublanguages and the matching checks."""
from __future__ import annotations

from dataclasses import dataclass

from .automata import (
    Automaton,
    bfs_tree,
    coreachable_set,
    path_from_tree,
    product_pairs,
    same_alphabet,
    star_contains,
    trim,
)


class PreconditionError(ValueError):
    """An operation's standing assumption does not hold; carries a witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message if witness is None else f"{message}: {_fmt(witness)}")
        self.witness = witness


def _fmt(w) -> str:
    if isinstance(w, tuple):
        return " ".join(w) or "ε"
    return str(w)


@dataclass(frozen=True)
class StarViolation:
    kind: str  # "controllability" | "relative-closure" | "blocking"
    state: int
    event: str | None
    witness: tuple[str, ...]


@dataclass(frozen=True)
class StarVerdict:
    holds: bool
    violation: StarViolation | None = None

    def __bool__(self):
        return self.holds


def supCstar(e: Automaton, g: Automaton) -> Automaton:
    """Supremal sublanguage of Lm(e) that is *-controllable w.r.t. L(g) and *-closed w.r.t. Lm(g).

    Fixpoint on the product e×g: product states that are marked in the plant
    but not in ``e`` cannot be in the closure; states where the plant can fire
    an uncontrollable event the candidate does not keep are removed; so are
    states that cannot reach a marked state.  Repeat until nothing changes.
    """
    same_alphabet(e, g)
    ok, w = star_contains(e, g)
    if not ok:
        raise PreconditionError("marker language of the candidate is not contained in Lm(G)", w)
    pairs, delta = product_pairs(e, g)
    if not pairs:
        return Automaton.empty(e.alphabet)
    prod = Automaton(
        e.alphabet, len(pairs), delta, 0,
        frozenset(i for i, (x, p) in enumerate(pairs) if x in e.marker and p in g.marker),
        names=tuple(f"({x},{p})" for x, p in pairs),
    )
    unc = e.alphabet.uncontrollable
    alive = {i for i, (x, p) in enumerate(pairs) if not (p in g.marker and x not in e.marker)}
    while True:
        before = len(alive)
        for i in sorted(alive):
            _, p = pairs[i]
            for ev, _ in g.out[p]:
                if ev in unc:
                    r = delta.get((i, ev))
                    if r is None or r not in alive:
                        alive.discard(i)
                        break
        # coreachability inside the surviving part
        good = {i for i in alive if i in prod.marker}
        stack = list(good)
        while stack:
            r = stack.pop()
            for q, _ in prod.inn[r]:
                if q in alive and q not in good:
                    good.add(q)
                    stack.append(q)
        alive = good
        if len(alive) == before:
            break
    sub = prod.restrict(alive)
    return sub.restrict(bfs_tree(sub))


def star_controllable(k: Automaton, g: Automaton) -> StarVerdict:
    """Every uncontrollable plant continuation of a string in the closure stays in the closure."""
    same_alphabet(k, g)
    kt = trim(k)
    pairs, delta = product_pairs(kt, g)
    if not pairs:
        return StarVerdict(True)
    prod = Automaton(k.alphabet, len(pairs), delta, 0)
    parent = bfs_tree(prod)
    for i in parent:
        x, p = pairs[i]
        for ev, _ in g.out[p]:
            if ev in k.alphabet.uncontrollable and (x, ev) not in kt.delta:
                return StarVerdict(False, StarViolation(
                    "controllability", x, ev, path_from_tree(parent, i)))
    return StarVerdict(True)


def star_relatively_closed(k: Automaton, g: Automaton) -> StarVerdict:
    """K = closure(K) ∩ Lm(g)."""
    same_alphabet(k, g)
    kt = trim(k)
    pairs, delta = product_pairs(kt, g)
    if not pairs:
        return StarVerdict(True)
    prod = Automaton(k.alphabet, len(pairs), delta, 0)
    parent = bfs_tree(prod)
    for i in parent:
        x, p = pairs[i]
        if (p in g.marker) != (x in kt.marker):
            return StarVerdict(False, StarViolation(
                "relative-closure", x, None, path_from_tree(parent, i)))
    return StarVerdict(True)


def star_nonblocking(k: Automaton) -> StarVerdict:
    parent = bfs_tree(k)
    co = coreachable_set(k)
    for q in parent:
        if q not in co:
            return StarVerdict(False, StarViolation("blocking", q, None, path_from_tree(parent, q)))
    return StarVerdict(True)
