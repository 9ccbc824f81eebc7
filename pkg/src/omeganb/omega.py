"""Infinite-behaviour synthesis.

Supremal markable sublanguage, the deterministic-Buchi game behind the
supremal omega-controllable sublanguage, the infimal omega-closed
superlanguage, and the checks built on them.
"""
from __future__ import annotations

from dataclasses import dataclass

from .automata import Automaton, Lasso, product_pairs, same_alphabet
from .langops import (
    ContainmentVerdict,
    clo,
    omega_contains,
    omega_equivalent,
    omega_intersect,
)
from .star import PreconditionError


def _require_inside(t: Automaton, g: Automaton, what: str) -> None:
    same_alphabet(t, g)
    v = omega_contains(t, g.with_(buchi=frozenset(g.states)))
    if not v.holds:
        raise PreconditionError(f"{what} is not contained in S(G)", v.counterexample)


@dataclass(frozen=True)
class GameArena:
    """Product of a specification DBA with the plant.

    ``succ[q]`` lists ``(event, target)`` for every plant-defined event at
    ``q``; ``target`` is ``None`` when the specification does not allow the
    event (firing it leaves the specification).
    """

    n: int
    initial: int | None
    pairs: tuple[tuple[int, int], ...]
    succ: tuple[tuple[tuple[str, int | None], ...], ...]
    uncontrollable: frozenset[str]
    buchi: frozenset[int]

    def unc_targets(self, q: int) -> list[int | None]:
        return [r for ev, r in self.succ[q] if ev in self.uncontrollable]

    def ctrl_moves(self, q: int) -> list[tuple[str, int]]:
        return [(ev, r) for ev, r in self.succ[q] if ev not in self.uncontrollable and r is not None]


def build_arena(e: Automaton, g: Automaton) -> tuple[GameArena, dict[tuple[int, str], int], tuple[str, ...]]:
    pairs, delta = product_pairs(e, g)
    succ = []
    for i, (x, p) in enumerate(pairs):
        row = []
        for ev, _ in g.out[p]:
            row.append((ev, delta.get((i, ev))))
        succ.append(tuple(row))
    arena = GameArena(
        n=len(pairs),
        initial=0 if pairs else None,
        pairs=tuple(pairs),
        succ=tuple(succ),
        uncontrollable=e.alphabet.uncontrollable,
        buchi=frozenset(i for i, (x, _) in enumerate(pairs) if x in e.buchi),
    )
    return arena, delta, tuple(f"({x},{p})" for x, p in pairs)


def _cpre(arena: GameArena, target: set[int]) -> set[int]:
    out = set()
    for q in range(arena.n):
        unc = arena.unc_targets(q)
        if any(r is None or r not in target for r in unc):
            continue
        if any(r is not None and r in target for _, r in arena.succ[q]):
            out.add(q)
    return out


def _solve(arena: GameArena) -> tuple[set[int], list[set[int]]]:
    """Nested fixpoint; also returns the attractor layers of the last outer round."""
    z = set(range(arena.n))
    while True:
        base = arena.buchi & _cpre(arena, z)
        layers = [set()]
        y: set[int] = set()
        while True:
            nxt = base | _cpre(arena, y)
            if nxt == y:
                break
            y = nxt
            layers.append(y)
        if y == z:
            return z, layers
        z = y


def winning_region(arena: GameArena) -> frozenset[int]:
    """νZ. μY. (buchi ∩ cpre(Z)) ∪ cpre(Y).

    ``cpre(X)`` holds the states all of whose plant-defined uncontrollable
    successors exist in the arena and lie in ``X``, and which have at least one
    successor in ``X``.
    """
    return frozenset(_solve(arena)[0])


def winning_strategy(arena: GameArena) -> dict[int, frozenset[str]]:
    """Memoryless winning strategy: controllable events each winning state enables.

    Accepting states of the first attractor layer may use any move that stays
    winning; every other state only moves to a strictly lower layer.
    """
    w, layers = _solve(arena)
    rank = {}
    for k, layer in enumerate(layers):
        for q in layer:
            rank.setdefault(q, k)
    strategy = {}
    for q in sorted(w):
        if rank[q] == 1:
            allowed = w
        else:
            allowed = layers[rank[q] - 1]
        strategy[q] = frozenset(ev for ev, r in arena.ctrl_moves(q) if r in allowed)
    return strategy


def supM(e: Automaton, g: Automaton) -> Automaton:
    """Supremal sublanguage of S(e) that is markable w.r.t. Lm(g).

    Re-reads the plant with its marker states as Buchi states and intersects.
    """
    _require_inside(e, g, "the specification")
    g_marked = g.with_(buchi=g.marker)
    return omega_intersect(g_marked, e)


def markable_check(t: Automaton, g: Automaton) -> ContainmentVerdict:
    """Every accepted word visits a plant marker state infinitely often.

    A failing verdict carries a lasso whose cycle avoids the marker states.
    """
    _require_inside(t, g, "the language")
    return omega_contains(t, supM(t, g))


def supComega(e: Automaton, g: Automaton) -> Automaton:
    """Supremal omega-controllable sublanguage of S(e) w.r.t. the plant ``g``.

    Solves the Buchi game on e×g and keeps the winning region with every
    transition inside it.
    """
    _require_inside(e, g, "the specification")
    arena, delta, names = build_arena(e, g)
    if arena.initial is None:
        return Automaton.empty(e.alphabet)
    w = winning_region(arena)
    full = Automaton(
        e.alphabet, arena.n, delta, 0,
        frozenset(i for i, (x, p) in enumerate(arena.pairs) if x in e.marker and p in g.marker),
        arena.buchi,
        names=names,
    )
    from .automata import reachable

    return reachable(full.restrict(w))


def infFomega(a: Automaton, g: Automaton) -> Automaton:
    """Infimal superlanguage of S(a) that is omega-closed w.r.t. S(g)."""
    _require_inside(a, g, "the language")
    return omega_intersect(clo(a), g.with_(buchi=frozenset(g.states)))


@dataclass(frozen=True)
class OmegaVerdict:
    holds: bool
    counterexample: Lasso | None = None

    def __bool__(self):
        return self.holds


def omega_controllable_check(t: Automaton, g: Automaton) -> OmegaVerdict:
    sup = supComega(t, g)
    v = omega_contains(t, sup)
    return OmegaVerdict(v.holds, v.counterexample)


def omega_closed_check(t: Automaton, g: Automaton) -> OmegaVerdict:
    """T = clo(T) ∩ S(g); a counterexample lies in clo(T) ∩ S(g) but not in T."""
    _require_inside(t, g, "the language")
    v = omega_contains(omega_intersect(clo(t), g.with_(buchi=frozenset(g.states))), t)
    return OmegaVerdict(v.holds, v.counterexample)


def omega_equal(a: Automaton, b: Automaton) -> bool:
    return omega_equivalent(a, b)
