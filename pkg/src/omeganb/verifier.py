"""Omega-nonblocking checks on a controlled automaton.

The automaton is read as a closed loop: L is everything it generates, Lm its
marked strings, and its infinite behaviour is every infinite run.
"""
from __future__ import annotations

from dataclasses import dataclass

from .automata import (
    Automaton,
    Lasso,
    bfs_tree,
    coreachable_set,
    path_from_tree,
    scc_partition,
    shortest_cycle,
)


def _word(w: tuple[str, ...]) -> str:
    return " ".join(w) if w else "ε"


@dataclass(frozen=True)
class Check:
    holds: bool
    witness: str | None = None
    lasso: Lasso | None = None

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        out = {"holds": self.holds}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.lasso is not None:
            out["lasso"] = self.lasso.to_json()
        return out


@dataclass(frozen=True)
class OmegaNonblockingVerdict:
    nonblocking: Check
    deadlock_free: Check
    livelock_free: Check

    @property
    def holds(self) -> bool:
        return self.nonblocking.holds and self.deadlock_free.holds and self.livelock_free.holds

    def __bool__(self):
        return self.holds

    def triple(self) -> tuple[bool, bool, bool]:
        return self.nonblocking.holds, self.deadlock_free.holds, self.livelock_free.holds

    def to_json(self) -> dict:
        return {
            "nonblocking": self.nonblocking.to_json(),
            "deadlock_free": self.deadlock_free.to_json(),
            "livelock_free": self.livelock_free.to_json(),
        }


def _first_bad(a: Automaton, good: set[int]) -> Check:
    parent = bfs_tree(a)
    for q in parent:  # breadth-first order, so the witness is a shortest string
        if q not in good:
            return Check(False, _word(path_from_tree(parent, q)))
    return Check(True)


def check_nonblocking(a: Automaton) -> Check:
    """Every reachable state can reach a marker state."""
    if a.is_empty:
        return Check(True)
    return _first_bad(a, coreachable_set(a))


def check_deadlock_free(a: Automaton) -> Check:
    """Every reachable state can reach a cycle, so every string extends forever."""
    if a.is_empty:
        return Check(True)
    scc = scc_partition(a)
    on_cycle = set().union(*(c for c, cyc in zip(scc.components, scc.cyclic) if cyc))
    return _first_bad(a, coreachable_set(a, on_cycle))


def check_livelock_free(a: Automaton) -> Check:
    """The reachable part with the marker states removed is acyclic."""
    if a.is_empty:
        return Check(True)
    allowed = set(a.states) - a.marker
    scc = scc_partition(a, allowed)
    parent = bfs_tree(a)
    bad = set().union(*(c for c, cyc in zip(scc.components, scc.cyclic) if cyc))
    for q in parent:
        if q in bad:
            stem = path_from_tree(parent, q)
            comp = scc.components[scc.index[q]]
            lasso = Lasso(stem, shortest_cycle(a, q, comp)).canonical()
            return Check(False, str(lasso), lasso)
    return Check(True)


def check_omega_nonblocking(a: Automaton) -> OmegaNonblockingVerdict:
    return OmegaNonblockingVerdict(
        check_nonblocking(a), check_deadlock_free(a), check_livelock_free(a)
    )
