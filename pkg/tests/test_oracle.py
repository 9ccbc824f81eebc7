"""Oracle self-checks and the randomized oracle-equivalence suites."""
import random

import pytest

from omeganb.automata import Alphabet, Automaton, Lasso, star_equivalent
from omeganb.derive import compare_langops, compare_supComega, compare_supCstar, compare_supM
from omeganb.langops import omega_intersect
from omeganb.oracle import (
    OracleTooLarge,
    brute_arena,
    brute_contains,
    brute_markable,
    brute_supCstar,
    brute_winning,
    enumerate_lassos,
    memory_one_winning,
)

A = Alphabet.of(["c"], ["u"])
N = 200


def test_enumerate_empty_and_self_loop():
    assert len(enumerate_lassos(Automaton.empty(A), 3, 3)) == 0
    loop = Automaton.from_edges(A, [0], 0, [(0, "c", 0)], [], [0])
    assert enumerate_lassos(loop, 0, 1).members == {Lasso.of("", "c")}


def test_enumerate_members_replay(robot_result):
    t0 = robot_result.trace.rounds[0].t
    s = enumerate_lassos(t0, 4, 6)
    assert all(t0.accepts_omega(x) for x in s.members)
    assert Lasso.of("c1", "u1 c4 c1") in s
    assert Lasso.of("c1", "u1 c3") not in s


def test_brute_supCstar_trivial():
    g = Automaton.from_edges(A, [0, 1], 0, [(0, "c", 1), (1, "u", 0)], [0])
    assert star_equivalent(brute_supCstar(g, g), g)
    assert brute_supCstar(Automaton.empty(A), g).is_empty


def test_brute_supCstar_guard():
    b = Alphabet.of([f"c{i}" for i in range(13)], [])
    g = Automaton.from_edges(b, [0], 0, [(0, f"c{i}", 0) for i in range(13)], [0])
    with pytest.raises(OracleTooLarge):
        brute_supCstar(g, g)


def test_brute_winning_uncontrollable_plants():
    u = Alphabet.of([], ["u", "v"])
    g = Automaton.from_edges(u, [0, 1], 0, [(0, "u", 1), (1, "v", 0)], [0])
    good = g.with_(buchi=frozenset({1}))
    assert brute_winning(good, g) == {0, 1}
    bad = Automaton.from_edges(u, [0, 1], 0, [(0, "u", 1), (1, "v", 1)], [0], [0])
    g2 = bad.with_(buchi=frozenset(bad.states))
    assert brute_winning(bad, g2) == frozenset()


def test_memory_does_not_help_on_trap(trap_problem):
    g = trap_problem.plant
    e = omega_intersect(trap_problem.liveness, g)
    assert len(brute_arena(e, g).pairs) <= 6
    assert memory_one_winning(e, g) == brute_winning(e, g) == frozenset()


def test_brute_language_checks_trivial():
    g = Automaton.from_edges(A, [0, 1], 0, [(0, "c", 1), (1, "u", 0), (1, "c", 1)], [0])
    t = g.with_(buchi=frozenset({1}))
    assert brute_contains(t, t)[0]
    assert brute_markable(Automaton.empty(A), g)[0]
    ok, w = brute_markable(t, g)
    assert not ok and t.accepts_omega(w)


@pytest.mark.parametrize("fn", [compare_supCstar, compare_supComega, compare_supM, compare_langops],
                         ids=["supCstar", "supComega", "supM", "langops"])
def test_oracle_equivalence_suite(fn):
    c = fn(random.Random(1000), N)
    assert c.checked >= N
    assert c.mismatches == []
