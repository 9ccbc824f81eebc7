import random

from omeganb.automata import Alphabet, Automaton, Lasso
from omeganb.oracle import enumerate_lassos, random_automaton
from omeganb.verifier import (
    check_deadlock_free,
    check_livelock_free,
    check_nonblocking,
    check_omega_nonblocking,
)

A = Alphabet.of(["c"], ["u"])


def test_all_marked_cycle_holds():
    a = Automaton.from_edges(A, [0, 1], 0, [(0, "c", 1), (1, "u", 0)], [0, 1])
    v = check_omega_nonblocking(a)
    assert v.holds and v.triple() == (True, True, True)


def test_marker_free_dead_end_blocks():
    a = Automaton.from_edges(A, [0, 1], 0, [(0, "c", 1)], [0])
    v = check_nonblocking(a)
    assert not v and v.witness == "c"


def test_acyclic_deadlocks_at_initial():
    a = Automaton.from_edges(A, [0, 1], 0, [(0, "c", 1)], [0, 1])
    v = check_deadlock_free(a)
    assert not v
    assert v.witness in ("ε", "c")
    b = Automaton.from_edges(A, [0], 0, [], [0])
    assert check_deadlock_free(b).witness == "ε"


def test_marker_free_cycle_with_exit_still_livelocks():
    # the exit to a marked state does not rescue the infinite behaviour
    a = Automaton.from_edges(A, [0, 1, 2], 0, [(0, "c", 1), (1, "c", 0), (1, "u", 2), (2, "c", 2)], [2])
    v = check_livelock_free(a)
    assert not v
    assert v.lasso.same_word(Lasso.of("", "c"))
    assert check_nonblocking(a)


def test_strategy_only_robot_contrast(robot_strategy_only):
    v = robot_strategy_only.report.verification
    assert v.deadlock_free.holds
    assert not v.nonblocking.holds
    assert not v.livelock_free.holds
    assert v.livelock_free.lasso == Lasso.of("c1", "u1 c3")


def test_markers_added_to_buchi_still_miss_original_acceptance(robot_problem):
    # re-running the strategy-only route with the markers folded into the buchi set
    from omeganb.solver import synthesize

    p = robot_problem
    widened = p.liveness.with_(buchi=p.liveness.buchi | p.plant.marker)
    res = synthesize(p.plant, p.safety, widened, p.min_accept, skip_markable=True)
    sup = res.supervisor.with_(buchi=frozenset(res.supervisor.states))
    park = Lasso.of("c1 u1 c5", "u3 c5")
    assert sup.accepts_omega(park)
    assert not p.liveness.accepts_omega(park)
    original = sup.with_(marker=frozenset(q for q in sup.states
                                          if sup.meta["plant_image"][sup.label(q)] == "1"))
    assert not check_livelock_free(original)


def test_structural_livelock_matches_lasso_semantics():
    rng = random.Random(5)
    b = Alphabet.of(["a"], ["u"])
    for _ in range(150):
        a = random_automaton(rng, b, rng.randint(1, 4), density=0.7, p_buchi=None)
        n = a.n_states
        semantic = all(_visits_marker(a, x) for x in enumerate_lassos(a, n, n).members)
        assert check_livelock_free(a).holds == semantic


def _visits_marker(a, lasso):
    return a.with_(buchi=a.marker).accepts_omega(lasso)
