import pytest

from omeganb.automata import Alphabet, Automaton, Lasso, has_cycle, star_equivalent
from omeganb.fixtures import permissive
from omeganb.langops import omega_contains, omega_equivalent
from omeganb.omega import omega_closed_check
from omeganb.solver import (
    LanguagePair,
    PruningError,
    algorithm1,
    find_bad_cycle,
    prune_bad_cycles,
    solvability_gate,
    synthesize,
    theorem1_check,
)
from omeganb.star import PreconditionError

A = Alphabet.of(["c"], ["u"])


def all_marked_plant():
    return Automaton.from_edges(A, [0, 1], 0, [(0, "c", 1), (1, "u", 0), (1, "c", 1)], [0, 1])


def test_permissive_instance_one_round():
    p = permissive(all_marked_plant())
    pair, trace = algorithm1(p.plant, p.safety, p.liveness)
    assert trace.n_final == 1
    assert star_equivalent(pair.k, p.plant)
    assert omega_equivalent(pair.t, p.liveness)


def test_permissive_supervisor_is_plant():
    p = permissive(all_marked_plant())
    res = synthesize(p.plant, p.safety, p.liveness, p.min_accept)
    assert res.report.solvable
    assert star_equivalent(res.supervisor.with_(marker=frozenset(res.supervisor.states)),
                           p.plant.with_(marker=frozenset(p.plant.states)))
    assert not res.report.disabled


def test_empty_safety_gives_empty_pair():
    g = all_marked_plant()
    pair, _ = algorithm1(g, Automaton.empty(A), g)
    assert pair.k.is_empty and pair.t.is_empty


def test_precondition_checked():
    g = all_marked_plant()
    outside = Automaton.from_edges(A, [0], 0, [(0, "u", 0)], [0])
    with pytest.raises(PreconditionError):
        algorithm1(g, outside, g)


def test_robot_terminates_after_two_rounds(robot_result):
    trace = robot_result.trace
    assert trace.n_final == 2
    assert trace.first_coupled_round == 1
    assert [r.stable for r in trace.rounds] == [False, False, True]


def test_robot_unpruned_pair_conditions(robot_problem, robot_result):
    v = theorem1_check(robot_result.pair.k, robot_result.pair.t, robot_problem.plant)
    assert v.star and v.markable and v.coupled
    assert not v.omega and v.omega.detail == "not omega-closed"


def test_gate_trivial_cases(robot_problem, robot_result):
    g = robot_problem.plant
    empty_lb = Automaton.empty(g.alphabet)
    assert solvability_gate(robot_result.pair, empty_lb, g)
    assert solvability_gate(robot_result.pair, robot_problem.min_accept, g)
    empty = LanguagePair(Automaton.empty(g.alphabet), Automaton.empty(g.alphabet))
    assert not solvability_gate(empty, empty_lb, g)


def test_gate_failure_carries_witness(robot_problem, robot_result):
    g = robot_problem.plant
    spin = Automaton.from_edges(g.alphabet, ["a", "b", "c"], "a",
                                [("a", "c1", "b"), ("b", "u1", "c"), ("c", "c3", "b")], [], ["b"])
    v = solvability_gate(robot_result.pair, spin, g)
    assert not v and v.witness is not None
    assert not robot_result.pair.t.accepts_omega(v.witness)


def test_pruning_identity_without_bad_cycles():
    t = Automaton.from_edges(A, [0], 0, [(0, "c", 0)], [], [0])
    g = Automaton.from_edges(A, [0], 0, [(0, "c", 0)], [0])
    out, ledger = prune_bad_cycles(t, g)
    assert ledger == [] and omega_equivalent(out, t)


def test_pruning_deletes_only_legal_edge():
    # buchi self loop at 0 feeds, via d, a buchi-free cycle 1 -c-> 2 -u-> 1
    b = Alphabet.of(["c", "d"], ["u"])
    edges = [(0, "c", 0), (0, "d", 1), (1, "c", 2), (2, "u", 1)]
    g = Automaton.from_edges(b, [0, 1, 2], 0, edges, [0, 1, 2])
    t = Automaton.from_edges(b, [0, 1, 2], 0, edges, [], [0])
    out, ledger = prune_bad_cycles(t, g)
    assert [(d.plant_state, d.event) for d in ledger] == [("1", "c")]
    assert find_bad_cycle(out) is None
    assert out.accepts_omega(Lasso.of("", "c"))


def test_pruning_hard_error_on_uncontrollable_cycle():
    g = Automaton.from_edges(A, [0, 1], 0, [(0, "c", 1), (1, "u", 1)], [0, 1])
    t = Automaton.from_edges(A, [0, 1], 0, [(0, "c", 1), (1, "u", 1)], [], [0])
    with pytest.raises(PruningError) as info:
        prune_bad_cycles(t, g)
    assert info.value.cycle == ("u",)


def test_robot_pruning(robot_problem, robot_result):
    rep = robot_result.report
    assert sorted(d.event for d in rep.pruned) == ["c3", "c5"]
    assert all(d.plant_state == "2" for d in rep.pruned)
    pruned = robot_result.pruned_t
    assert find_bad_cycle(pruned) is None
    assert omega_closed_check(pruned, robot_problem.plant)


def test_robot_supervisor(robot_problem, robot_result):
    rep = robot_result.report
    assert rep.solvable
    assert rep.verification.triple() == (True, True, True)
    assert rep.final_pair.holds
    sup = robot_result.supervisor.with_(buchi=frozenset(robot_result.supervisor.states))
    assert not sup.accepts_omega(Lasso.of("c1", "u1 c3"))
    assert sup.accepts_omega(Lasso.of("c1", "u1 c4 c1"))
    # every surviving cycle passes a marker
    assert not has_cycle(sup, set(sup.states) - sup.marker)
    c2 = sorted(d.plant_state for d in rep.disabled if d.event == "c2")
    assert c2 == ["1", "3"]


def test_trap_unsolvable(trap_problem):
    p = trap_problem
    res = synthesize(p.plant, p.safety, p.liveness, p.min_accept)
    assert not res.report.solvable
    assert res.supervisor is None
    assert res.pair.t.is_empty
    assert not res.report.gate


def test_lower_bound_recheck_reported(robot_result):
    assert robot_result.report.lower_bound_after_pruning.holds
    assert "a_l_lost_after_pruning" not in robot_result.report.diagnostics


def test_report_json_deterministic(robot_problem):
    p = robot_problem
    a = synthesize(p.plant, p.safety, p.liveness, p.min_accept).report.to_json()
    b = synthesize(p.plant, p.safety, p.liveness, p.min_accept).report.to_json()
    assert a == b


def test_bounds_on_final_supervisor(robot_problem, robot_result):
    sup = robot_result.supervisor
    closed = sup.with_(buchi=frozenset(sup.states))
    assert omega_contains(closed, robot_problem.liveness).holds
    assert omega_contains(robot_problem.min_accept, closed).holds
