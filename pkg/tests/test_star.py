import pytest

from omeganb.automata import Alphabet, Automaton, star_equivalent
from omeganb.star import (
    PreconditionError,
    star_controllable,
    star_nonblocking,
    star_relatively_closed,
    supCstar,
)

A = Alphabet.of(["c"], ["u"])


def plant():
    # 0 -c-> 1 -u-> 2, 1 -c-> 0, all marked except 1
    return Automaton.from_edges(A, [0, 1, 2], 0, [(0, "c", 1), (1, "u", 2), (1, "c", 0)], [0, 2])


def test_identity_on_plant_marker_language():
    g = plant()
    assert star_equivalent(supCstar(g, g), g)


def test_empty_spec():
    g = plant()
    assert supCstar(Automaton.empty(A), g).is_empty


def test_uncontrollable_exit_forces_disabling_upstream():
    g = plant()
    # the specification forbids reaching 2, so the c into 1 must go
    e = Automaton.from_edges(A, [0, 1], 0, [(0, "c", 1), (1, "c", 0)], [0])
    k = supCstar(e, g)
    assert k.accepts_star([])
    assert not k.generates(["c"])
    assert star_controllable(k, g)
    assert not star_controllable(e, g)


def test_relative_closure_failure():
    g = plant()
    e = g.with_(marker=frozenset({2}))
    v = star_relatively_closed(e, g)
    assert not v and v.violation.kind == "relative-closure"


def test_precondition_checked():
    g = plant()
    bigger = Automaton.from_edges(A, [0], 0, [(0, "c", 0), (0, "u", 0)], [0])
    with pytest.raises(PreconditionError):
        supCstar(bigger, g)


def test_nonblocking_witness():
    a = Automaton.from_edges(A, [0, 1], 0, [(0, "c", 1)], [0])
    v = star_nonblocking(a)
    assert not v and v.violation.witness == ("c",)
