from pathlib import Path

from omeganb.automata import Alphabet, Automaton
from omeganb.dot import export_dot

GOLDEN = Path(__file__).parent / "golden"


def one_state():
    return Automaton.from_edges(Alphabet.of(["a"], []), ["s"], "s", [("s", "a", "s")], ["s"], name="one")


def test_one_state_golden():
    assert export_dot(one_state()) == (GOLDEN / "one_state.dot").read_text()


def test_byte_identical_twice(robot_result):
    sup = robot_result.supervisor
    dis = [(d.state, d.event) for d in robot_result.report.disabled]
    assert export_dot(sup, dis) == export_dot(sup, dis)


def test_robot_supervisor_golden(robot_result):
    dis = [(d.state, d.event) for d in robot_result.report.disabled]
    assert export_dot(robot_result.supervisor, dis) == (GOLDEN / "robot_supervisor.dot").read_text()


def test_styles():
    a = Automaton.from_edges(Alphabet.of(["c"], ["u"]), [0, 1], 0, [(0, "c", 1), (1, "u", 0)], [0], [1])
    text = export_dot(a, [("1", "c")])
    assert '"0" [shape=doublecircle' in text
    assert "★" in text
    assert 'label="u", style=dashed' in text
    assert 'label="c", color=red' in text


def test_quotes_escaped():
    a = Automaton.from_edges(Alphabet.of(["a"], []), ['q"x'], 'q"x', [], [])
    assert 'q\\"x' in export_dot(a)
