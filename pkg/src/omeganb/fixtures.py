"""Shipped problem instances and the fixture oracle that checks them against
the behaviours they are meant to exhibit."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .automata import Automaton, Lasso, validate_plant
from .io import parse


@dataclass(frozen=True)
class Problem:
    name: str
    plant: Automaton
    safety: Automaton
    liveness: Automaton
    min_accept: Automaton


def load_data(stem: str) -> Automaton:
    text = resources.files("omeganb").joinpath("data").joinpath(f"{stem}.json").read_text(encoding="utf-8")
    return parse(text, f"omeganb/data/{stem}.json")


def _problem(prefix: str) -> Problem:
    return Problem(
        prefix,
        load_data(f"{prefix}_plant"),
        load_data(f"{prefix}_safety"),
        load_data(f"{prefix}_liveness"),
        load_data(f"{prefix}_min_accept"),
    )


def robot() -> Problem:
    """Battery robot: state 0 is the dock, 2 the work area, 4 the low-battery detour.

    Recharging (marker states 0 and 3) must happen infinitely often while the
    robot keeps returning to the task state 1.
    """
    return _problem("robot")


def trap() -> Problem:
    """The only accepting cycle can be left by an uncontrollable event into a
    forbidden region, so the problem has no solution."""
    return _problem("trap")


def permissive(plant: Automaton) -> Problem:
    """Everything allowed: every plant state marked, safety = Lm(G), liveness = S(G),
    empty lower bound."""
    g = plant.with_(marker=frozenset(plant.states))
    return Problem(
        "permissive",
        g,
        g.with_(role="safety"),
        g.with_(role="liveness", buchi=frozenset(g.states)),
        Automaton.empty(g.alphabet, role="min-accept"),
    )


FIXTURES = {"robot": robot, "trap": trap}


@dataclass(frozen=True)
class FixtureFact:
    description: str
    holds: bool


def robot_facts(p: Problem | None = None) -> list[FixtureFact]:
    """Behaviours the battery-robot reconstruction must exhibit."""
    p = p or robot()
    g, e_s, e_l, a_l = p.plant, p.safety, p.liveness, p.min_accept
    plant_omega = g
    spin = Lasso.of("c1", "u1 c3")
    dock = Lasso.of("c1", "u1 c4 c1")
    park = Lasso.of("c1 u1 c5", "u3 c5")
    cyc_states = set()
    q = g.run(spin.stem)
    for ev in spin.cycle * 2:
        q = g.step(q, ev)
        cyc_states.add(q)
    return [
        FixtureFact("plant has buchi = all states", bool(validate_plant(g))),
        FixtureFact("c1(u1c3)^w is generated by the plant", plant_omega.accepts_omega(spin)),
        FixtureFact("the cycle of c1(u1c3)^w avoids every marker state", not (cyc_states & g.marker)),
        FixtureFact("c1(u1c3)^w is in the liveness specification", e_l.accepts_omega(spin)),
        FixtureFact("c1u1c4 is a marked plant string", g.accepts_star("c1 u1 c4".split())),
        FixtureFact("c1u1c4 is in the safety specification", e_s.accepts_star("c1 u1 c4".split())),
        FixtureFact("c1(u1c4c1)^w is in the lower bound", a_l.accepts_omega(dock)),
        FixtureFact("c1(u1c4c1)^w is in the liveness specification", e_l.accepts_omega(dock)),
        FixtureFact("c1u1c5(u3c5)^w is generated by the plant", plant_omega.accepts_omega(park)),
        FixtureFact("c1u1c5(u3c5)^w is not in the liveness specification", not e_l.accepts_omega(park)),
        FixtureFact("c2 leads the plant out of the safety specification",
                    g.generates(["c1", "c2"]) and not e_s.generates(["c1", "c2"])),
    ]
