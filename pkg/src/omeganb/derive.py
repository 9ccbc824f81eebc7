"""Reference values recomputed from the brute-force oracles.

Each ``compare_*`` routine draws seeded random instances, runs the main
implementation and the oracle, and returns the instances where they
disagree.  ``derive_all`` bundles these with the fixture-level facts.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .automata import Alphabet, Lasso, star_equivalent
from .fixtures import robot, robot_facts, trap
from .langops import clo, omega_contains, omega_intersect
from .omega import build_arena, omega_closed_check, supComega, supM, winning_region
from .oracle import (
    OracleTooLarge,
    brute_arena,
    brute_clo_member,
    brute_contains,
    brute_intersect_member,
    brute_supCstar,
    brute_supComega_member,
    brute_supM_member,
    brute_winning,
    cap_bound,
    enumerate_lassos,
    memoryless_winning,
    memory_one_winning,
    random_automaton,
    random_plant,
    random_spec_of,
)
from .solver import algorithm1, synthesize
from .star import supCstar


PAIR = Alphabet.of(["a"], ["u"])


@dataclass
class Comparison:
    name: str
    checked: int = 0
    skipped: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _member(a, lasso: Lasso) -> bool:
    return not a.is_empty and a.accepts_omega(lasso)


def compare_supCstar(rng: random.Random, count: int) -> Comparison:
    c = Comparison("supCstar vs edge-subset oracle")
    while c.checked < count:
        g = random_plant(rng)
        e = random_spec_of(rng, g)
        try:
            ref = brute_supCstar(e, g)
        except OracleTooLarge:
            c.skipped += 1
            continue
        c.checked += 1
        if not star_equivalent(supCstar(e, g), ref):
            c.mismatches.append((g, e))
    return c


def compare_supComega(rng: random.Random, count: int, check_memory: bool = True) -> Comparison:
    """Winning regions agree state by state, and languages agree on every lasso
    of the specification up to the arena size plus two."""
    c = Comparison("supComega vs control-map oracle")
    while c.checked < count:
        g = random_plant(rng)
        e = random_spec_of(rng, g)
        try:
            arena = brute_arena(e, g)
            won = brute_winning(e, g)
        except OracleTooLarge:
            c.skipped += 1
            continue
        c.checked += 1
        main_arena, _, _ = build_arena(e, g)
        if set(winning_region(main_arena)) != set(won):
            c.mismatches.append(("winning region", g, e))
            continue
        if check_memory and len(arena.pairs) <= 4 and memory_one_winning(e, g) != won:
            c.mismatches.append(("memory enlarges the winning region", g, e))
            continue
        sup = supComega(e, g)
        n = len(arena.pairs) + 2
        for x in sorted(enumerate_lassos(e, n, n).members, key=str):
            if brute_supComega_member(e, g, x, arena, won) != _member(sup, x):
                c.mismatches.append(("lasso", g, e, x))
                break
    return c


def compare_supM(rng: random.Random, count: int) -> Comparison:
    c = Comparison("supM vs union of markable words")
    while c.checked < count:
        g = random_plant(rng)
        e = random_spec_of(rng, g)
        c.checked += 1
        out = supM(e, g)
        # e is an edge subset of g on the same states, so e×g has at most |e| states
        n = e.n_states + 2
        for x in sorted(enumerate_lassos(e, n, n).members, key=str):
            if brute_supM_member(e, g, x) != _member(out, x):
                c.mismatches.append((g, e, x))
                break
    return c


def compare_langops(rng: random.Random, count: int, margin_every: int = 10) -> Comparison:
    """Containment, intersection and closure against lasso semantics.

    Operands are kept small enough (product of sizes at most 6) that the
    lasso bound equals the product size, which makes containment exhaustive.
    """
    c = Comparison("omega_contains / omega_intersect / clo vs lasso oracle")
    while c.checked < count:
        na = rng.randint(1, 3)
        nb = rng.randint(1, 6 // na)
        a = random_automaton(rng, PAIR, na, density=0.6)
        b = random_automaton(rng, PAIR, nb, density=0.6)
        margin = 2 if c.checked % margin_every == 0 and na * nb <= 4 else 0
        c.checked += 1
        v = omega_contains(a, b)
        ref, _ = brute_contains(a, b, margin=margin)
        if v.holds != ref:
            c.mismatches.append(("contains", a, b))
            continue
        if not v.holds and (not _member(a, v.counterexample) or _member(b, v.counterexample)):
            c.mismatches.append(("counterexample", a, b))
            continue
        inter = omega_intersect(a, b)
        n = cap_bound(na * nb * 2)
        for x in sorted(enumerate_lassos(a, n, n).members, key=str):
            if brute_intersect_member(a, b, x) != _member(inter, x):
                c.mismatches.append(("intersect", a, b, x))
                break
        else:
            closed = clo(a)
            safety = a.with_(buchi=frozenset(a.states))
            m = cap_bound(na + 2)
            for x in sorted(enumerate_lassos(safety, m, m).members, key=str):
                if brute_clo_member(a, x) != _member(closed, x):
                    c.mismatches.append(("clo", a, x))
                    break
    return c


def _fact(name: str, value, holds: bool) -> dict:
    return {"name": name, "value": value, "holds": bool(holds)}


def robot_derived() -> list[dict]:
    p = robot()
    g = p.plant
    facts = [_fact(f"fixture: {f.description}", f.holds, f.holds) for f in robot_facts(p)]

    res = synthesize(g, p.safety, p.liveness, p.min_accept)
    rep = res.report
    facts.append(_fact("robot: rounds until termination", rep.n_final, rep.n_final == 2))
    facts.append(_fact("robot: solvability gate", rep.gate.holds, rep.gate.holds))
    facts.append(_fact("robot: verification triple", list(rep.verification.triple()), rep.verification.holds))
    deleted = [(d.plant_state, d.event) for d in rep.pruned]
    facts.append(_fact("robot: pruned edges (plant state, event)", deleted,
                       sorted(ev for _, ev in deleted) == ["c3", "c5"]))
    c2 = sorted(d.plant_state for d in rep.disabled if d.event == "c2")
    facts.append(_fact("robot: plant states where c2 is disabled", c2, c2 == ["1", "3"]))

    spin, dock = Lasso.of("c1", "u1 c3"), Lasso.of("c1", "u1 c4 c1")
    sup = res.supervisor.with_(buchi=frozenset(res.supervisor.states))
    facts.append(_fact("robot: supervisor excludes c1(u1c3)^w", not sup.accepts_omega(spin),
                       not sup.accepts_omega(spin)))
    facts.append(_fact("robot: supervisor includes c1(u1c4c1)^w", sup.accepts_omega(dock), sup.accepts_omega(dock)))

    t0 = res.trace.rounds[0].t
    lassos = enumerate_lassos(t0, 4, 6)
    facts.append(_fact("robot: markable restriction keeps (c1, u1c4c1) at bounds (4,6)",
                       dock in lassos, dock in lassos))
    facts.append(_fact("robot: markable restriction drops (c1, u1c3) at bounds (4,6)",
                       spin not in lassos, spin not in lassos))

    chain_ok = all(omega_contains(b.t, a.t).holds for a, b in zip(res.trace.rounds, res.trace.rounds[1:]))
    facts.append(_fact("robot: infinite behaviours form a descending chain", chain_ok, chain_ok))

    # winning region on the markability-restricted liveness arena, against the oracle
    arena, _, _ = build_arena(t0, g)
    ref = memoryless_winning(brute_arena(t0, g), max_maps=1 << 18)
    same = set(ref) == set(winning_region(arena))
    facts.append(_fact("robot: winning region after markability equals control-map oracle",
                       f"{len(ref)} of {arena.n} arena states", same))

    closed_before = omega_closed_check(res.pair.t, g)
    facts.append(_fact("robot: unpruned infinite behaviour is omega-closed", closed_before.holds,
                       not closed_before.holds))

    alt = synthesize(g, p.safety, p.liveness, p.min_accept, skip_markable=True)
    v = alt.report.verification
    facts.append(_fact("robot strategy-only: deadlock-free", v.deadlock_free.holds, v.deadlock_free.holds))
    facts.append(_fact("robot strategy-only: nonblocking", v.nonblocking.holds, not v.nonblocking.holds))
    wit = v.livelock_free.lasso
    facts.append(_fact("robot strategy-only: livelock witness", str(wit),
                       wit is not None and wit.same_word(spin)))
    return facts


def trap_derived() -> list[dict]:
    p = trap()
    res = synthesize(p.plant, p.safety, p.liveness, p.min_accept)
    rep = res.report
    facts = [
        _fact("trap: solvable", rep.solvable, not rep.solvable),
        _fact("trap: infinite behaviour empty", res.pair.t.is_empty, res.pair.t.is_empty),
    ]
    e = omega_intersect(p.liveness, p.plant)
    won = brute_winning(e, p.plant)
    facts.append(_fact("trap: control-map oracle wins from the initial state", 0 in won, 0 not in won))
    return facts


def derive_all(seed: int = 0, count: int = 50) -> list[dict]:
    facts = robot_derived() + trap_derived()
    rng = random.Random(seed)
    for fn in (compare_supCstar, compare_supComega, compare_supM, compare_langops):
        c = fn(rng, count)
        facts.append(_fact(c.name, f"{c.checked} instances, {len(c.mismatches)} mismatches", c.ok))
    # permissive instance: nothing to remove, one round
    from .fixtures import permissive
    from .oracle import random_plant as rp

    q = permissive(rp(random.Random(seed), max_states=3))
    _, tr = algorithm1(q.plant, q.safety, q.liveness)
    facts.append(_fact("permissive instance: rounds until termination", tr.n_final, tr.n_final == 1))
    return facts
