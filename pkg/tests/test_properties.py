"""Closure, chain, markability, bound and solvability properties over a random corpus."""
import itertools
import random

import pytest

from omeganb.automata import Alphabet, Automaton, closure, product, star_contains, star_equivalent
from omeganb.cli import main
from omeganb.io import save
from omeganb.langops import omega_contains, omega_intersect, pre_of_omega
from omeganb.omega import markable_check, omega_controllable_check, supM
from omeganb.oracle import random_plant, random_spec_of, random_sub
from omeganb.solver import algorithm1, synthesize, theorem1_check

A = Alphabet.of(["a", "b"], ["u"])
CORPUS = 300


def problems(seed=99, count=CORPUS):
    rng = random.Random(seed)
    for _ in range(count):
        g = random_plant(rng, A, max_states=4, density=0.7)
        g = g.with_(marker=g.marker | {q for q in g.states if rng.random() < 0.3})
        e_s = random_spec_of(rng, g, 0.9)
        e_l = random_spec_of(rng, g, 0.9)
        a_l = random_sub(rng, e_l, 0.5) if rng.random() < 0.6 else Automaton.empty(A)
        yield g, e_s, e_l, a_l


@pytest.fixture(scope="module")
def corpus():
    out = []
    for g, e_s, e_l, a_l in problems():
        out.append(((g, e_s, e_l, a_l), synthesize(g, e_s, e_l, a_l)))
    return out


def test_corpus_has_both_outcomes(corpus):
    gates = [r.report.gate.holds for _, r in corpus]
    assert any(gates) and not all(gates)


def test_sub_automata_of_markable_are_markable():
    rng = random.Random(1)
    for _ in range(200):
        g = random_plant(rng, A)
        t = supM(random_spec_of(rng, g), g)
        assert markable_check(random_sub(rng, t, 0.6), g).holds


def test_marked_prefix_closure_identity():
    rng = random.Random(2)
    for _ in range(200):
        g = random_plant(rng, A)
        s = supM(random_spec_of(rng, g), g)
        pre = pre_of_omega(s)
        marked = product(pre, g)
        assert star_equivalent(closure(marked), pre)


def test_rounds_form_descending_chains(corpus):
    for _, r in corpus:
        rounds = r.trace.rounds
        for prev, cur in zip(rounds, rounds[1:]):
            assert star_contains(cur.k, prev.k)[0]
            assert omega_contains(cur.t, prev.t).holds


def test_every_round_markable(corpus):
    for (g, *_), r in corpus:
        for rd in r.trace.rounds:
            assert markable_check(rd.t, g).holds


def test_output_equations(corpus):
    for (g, e_s, e_l, _), r in corpus:
        k, t = r.pair.k, r.pair.t
        assert star_equivalent(closure(k), pre_of_omega(t))
        assert star_equivalent(k, product(closure(k), g))
        assert star_contains(k, product(g, e_s))[0]
        assert omega_contains(t, omega_intersect(g, e_l)).holds


def test_final_pair_conditions_hold(corpus):
    for _, r in corpus:
        if r.supervisor is not None:
            assert r.report.final_pair.holds


def test_gate_pass_gives_verified_supervisor(corpus):
    for _, r in corpus:
        if r.report.gate.holds:
            assert r.supervisor is not None
            assert r.report.verification.holds
            assert r.report.safety_bound.holds and r.report.liveness_bounds.holds


def test_gate_fail_gives_no_supervisor(corpus, tmp_path):
    fails = [(p, r) for p, r in corpus if not r.report.gate.holds]
    for _, r in fails:
        assert r.supervisor is None and not r.report.solvable
    for i, ((g, e_s, e_l, a_l), _) in enumerate(fails[:25]):
        d = tmp_path / str(i)
        for name, a in (("g", g), ("s", e_s), ("l", e_l), ("a", a_l)):
            save(a, d / f"{name}.json")
        code = main(["synth", "--plant", str(d / "g.json"), "--safety", str(d / "s.json"),
                     "--max-legal", str(d / "l.json"), "--min-accept", str(d / "a.json"),
                     "--out-dir", str(d / "out")])
        assert code == 2
        assert not (d / "out" / "supervisor.json").exists()


def _qualifies(k, t, g, spec):
    v = theorem1_check(k, t, g)
    return (v.star.holds and v.markable.holds and v.coupled.holds
            and omega_controllable_check(t, g).holds and star_contains(k, spec)[0])


def test_output_pair_is_supremal():
    """Every qualifying pair cut from E_l ∩ S(G) by an edge subset lies below the output."""
    rng = random.Random(7)
    done = candidates = 0
    while done < 150:
        g = random_plant(rng, A, max_states=4, density=0.7)
        g = g.with_(marker=g.marker | {q for q in g.states if rng.random() < 0.3})
        e_s, e_l = random_spec_of(rng, g, 0.9), random_spec_of(rng, g, 0.9)
        p = omega_intersect(e_l, g.with_(buchi=frozenset(g.states)))
        if p.is_empty or len(p.delta) > 12:
            continue
        done += 1
        pair, _ = algorithm1(g, e_s, e_l)
        spec = product(g, e_s)
        keys = sorted(p.delta)
        for r in range(len(keys) + 1):
            for sub in itertools.combinations(keys, r):
                t = p.with_(delta={x: p.delta[x] for x in sub})
                if pre_of_omega(t).is_empty:
                    continue
                k = product(pre_of_omega(t), g)
                if not _qualifies(k, t, g, spec):
                    continue
                candidates += 1
                assert star_contains(k, pair.k)[0]
                assert omega_contains(t, pair.t).holds
    assert candidates > 100
