"""Omega-nonblocking supervisor synthesis.

The fixpoint loop alternates a finite-behaviour step (supremal *-controllable
and *-closed sublanguage) with an infinite-behaviour step (supremal
omega-controllable sublanguage) until the prefix closure of the marked part
equals the prefixes of the infinite part.  The solvability gate, bad-cycle
pruning and supervisor assembly follow.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .automata import (
    Automaton,
    Lasso,
    closure,
    plant_image,
    product,
    reachable,
    star_contains,
    star_equivalent,
    star_is_empty,
)
from .langops import (
    ContainmentVerdict,
    lim_of_closed,
    omega_contains,
    omega_empty,
    omega_equivalent,
    omega_intersect,
    pre_of_omega,
)
from .omega import (
    build_arena,
    infFomega,
    markable_check,
    omega_closed_check,
    omega_controllable_check,
    supComega,
    supM,
    winning_region,
    winning_strategy,
)
from .star import (
    PreconditionError,
    star_controllable,
    star_relatively_closed,
    supCstar,
)
from .verifier import OmegaNonblockingVerdict, check_omega_nonblocking

MAX_ROUNDS = 10_000


def _with_plant_names(a: Automaton, g: Automaton) -> Automaton:
    """Rename states ``i:p`` where ``p`` is the plant state reached."""
    if a.is_empty:
        return a
    img = plant_image(a, g)
    return a.with_(names=tuple(f"{q}:{g.label(img[q])}" if q in img else str(q) for q in a.states))


def _safety_view(g: Automaton) -> Automaton:
    return g.with_(buchi=frozenset(g.states))


@dataclass(frozen=True)
class LanguagePair:
    """Marked finite behaviour ``k`` with infinite behaviour ``t``."""

    k: Automaton
    t: Automaton


@dataclass(frozen=True)
class Round:
    index: int
    k: Automaton
    t: Automaton
    coupled: bool
    stable: bool

    def summary(self) -> dict:
        return {
            "round": self.index,
            "k_states": self.k.n_states,
            "t_states": self.t.n_states,
            "closure_equals_prefixes": self.coupled,
            "unchanged": self.stable,
        }


@dataclass(frozen=True)
class Trace:
    rounds: tuple[Round, ...]
    n_final: int
    first_coupled_round: int | None

    @property
    def ks(self) -> list[Automaton]:
        return [r.k for r in self.rounds]

    @property
    def ts(self) -> list[Automaton]:
        return [r.t for r in self.rounds]


def check_standing_assumptions(g, e_s, e_l, a_l=None) -> None:
    from .automata import validate, validate_plant

    for a in (g, e_s, e_l) + (() if a_l is None else (a_l,)):
        v = validate(a)
        if not v:
            raise PreconditionError(f"{a.name or a.role or 'automaton'}: {v.message}")
    v = validate_plant(g)
    if not v:
        raise PreconditionError(v.message)
    ok, w = star_contains(e_s, g)
    if not ok:
        raise PreconditionError("safety specification is not contained in Lm(G)", w)
    c = omega_contains(e_l, _safety_view(g))
    if not c.holds:
        raise PreconditionError("liveness specification is not contained in S(G)", c.counterexample)
    if a_l is not None:
        c = omega_contains(a_l, e_l)
        if not c.holds:
            raise PreconditionError("lower bound is not contained in the liveness specification",
                                    c.counterexample)


def algorithm1(g: Automaton, e_s: Automaton, e_l: Automaton, *, skip_markable: bool = False,
               check: bool = True) -> tuple[LanguagePair, Trace]:
    """Run the fixpoint loop and return ``(K_N, T_N)`` with the full trace.

    A round is final when the prefix closure of ``K_i`` equals the prefixes of
    ``T_i`` and the pair is unchanged from the previous round; the second
    condition makes the last round a confirmation that nothing more is removed.
    ``skip_markable`` starts from ``S(G) ∩ E_l`` without the markability
    restriction (the comparison mode).
    """
    if check:
        check_standing_assumptions(g, e_s, e_l)
    k = _with_plant_names(product(e_s, g), g)
    t0 = omega_intersect(e_l, _safety_view(g))
    t = _with_plant_names(t0 if skip_markable else supM(t0, g), g)
    rounds = [Round(0, k, t, _coupled(k, t), False)]
    first_coupled = None
    for i in range(1, MAX_ROUNDS):
        k_prev, t_prev = k, t
        k = _with_plant_names(supCstar(product(k_prev, pre_of_omega(t_prev)), g), g)
        t = _with_plant_names(
            supComega(omega_intersect(lim_of_closed(closure(k)), t_prev), g), g)
        coupled = _coupled(k, t)
        stable = star_equivalent(k, k_prev) and omega_equivalent(t, t_prev)
        rounds.append(Round(i, k, t, coupled, stable))
        if coupled and first_coupled is None:
            first_coupled = i
        if coupled and stable:
            return LanguagePair(k, t), Trace(tuple(rounds), i, first_coupled)
        if stable:
            raise AssertionError("fixpoint reached without closure/prefix agreement")
    raise RuntimeError("round limit exceeded")


def _coupled(k: Automaton, t: Automaton) -> bool:
    return star_equivalent(closure(k), pre_of_omega(t))


# ---------------------------------------------------------------------------
# pair conditions and the gate


@dataclass(frozen=True)
class Condition:
    holds: bool
    detail: str = ""
    witness: str | None = None

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        out = {"holds": self.holds}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass(frozen=True)
class PairVerdict:
    """The four conditions characterising a synthesisable language pair."""

    star: Condition
    omega: Condition
    markable: Condition
    coupled: Condition

    @property
    def holds(self) -> bool:
        return all((self.star.holds, self.omega.holds, self.markable.holds, self.coupled.holds))

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        return {
            "star_controllable_and_closed": self.star.to_json(),
            "omega_controllable_and_closed": self.omega.to_json(),
            "markable": self.markable.to_json(),
            "closure_equals_prefixes": self.coupled.to_json(),
        }


def _words(w) -> str:
    return " ".join(w) if w else "ε"


def theorem1_check(k: Automaton, t: Automaton, g: Automaton) -> PairVerdict:
    sc = star_controllable(k, g)
    rc = star_relatively_closed(k, g)
    if not sc:
        star = Condition(False, "not *-controllable", _words(sc.violation.witness) + f" / {sc.violation.event}")
    elif not rc:
        star = Condition(False, "not *-closed", _words(rc.violation.witness))
    else:
        star = Condition(True)
    oc = omega_controllable_check(t, g)
    cl = omega_closed_check(t, g)
    if not oc:
        omega = Condition(False, "not omega-controllable", str(oc.counterexample))
    elif not cl:
        omega = Condition(False, "not omega-closed", str(cl.counterexample))
    else:
        omega = Condition(True)
    mk = markable_check(t, g)
    markable = Condition(mk.holds, "" if mk.holds else "a cycle avoids the marker states",
                         None if mk.holds else str(mk.counterexample))
    kb, pt = closure(k), pre_of_omega(t)
    ok1, w1 = star_contains(kb, pt)
    ok2, w2 = star_contains(pt, kb)
    if ok1 and ok2:
        coupled = Condition(True)
    elif not ok1:
        coupled = Condition(False, "prefix of K with no infinite extension in T", _words(w1))
    else:
        coupled = Condition(False, "prefix of T outside the closure of K", _words(w2))
    return PairVerdict(star, omega, markable, coupled)


@dataclass(frozen=True)
class GateVerdict:
    holds: bool
    reason: str = ""
    witness: Lasso | None = None

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        out = {"holds": self.holds}
        if self.reason:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def solvability_gate(pair: LanguagePair, a_l: Automaton, g: Automaton) -> GateVerdict:
    """Both components nonempty and the omega-closure of the lower bound fits inside ``T``."""
    if star_is_empty(pair.k):
        return GateVerdict(False, "marked behaviour is empty")
    if omega_empty(pair.t).empty:
        return GateVerdict(False, "infinite behaviour is empty")
    v = omega_contains(infFomega(a_l, g), pair.t)
    if not v.holds:
        return GateVerdict(False, "closure of the lower bound is not contained in the infinite behaviour",
                           v.counterexample)
    return GateVerdict(True)


# ---------------------------------------------------------------------------
# bad-cycle pruning


class PruningError(RuntimeError):
    def __init__(self, cycle: tuple[str, ...], states: tuple[str, ...]):
        super().__init__(f"buchi-free cycle without a controllable edge: {' '.join(cycle)} "
                         f"through {', '.join(states)}")
        self.cycle = cycle
        self.states = states


@dataclass(frozen=True)
class Deletion:
    state: str
    plant_state: str
    event: str
    cycle: tuple[str, ...]
    cycle_states: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "state": self.state,
            "plant_state": self.plant_state,
            "event": self.event,
            "cycle": list(self.cycle),
            "cycle_states": list(self.cycle_states),
        }


def _preorder(a: Automaton) -> list[int]:
    seen = {a.initial}
    order = [a.initial]
    stack = [iter(a.out[a.initial])]
    while stack:
        for _, r in stack[-1]:
            if r not in seen:
                seen.add(r)
                order.append(r)
                stack.append(iter(a.out[r]))
                break
        else:
            stack.pop()
    return order


def find_bad_cycle(t: Automaton) -> list[tuple[int, str, int]] | None:
    """First buchi-free cycle met by depth-first search, as edges in cycle order.

    Roots are visited in depth-first preorder of the whole automaton; the
    search itself only enters non-buchi states.  The last edge of the result
    is the back edge that closed the cycle.
    """
    if t.is_empty:
        return None
    allowed = set(t.states) - t.buchi
    done: set[int] = set()
    for root in _preorder(t):
        if root not in allowed or root in done:
            continue
        path: list[tuple[int, str, int]] = []
        on_path = {root: 0}
        stack = [(root, iter(t.out[root]))]
        done.add(root)
        while stack:
            q, it = stack[-1]
            for ev, r in it:
                if r not in allowed:
                    continue
                if r in on_path:
                    start = on_path[r]
                    return path[start:] + [(q, ev, r)]
                if r in done:
                    continue
                done.add(r)
                path.append((q, ev, r))
                on_path[r] = len(path)
                stack.append((r, iter(t.out[r])))
                break
            else:
                stack.pop()
                del on_path[q]
                if path:
                    path.pop()
    return None


def prune_bad_cycles(t: Automaton, g: Automaton) -> tuple[Automaton, list[Deletion]]:
    """Break every buchi-free cycle by deleting controllable edges.

    Walking a detected cycle backwards from its closing edge, the first
    controllable edge is deleted.  The automaton is then cut back to the
    reachable part of its winning region, which drops states that can no
    longer reach an accepting cycle and keeps the result omega-controllable.
    """
    ledger: list[Deletion] = []
    img = plant_image(t, g) if not t.is_empty else {}
    cur = t
    while True:
        cycle = find_bad_cycle(cur)
        if cycle is None:
            return cur, ledger
        chosen = next(((q, ev) for q, ev, _ in reversed(cycle) if cur.alphabet.is_controllable(ev)), None)
        events = tuple(ev for _, ev, _ in cycle)
        states = tuple(cur.label(q) for q, _, _ in cycle)
        if chosen is None:
            raise PruningError(events, states)
        q, ev = chosen
        orig = _origin(cur, t, q)
        ledger.append(Deletion(cur.label(q), g.label(img[orig]), ev, events, states))
        cur = cur.restrict(cur.states, drop=[(q, ev)])
        cur = _winning_part(cur, g)


def _origin(cur: Automaton, t: Automaton, q: int) -> int:
    # restrict() keeps labels, and labels are unique after renaming
    return t.names.index(cur.label(q)) if t.names is not None else q


def _winning_part(t: Automaton, g: Automaton) -> Automaton:
    if t.is_empty:
        return t
    arena, _, _ = build_arena(t, g)
    w = winning_region(arena)
    keep = {x for i, (x, _) in enumerate(arena.pairs) if i in w}
    return reachable(t.restrict(keep))


# ---------------------------------------------------------------------------
# supervisor realisation


@dataclass(frozen=True)
class Disablement:
    state: str
    plant_state: str
    event: str

    def to_json(self) -> dict:
        return {"state": self.state, "plant_state": self.plant_state, "event": self.event}


def assemble_supervisor(t: Automaton, g: Automaton, name: str = "supervisor") -> Automaton:
    """Closed-loop automaton generating the prefixes of ``t``; markers come from the plant."""
    pre = pre_of_omega(t)
    sup = product(pre, g)
    return _finish_supervisor(sup, g, name)


def _finish_supervisor(sup: Automaton, g: Automaton, name: str) -> Automaton:
    if sup.is_empty:
        return sup.with_(name=name, role="supervisor")
    img = plant_image(sup, g)
    names = tuple(str(q) for q in sup.states)
    return sup.with_(
        names=names,
        buchi=frozenset(sup.states),
        name=name,
        role="supervisor",
        meta={"plant_image": {names[q]: g.label(img[q]) for q in sup.states}},
    )


def disabled_events(sup: Automaton, g: Automaton) -> list[Disablement]:
    """Controllable events the plant offers that the supervisor does not."""
    if sup.is_empty:
        return []
    img = plant_image(sup, g)
    out = []
    for q in sup.states:
        p = img[q]
        have = {ev for ev, _ in sup.out[q]}
        for ev, _ in g.out[p]:
            if g.alphabet.is_controllable(ev) and ev not in have:
                out.append(Disablement(sup.label(q), g.label(p), ev))
    return out


def strategy_supervisor(t: Automaton, a_prime: Automaton, g: Automaton,
                        name: str = "strategy-supervisor") -> Automaton:
    """Supervisor built from a memoryless winning strategy on ``t``.

    While the run follows ``a_prime`` every event of ``t`` is enabled; once it
    leaves, only uncontrollable events and the strategy's controllable moves
    are enabled.
    """
    arena, _, _ = build_arena(t, g)
    strategy = winning_strategy(arena)
    at = {x: i for i, (x, _) in enumerate(arena.pairs)}
    start = (None if a_prime.is_empty else a_prime.initial, t.initial)
    index = {start: 0}
    states = [start]
    delta = {}
    i = 0
    while i < len(states):
        a, x = states[i]
        allowed = strategy.get(at[x], frozenset())
        for ev, x2 in t.out[x]:
            if a is None and ev not in t.alphabet.uncontrollable and ev not in allowed:
                continue
            a2 = None if a is None else a_prime.step(a, ev)
            nxt = (a2, x2)
            if nxt not in index:
                index[nxt] = len(states)
                states.append(nxt)
            delta[(i, ev)] = index[nxt]
        i += 1
    sup = Automaton(t.alphabet, len(states), delta, 0)
    sup = product(sup.with_(marker=frozenset(sup.states)), g)
    return _finish_supervisor(sup, g, name)


# ---------------------------------------------------------------------------
# pipeline


@dataclass
class SynthesisReport:
    iterations: list[dict]
    n_final: int | None
    first_coupled_round: int | None
    solvable: bool
    gate: GateVerdict | None = None
    disabled: list[Disablement] = field(default_factory=list)
    pruned: list[Deletion] = field(default_factory=list)
    verification: OmegaNonblockingVerdict | None = None
    lower_bound_after_pruning: Condition | None = None
    safety_bound: Condition | None = None
    liveness_bounds: Condition | None = None
    final_pair: PairVerdict | None = None
    mode: str = "full"
    diagnostics: list[str] = field(default_factory=list)

    @property
    def gate_witness(self) -> Lasso | None:
        return None if self.gate is None else self.gate.witness

    def to_json(self) -> dict:
        def j(x):
            return None if x is None else x.to_json()

        return {
            "mode": self.mode,
            "solvable": self.solvable,
            "n_final": self.n_final,
            "first_coupled_round": self.first_coupled_round,
            "iterations": self.iterations,
            "gate": j(self.gate),
            "pruned": [d.to_json() for d in self.pruned],
            "disabled": [d.to_json() for d in self.disabled],
            "verification": j(self.verification),
            "lower_bound_after_pruning": j(self.lower_bound_after_pruning),
            "safety_bound": j(self.safety_bound),
            "liveness_bounds": j(self.liveness_bounds),
            "final_pair": j(self.final_pair),
            "diagnostics": self.diagnostics,
        }


@dataclass(frozen=True)
class SynthesisResult:
    report: SynthesisReport
    supervisor: Automaton | None
    pair: LanguagePair
    trace: Trace
    pruned_t: Automaton | None


def _cond(v: ContainmentVerdict, detail: str) -> Condition:
    return Condition(True) if v.holds else Condition(False, detail, str(v.counterexample))


def synthesize(g: Automaton, e_s: Automaton, e_l: Automaton, a_l: Automaton, *,
               skip_markable: bool = False) -> SynthesisResult:
    """Full pipeline from problem data to a verified supervisor.

    With ``skip_markable`` the markability restriction is left out and the
    supervisor is realised from a memoryless winning strategy, which is the
    baseline that ignores marker states for infinite behaviour.
    """
    check_standing_assumptions(g, e_s, e_l, a_l)
    pair, trace = algorithm1(g, e_s, e_l, skip_markable=skip_markable, check=False)
    report = SynthesisReport(
        iterations=[r.summary() for r in trace.rounds],
        n_final=trace.n_final,
        first_coupled_round=trace.first_coupled_round,
        solvable=False,
        mode="strategy-only" if skip_markable else "full",
    )
    gate = solvability_gate(pair, a_l, g)
    report.gate = gate
    if not gate:
        report.diagnostics.append("unsolvable: " + gate.reason)
        return SynthesisResult(report, None, pair, trace, None)

    a_prime = infFomega(a_l, g)
    if skip_markable:
        t_final = pair.t
        sup = strategy_supervisor(pair.t, a_prime, g)
    else:
        t_final, report.pruned = prune_bad_cycles(pair.t, g)
        sup = assemble_supervisor(t_final, g)
    report.disabled = disabled_events(sup, g)
    report.verification = check_omega_nonblocking(sup)

    closed_loop = sup.with_(buchi=frozenset(sup.states))
    if not skip_markable:
        report.lower_bound_after_pruning = _cond(
            omega_contains(a_prime, t_final), "a_l_lost_after_pruning")
        if not report.lower_bound_after_pruning:
            report.diagnostics.append("a_l_lost_after_pruning")
    ok, w = star_contains(sup, e_s)
    report.safety_bound = Condition(ok, "" if ok else "marked string outside the safety specification",
                                    None if ok else _words(w))
    upper = omega_contains(closed_loop, e_l)
    lower = omega_contains(a_l, closed_loop)
    if not upper:
        report.liveness_bounds = _cond(upper, "infinite behaviour outside the liveness specification")
    else:
        report.liveness_bounds = _cond(lower, "lower bound not achieved")
    k_final = sup.with_(buchi=frozenset())
    report.final_pair = theorem1_check(k_final, closed_loop, g)
    if not report.verification:
        report.diagnostics.append("supervisor is not omega-nonblocking")
    report.solvable = bool(report.verification and report.safety_bound and report.liveness_bounds
                           and (skip_markable or report.lower_bound_after_pruning))
    return SynthesisResult(report, sup, pair, trace, t_final)
