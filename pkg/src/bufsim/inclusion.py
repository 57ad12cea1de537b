"""Simulation decisions and the incremental trace-closure inclusion test.

INCLUDED and NOT_INCLUDED verdicts are proofs (a verified Duplicator
strategy, a re-checked counterexample lasso). UNKNOWN only says that the
budgets ran out; the underlying inclusion problem is undecidable.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

from .automata import NBA, Lasso, accepts_lasso
from .gamegraph import Arena, Player, build_arena, check_capacity, format_capacity
from .solver import Solution, solve_zielonka, verify_strategy
from .traces import TraceAlphabet, closure_member, primitive_root

log = logging.getLogger(__name__)


@dataclass
class SimulationResult:
    kappa: tuple
    arena: Arena
    solution: Solution

    @property
    def winner(self) -> Player:
        return self.solution.winner_of[self.arena.initial]

    @property
    def duplicator_wins(self) -> bool:
        return self.winner is Player.DUPLICATOR

    @property
    def strategy(self) -> dict:
        """The winner's positional strategy (vertex -> edge index)."""
        return self.solution.strategy(self.winner)


def decide_simulation(A: NBA, B: NBA, sigma: TraceAlphabet, kappa) -> SimulationResult:
    kappa = check_capacity(kappa, sigma)
    arena = build_arena(A, B, sigma, kappa)
    solution = solve_zielonka(arena)
    result = SimulationResult(kappa, arena, solution)
    if not verify_strategy(arena, solution, result.winner):
        raise RuntimeError(f"winning strategy for {result.winner} failed verification")
    log.info("kappa=%s: %s wins (%d vertices)", format_capacity(kappa), result.winner, len(arena))
    return result


class Tag(enum.Enum):
    INCLUDED = "INCLUDED"
    NOT_INCLUDED = "NOT_INCLUDED"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Verdict:
    tag: Tag
    kappa: tuple | None = None
    strategy: str | None = None
    lasso: Lasso | None = None
    budget: tuple | None = None
    tried: tuple = ()

    def record(self) -> str:
        if self.tag is Tag.INCLUDED:
            return f"INCLUDED kappa={format_capacity(self.kappa)}"
        if self.tag is Tag.NOT_INCLUDED:
            return f"NOT_INCLUDED lasso={self.lasso}"
        last = format_capacity(self.tried[-1]) if self.tried else "-"
        return f"UNKNOWN budget={self.budget[0]},{self.budget[1]} kappa_max={last}"

    def report(self) -> str:
        tried = " ".join("(" + format_capacity(k) + ")" for k in self.tried) or "none"
        if self.tag is Tag.INCLUDED:
            detail = (f"Duplicator wins the buffer game at capacities ({format_capacity(self.kappa)}); "
                      "every word of L(A) has a trace-equivalent word in L(B).")
        elif self.tag is Tag.NOT_INCLUDED:
            detail = (f"the word {self.lasso} (stem/loop) is accepted by A but no trace-equivalent "
                      "word is accepted by B.")
        else:
            detail = ("no capacity in the schedule lets Duplicator win and no counterexample lasso "
                      f"exists within stem<={self.budget[0]}, loop<={self.budget[1]}.")
        return f"{self.tag.value}: {detail}\ncapacities tried: {tried}"


def default_schedule(k: int, max_total: int, caps=None) -> list:
    """Uniform escalation kappa_j(i) = j for j = 0..max_total, optionally capped per buffer."""
    if caps is None:
        return [(j,) * k for j in range(max_total + 1)]
    if len(caps) != k:
        raise ValueError(f"{len(caps)} per-buffer caps for {k} buffers")
    out = []
    for j in range(max(max_total, *caps) + 1):
        kappa = tuple(min(j, c) for c in caps)
        if not out or out[-1] != kappa:
            out.append(kappa)
    return out


def check_schedule(schedule, sigma: TraceAlphabet) -> list:
    schedule = [check_capacity(kappa, sigma) for kappa in schedule]
    for prev, nxt in zip(schedule, schedule[1:]):
        if any(a > b for a, b in zip(prev, nxt)):
            raise ValueError(
                f"schedule is not pointwise monotone: ({format_capacity(prev)}) "
                f"before ({format_capacity(nxt)})"
            )
    return schedule


def is_canonical(stem: tuple, loop: tuple) -> bool:
    """Primitive loop and a stem that cannot be folded into it."""
    return primitive_root(loop) == loop and (not stem or stem[-1] != loop[-1])


def canonical(w: Lasso) -> Lasso:
    stem, loop = list(w.stem), list(primitive_root(w.loop))
    while stem and stem[-1] == loop[-1]:
        stem.pop()
        loop = loop[-1:] + loop[:-1]
    return Lasso(tuple(stem), tuple(loop))


def _readable(A: NBA, states: frozenset, length: int):
    """Words of exactly ``length`` readable from ``states``, lexicographic in A's alphabet."""
    if length == 0:
        yield (), states
        return
    for a in A.alphabet:
        nxt = frozenset(d for q in states for d in A.post(q, a))
        if nxt:
            for rest, end in _readable(A, nxt, length - 1):
                yield (a,) + rest, end


def enumerate_accepted_lassos(A: NBA, budget):
    """Yield canonical accepted lassos with stem <= budget[0] and loop <= budget[1].

    Order: total length, then stem length, then lexicographic (alphabet order).
    """
    max_stem, max_loop = budget
    if max_stem < 0 or max_loop < 1:
        raise ValueError(f"budget must allow a stem >= 0 and a loop >= 1, got {budget}")
    start = frozenset([A.initial])
    for total in range(1, max_stem + max_loop + 1):
        for slen in range(0, min(max_stem, total - 1) + 1):
            llen = total - slen
            if llen > max_loop:
                continue
            for stem, after in _readable(A, start, slen):
                for loop, _ in _readable(A, after, llen):
                    if is_canonical(stem, loop) and accepts_lasso(A, Lasso(stem, loop)):
                        yield Lasso(stem, loop)


def _budget_levels(budget) -> list:
    max_stem, max_loop = budget
    levels = []
    s, lo = min(1, max_stem), min(1, max_loop)
    while True:
        levels.append((s, lo))
        if (s, lo) == (max_stem, max_loop):
            return levels
        s, lo = min(max(2 * s, 1), max_stem), min(2 * lo, max_loop)


def _find_counterexample(A, B, sigma, budget, tested: set):
    for w in enumerate_accepted_lassos(A, budget):
        if w in tested:
            continue
        tested.add(w)
        if not closure_member(w, B, sigma):
            return w
    return None


def _not_included(A, B, sigma, w, tried) -> Verdict:
    if not accepts_lasso(A, w) or closure_member(w, B, sigma):
        raise RuntimeError(f"counterexample {w} failed re-validation")
    return Verdict(Tag.NOT_INCLUDED, lasso=w, tried=tuple(tried))


def incremental_include(A: NBA, B: NBA, sigma: TraceAlphabet, schedule=None,
                        lasso_budget=(4, 3), max_total: int = 2) -> Verdict:
    """Escalate buffer capacities along ``schedule`` while searching for counterexamples.

    Before each simulation round the lasso search runs at the next budget
    level (budgets double up to ``lasso_budget``); the first definitive
    answer is returned.
    """
    if schedule is None:
        schedule = default_schedule(sigma.k, max_total)
    schedule = check_schedule(schedule, sigma)
    levels = _budget_levels(lasso_budget)
    tested: set = set()
    tried: list = []
    searched = None
    for j, kappa in enumerate(schedule):
        level = levels[min(j, len(levels) - 1)]
        if level != searched:
            w = _find_counterexample(A, B, sigma, level, tested)
            searched = level
            if w is not None:
                return _not_included(A, B, sigma, w, tried)
        result = decide_simulation(A, B, sigma, kappa)
        tried.append(kappa)
        if result.duplicator_wins:
            return Verdict(Tag.INCLUDED, kappa=kappa, strategy=result.solution.serialize(),
                           tried=tuple(tried))
    if searched != levels[-1]:
        w = _find_counterexample(A, B, sigma, levels[-1], tested)
        if w is not None:
            return _not_included(A, B, sigma, w, tried)
    return Verdict(Tag.UNKNOWN, budget=tuple(lasso_budget), tried=tuple(tried))


def check_soundness_sample(A: NBA, B: NBA, sigma: TraceAlphabet, kappa, budget) -> bool:
    """If Duplicator wins at ``kappa``, no accepted lasso within ``budget`` may escape
    the trace closure of L(B). A False result indicates a bug."""
    if not decide_simulation(A, B, sigma, kappa).duplicator_wins:
        return True
    return all(closure_member(w, B, sigma) for w in enumerate_accepted_lassos(A, budget))
