"""Trace alphabets, projections, trace equivalence, and trace-closure membership."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import lcm

from ._graph import reachable, sccs
from .automata import NBA, Lasso, ParseError


@dataclass(frozen=True)
class TraceAlphabet:
    """A tuple of (not necessarily disjoint) component alphabets, indexed from 1."""

    components: tuple

    def __post_init__(self):
        comps = tuple(tuple(dict.fromkeys(c)) for c in self.components)
        if not comps:
            raise ValueError("a trace alphabet needs at least one component")
        object.__setattr__(self, "components", comps)

    @property
    def k(self) -> int:
        return len(self.components)

    @cached_property
    def alphabet(self) -> tuple:
        return tuple(dict.fromkeys(a for comp in self.components for a in comp))

    @cached_property
    def letter_map(self) -> dict:
        """Letter -> frozenset of the (1-based) components containing it."""
        out: dict = {}
        for i, comp in enumerate(self.components, start=1):
            for a in comp:
                out.setdefault(a, set()).add(i)
        return {a: frozenset(s) for a, s in out.items()}

    def component(self, i: int) -> tuple:
        if not 1 <= i <= self.k:
            raise IndexError(f"component index {i} out of range 1..{self.k}")
        return self.components[i - 1]

    def check_word(self, word, what="word"):
        foreign = set(word) - set(self.letter_map)
        if foreign:
            raise ValueError(f"{what} uses letters outside the trace alphabet: {sorted(foreign)}")


@dataclass(frozen=True)
class DependenceRelation:
    pairs: frozenset

    def __contains__(self, pair):
        return tuple(pair) in self.pairs


def dependence(sigma: TraceAlphabet) -> DependenceRelation:
    lm = sigma.letter_map
    return DependenceRelation(
        frozenset((a, b) for a in lm for b in lm if lm[a] & lm[b])
    )


def parse_sigma(text: str) -> TraceAlphabet:
    seen_header = False
    comps: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line.split()[0] != "sigma":
                raise ParseError("expected 'sigma' header", lineno)
            seen_header = True
            continue
        head, sep, rest = line.partition(":")
        if not sep or not head.strip().isdigit():
            raise ParseError(f"expected '<index>: letters', got {line!r}", lineno)
        idx = int(head)
        if idx in comps:
            raise ParseError(f"duplicate component {idx}", lineno)
        comps[idx] = rest.split()
    if not seen_header:
        raise ParseError("missing 'sigma' header")
    if sorted(comps) != list(range(1, len(comps) + 1)) or not comps:
        raise ParseError(f"component indices must be 1..k contiguous, got {sorted(comps)}")
    return TraceAlphabet(tuple(comps[i] for i in range(1, len(comps) + 1)))


def print_sigma(sigma: TraceAlphabet) -> str:
    lines = ["sigma"]
    lines += [f"{i}: {' '.join(c)}".rstrip() for i, c in enumerate(sigma.components, start=1)]
    return "\n".join(lines) + "\n"


def project(w, i: int, sigma: TraceAlphabet) -> tuple:
    comp = set(sigma.component(i))
    sigma.check_word(w)
    return tuple(a for a in w if a in comp)


def project_lasso(w: Lasso, i: int, sigma: TraceAlphabet):
    """Projection of ``stem . loop^omega``: a Lasso if infinite, else a finite word."""
    stem = project(w.stem, i, sigma)
    loop = project(w.loop, i, sigma)
    if loop:
        return Lasso(stem, loop)
    return stem


def finite_trace_equiv(u, v, sigma: TraceAlphabet) -> bool:
    return all(project(u, i, sigma) == project(v, i, sigma) for i in range(1, sigma.k + 1))


def primitive_root(word: tuple) -> tuple:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


def up_equal(x: Lasso, y: Lasso) -> bool:
    """Equality of two ultimately periodic words."""
    lx, ly = primitive_root(x.loop), primitive_root(y.loop)
    if len(lx) != len(ly):
        return False
    n = len(x.stem) + len(y.stem) + lcm(len(lx), len(ly))
    return Lasso(x.stem, lx).prefix(n) == Lasso(y.stem, ly).prefix(n)


def lasso_trace_equiv(u: Lasso, v: Lasso, sigma: TraceAlphabet) -> bool:
    for i in range(1, sigma.k + 1):
        pu, pv = project_lasso(u, i, sigma), project_lasso(v, i, sigma)
        if isinstance(pu, Lasso) != isinstance(pv, Lasso):
            return False
        if isinstance(pu, Lasso):
            if not up_equal(pu, pv):
                return False
        elif pu != pv:
            return False
    return True


def closure_member(w: Lasso, B: NBA, sigma: TraceAlphabet) -> bool:
    """Decide whether some word of L(B) is trace equivalent to ``w``.

    Runs B in lockstep with one tracker per component; tracker i follows the
    projection of ``w`` onto component i and blocks on any mismatch. A
    witness is a reachable cycle that visits an accepting B-state, wraps
    every infinite tracker, and leaves every finite tracker at its end.
    """
    sigma.check_word(w.letters(), "lasso")
    sigma.check_word(B.alphabet, "automaton")
    k = sigma.k
    lm = sigma.letter_map
    proj = [project_lasso(w, i, sigma) for i in range(1, k + 1)]
    infinite = [isinstance(p, Lasso) for p in proj]

    def step(node):
        q, pos = node
        out = []
        for a, dst in B.successors(q):
            new = list(pos)
            wraps = set()
            for i in lm[a]:
                p, j = proj[i - 1], pos[i - 1]
                if infinite[i - 1]:
                    if p.letter_at(j) != a:
                        break
                    new[i - 1] = p.position_after(j)
                    if j == len(p) - 1:
                        wraps.add(i)
                else:
                    if j >= len(p) or p[j] != a:
                        break
                    new[i - 1] = j + 1
            else:
                out.append(((dst, tuple(new)), wraps))
        return out

    cache: dict = {}

    def edges(node):
        if node not in cache:
            cache[node] = step(node)
        return cache[node]

    def succ(node):
        return [n for n, _ in edges(node)]

    nodes = reachable((B.initial, (0,) * k), succ)
    for comp in sccs(nodes, succ):
        members = set(comp)
        internal = [(n, wr) for u in comp for n, wr in edges(u) if n in members]
        if not internal:
            continue
        if not any(q in B.accepting for q, _ in comp):
            continue
        _, pos = comp[0]
        if any(not infinite[i] and pos[i] != len(proj[i]) for i in range(k)):
            continue
        wrapped = set().union(*(wr for _, wr in internal))
        if all(i + 1 in wrapped for i in range(k) if infinite[i]):
            return True
    return False
