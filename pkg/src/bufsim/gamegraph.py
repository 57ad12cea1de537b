"""Explicit arena of the bounded multi-buffer simulation game.

Spoiler vertices sit between rounds. A Spoiler step pushes its letter onto
every buffer of the letter's components and hands over to a Duplicator
vertex; Duplicator then pops letters one B-transition at a time (micro-moves)
and finally ends the round, which is only allowed once every buffer is back
within its capacity.

Priorities follow the max-parity convention with Duplicator as the even
player. A round-robin counter over the events

    e0: a Duplicator step entered an accepting B-state
    ei: buffer i was popped by the incoming edge, or is empty

is advanced on every edge; a vertex where the counter wraps gets priority
2, a Spoiler vertex on an accepting A-state gets 1, everything else 0.
"""
from __future__ import annotations

import enum
import logging
from collections import deque
from dataclasses import dataclass
from math import prod

from .automata import NBA
from .traces import TraceAlphabet

log = logging.getLogger(__name__)

OMEGA = "omega"
MAX_BOUND = 2**63 - 1


class UnsupportedCapacity(ValueError):
    pass


class Player(enum.IntEnum):
    DUPLICATOR = 0
    SPOILER = 1

    @property
    def opponent(self) -> Player:
        return Player(1 - self)

    def __str__(self):
        return self.name.lower()


def parse_capacity(text: str) -> tuple:
    """Parse ``1,0,2``; the token ``omega`` is kept so the builder can reject it."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok == OMEGA:
            out.append(OMEGA)
        elif tok.isdigit():
            out.append(int(tok))
        else:
            raise ValueError(f"bad capacity entry {tok!r}")
    return tuple(out)


def format_capacity(kappa) -> str:
    return ",".join(str(c) for c in kappa)


def check_capacity(kappa, sigma: TraceAlphabet) -> tuple:
    kappa = tuple(kappa)
    if len(kappa) != sigma.k:
        raise ValueError(f"capacity vector has {len(kappa)} entries, trace alphabet has {sigma.k}")
    for c in kappa:
        if c == OMEGA:
            raise UnsupportedCapacity("unbounded buffers (omega) give an infinite arena")
        if not isinstance(c, int) or c < 0:
            raise ValueError(f"capacity entries must be natural numbers, got {c!r}")
    return kappa


@dataclass(frozen=True)
class SpoilerStep:
    letter: str
    target: str

    def __str__(self):
        return f"S:{self.letter}->{self.target}"


@dataclass(frozen=True)
class DupStep:
    letter: str
    target: str

    def __str__(self):
        return f"D:{self.letter}->{self.target}"


@dataclass(frozen=True)
class EndRound:
    def __str__(self):
        return "end"


@dataclass(frozen=True)
class Configuration:
    p: str
    buffers: tuple
    q: str


@dataclass(frozen=True)
class ArenaVertex:
    owner: Player
    config: Configuration
    counter: int
    moved: bool | None = None  # Duplicator vertices only
    wrapped: bool = False


@dataclass(frozen=True)
class Edge:
    src: int
    label: object
    dst: int


class Arena:
    """Finite game graph with integer vertices ``0..n-1``.

    ``owner[v]`` is a Player, ``priority[v]`` an int; edges are indexed and
    ``out[v]`` / ``inc[v]`` list edge indices.
    """

    def __init__(self, owner, priority, edges, initial=0, vertices=None, k=None):
        self.owner = [Player(o) for o in owner]
        self.priority = list(priority)
        self.edges = list(edges)
        self.initial = initial
        self.vertices = vertices
        self.k = k
        n = len(self.owner)
        if len(self.priority) != n:
            raise ValueError("owner and priority lists differ in length")
        self.out = [[] for _ in range(n)]
        self.inc = [[] for _ in range(n)]
        for idx, e in enumerate(self.edges):
            self.out[e.src].append(idx)
            self.inc[e.dst].append(idx)

    @classmethod
    def from_graph(cls, owner, priority, pairs, initial=0) -> Arena:
        return cls(owner, priority, [Edge(s, None, d) for s, d in pairs], initial)

    def __len__(self):
        return len(self.owner)

    def successors(self, v) -> list:
        return [self.edges[e].dst for e in self.out[v]]

    def dead_ends(self) -> list:
        return [v for v in range(len(self)) if not self.out[v]]

    def stats(self) -> dict:
        return {
            "vertices": len(self),
            "edges": len(self.edges),
            "spoiler": sum(1 for o in self.owner if o is Player.SPOILER),
            "duplicator": sum(1 for o in self.owner if o is Player.DUPLICATOR),
            "dead_ends": len(self.dead_ends()),
        }


class _BufferPool:
    """Hash-consed buffer tuples with memoized push/pop."""

    def __init__(self, letter_map, k):
        self.letter_map = letter_map
        self.words = []
        self.ids = {}
        self._push = {}
        self._pop = {}
        self.empty = self.intern(((),) * k)

    def intern(self, bufs) -> int:
        bid = self.ids.get(bufs)
        if bid is None:
            bid = self.ids[bufs] = len(self.words)
            self.words.append(bufs)
        return bid

    def push(self, bid, a) -> int:
        key = (bid, a)
        if key not in self._push:
            bufs = list(self.words[bid])
            for i in self.letter_map[a]:
                bufs[i - 1] = bufs[i - 1] + (a,)
            self._push[key] = self.intern(tuple(bufs))
        return self._push[key]

    def pop(self, bid, b):
        """Buffer id after reading ``b`` from all its buffers, or None if blocked."""
        key = (bid, b)
        if key not in self._pop:
            bufs = list(self.words[bid])
            result = None
            if all(bufs[i - 1][:1] == (b,) for i in self.letter_map[b]):
                for i in self.letter_map[b]:
                    bufs[i - 1] = bufs[i - 1][1:]
                result = self.intern(tuple(bufs))
            self._pop[key] = result
        return self._pop[key]


def _check_alphabets(A: NBA, B: NBA, sigma: TraceAlphabet):
    for aut in (A, B):
        foreign = set(aut.alphabet) - set(sigma.letter_map)
        if foreign:
            raise ValueError(
                f"automaton {aut.name} uses letters outside the trace alphabet: {sorted(foreign)}"
            )


def advance_counter(counter: int, events, k: int):
    """Advance past consecutive satisfied events; returns (counter, wrapped)."""
    while events[counter]:
        counter += 1
        if counter == k + 1:
            return 0, True
    return counter, False


def build_arena(A: NBA, B: NBA, sigma: TraceAlphabet, kappa) -> Arena:
    kappa = check_capacity(kappa, sigma)
    _check_alphabets(A, B, sigma)
    k = sigma.k
    lm = sigma.letter_map
    pool = _BufferPool(lm, k)
    acc_a, acc_b = A.accepting, B.accepting

    keys: list = []
    index: dict = {}
    owner: list = []
    priority: list = []
    edges: list = []
    queue: deque = deque()

    def vertex(key) -> int:
        v = index.get(key)
        if v is None:
            v = index[key] = len(keys)
            keys.append(key)
            who, p, _, _, _, _, wrapped = key
            owner.append(who)
            if wrapped:
                priority.append(2)
            elif who is Player.SPOILER and p in acc_a:
                priority.append(1)
            else:
                priority.append(0)
            queue.append(v)
        return v

    def update(counter, bid, popped=(), dup_into=None):
        bufs = pool.words[bid]
        events = [dup_into is not None and dup_into in acc_b]
        events += [i in popped or not bufs[i - 1] for i in range(1, k + 1)]
        return advance_counter(counter, events, k)

    vertex((Player.SPOILER, A.initial, pool.empty, B.initial, 0, None, False))
    while queue:
        v = queue.popleft()
        who, p, bid, q, counter, _, _ = keys[v]
        if who is Player.SPOILER:
            for a, p2 in A.successors(p):
                nb = pool.push(bid, a)
                c, w = update(counter, nb)
                dst = vertex((Player.DUPLICATOR, p2, nb, q, c, False, w))
                edges.append(Edge(v, SpoilerStep(a, p2), dst))
        else:
            for b, q2 in B.successors(q):
                nb = pool.pop(bid, b)
                if nb is None:
                    continue
                c, w = update(counter, nb, popped=lm[b], dup_into=q2)
                dst = vertex((Player.DUPLICATOR, p, nb, q2, c, True, w))
                edges.append(Edge(v, DupStep(b, q2), dst))
            bufs = pool.words[bid]
            if all(len(bufs[i]) <= kappa[i] for i in range(k)):
                c, w = update(counter, bid)
                dst = vertex((Player.SPOILER, p, bid, q, c, None, w))
                edges.append(Edge(v, EndRound(), dst))

    vertices = [
        ArenaVertex(who, Configuration(p, pool.words[bid], q), c, moved, wrapped)
        for who, p, bid, q, c, moved, wrapped in keys
    ]
    arena = Arena(owner, priority, edges, 0, vertices, k)
    log.info("arena built: %(vertices)d vertices, %(edges)d edges", arena.stats())
    return arena


def arena_size_bound(A: NBA, B: NBA, sigma: TraceAlphabet, kappa) -> int:
    """m * n * (k+1) * prod_i sum_{j<=kappa(i)+1} |Sigma_i|^j.

    The built arena has at most twice this many vertices.
    """
    kappa = check_capacity(kappa, sigma)
    _check_alphabets(A, B, sigma)
    words = [
        sum(len(comp) ** j for j in range(c + 2))
        for comp, c in zip(sigma.components, kappa)
    ]
    bound = len(A.states) * len(B.states) * (sigma.k + 1) * prod(words)
    if bound > MAX_BOUND:
        raise OverflowError(f"arena size bound {bound} exceeds the 64-bit range")
    return bound


_PRIORITY_COLORS = {0: "white", 1: "lightcoral", 2: "palegreen"}


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def vertex_label(vx: ArenaVertex) -> str:
    bufs = " ".join("".join(b) or "ε" for b in vx.config.buffers)
    return f"{vx.config.p} | {bufs} | {vx.config.q} | {vx.counter}"


def export_dot(arena: Arena) -> str:
    lines = ["digraph arena {", '  node [style=filled, fontname="monospace"];']
    dead = set(arena.dead_ends())
    for v in range(len(arena)):
        if arena.vertices is not None:
            label = vertex_label(arena.vertices[v])
        else:
            label = str(v)
        shape = "box" if arena.owner[v] is Player.SPOILER else "ellipse"
        attrs = [
            f'label="{_dot_escape(label)}"',
            f"shape={shape}",
            f"fillcolor={_PRIORITY_COLORS.get(arena.priority[v], 'gray')}",
        ]
        if v in dead:
            attrs.append('color=red, penwidth=3, style="filled,dashed"')
        if v == arena.initial:
            attrs.append("peripheries=2")
        lines.append(f"  v{v} [{', '.join(attrs)}];")
    for e in arena.edges:
        label = "" if e.label is None else f' [label="{_dot_escape(str(e.label))}"]'
        lines.append(f"  v{e.src} -> v{e.dst}{label};")
    lines.append("}")
    return "\n".join(lines) + "\n"
