"""Max-parity game solving on arenas: Zielonka, small progress measures, and
a strategy checker.

Duplicator is the even player. A vertex without successors is lost by its
owner. Strategies map a vertex to the index of its chosen outgoing edge.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field

from ._graph import sccs
from .gamegraph import Arena, Player

log = logging.getLogger(__name__)


@dataclass
class Solution:
    winner_of: list
    duplicator_strategy: dict = field(default_factory=dict)
    spoiler_strategy: dict = field(default_factory=dict)

    def region(self, player: Player) -> set:
        player = Player(player)
        return {v for v, w in enumerate(self.winner_of) if w is player}

    def strategy(self, player: Player) -> dict:
        if Player(player) is Player.DUPLICATOR:
            return self.duplicator_strategy
        return self.spoiler_strategy

    def serialize(self) -> str:
        """One line per vertex: ``vertex_id winner [chosen_edge]``."""
        lines = []
        for v, w in enumerate(self.winner_of):
            edge = self.strategy(w).get(v)
            lines.append(f"{v} {w}" + ("" if edge is None else f" {edge}"))
        return "\n".join(lines) + "\n"


# --- Zielonka --------------------------------------------------------------


def _attractor(arena: Arena, region: set, target: set, player: Player, strategy: dict) -> set:
    """Player's attractor of ``target`` inside ``region``; records attracting edges."""
    attr = set(target)
    remaining: dict = {}
    queue = deque(attr)
    while queue:
        v = queue.popleft()
        for e in arena.inc[v]:
            u = arena.edges[e].src
            if u in attr or u not in region:
                continue
            if arena.owner[u] is player:
                attr.add(u)
                strategy[u] = e
                queue.append(u)
            else:
                if u not in remaining:
                    remaining[u] = sum(1 for f in arena.out[u] if arena.edges[f].dst in region)
                remaining[u] -= 1
                if remaining[u] == 0:
                    attr.add(u)
                    queue.append(u)
    return attr


def _zielonka(arena: Arena, region: set):
    # region must be dead-end free as a subgame
    won = {Player.DUPLICATOR: set(), Player.SPOILER: set()}
    strat: dict = {}
    while region:
        top = max(arena.priority[v] for v in region)
        player = Player(top % 2)
        opp = player.opponent
        heads = {v for v in region if arena.priority[v] == top}
        astrat: dict = {}
        attr = _attractor(arena, region, heads, player, astrat)
        sub_won, sub_strat = _zielonka(arena, region - attr)
        if not sub_won[opp]:
            won[player] |= region
            strat.update(sub_strat)
            strat.update(astrat)
            for v in heads:
                if arena.owner[v] is player:
                    strat[v] = next(e for e in arena.out[v] if arena.edges[e].dst in region)
            return won, strat
        bstrat: dict = {}
        escape = _attractor(arena, region, sub_won[opp], opp, bstrat)
        won[opp] |= escape
        strat.update({v: e for v, e in sub_strat.items() if v in sub_won[opp]})
        strat.update(bstrat)
        region = region - escape
    return won, strat


def _split(arena: Arena, won: dict, strat: dict) -> Solution:
    winner_of = [None] * len(arena)
    for player, vs in won.items():
        for v in vs:
            winner_of[v] = player
    dup = {v: e for v, e in strat.items()
           if arena.owner[v] is Player.DUPLICATOR and winner_of[v] is Player.DUPLICATOR}
    spo = {v: e for v, e in strat.items()
           if arena.owner[v] is Player.SPOILER and winner_of[v] is Player.SPOILER}
    return Solution(winner_of, dup, spo)


def solve_zielonka(arena: Arena) -> Solution:
    everything = set(range(len(arena)))
    won = {Player.DUPLICATOR: set(), Player.SPOILER: set()}
    strat: dict = {}
    # dead ends: the attractor's counting rule already sweeps in opponent
    # vertices without successors once they are seeded
    for player in (Player.DUPLICATOR, Player.SPOILER):
        stuck = {v for v in everything if not arena.out[v] and arena.owner[v] is player.opponent}
        region = everything - won[Player.DUPLICATOR] - won[Player.SPOILER]
        won[player] |= _attractor(arena, region, stuck & region, player, strat)
    rest = everything - won[Player.DUPLICATOR] - won[Player.SPOILER]
    sub_won, sub_strat = _zielonka(arena, rest)
    for player in won:
        won[player] |= sub_won[player]
    strat.update(sub_strat)
    sol = _split(arena, won, strat)
    log.debug("zielonka: duplicator wins %d of %d vertices",
              len(won[Player.DUPLICATOR]), len(arena))
    return sol


# --- small progress measures ------------------------------------------------

_TOP = None


def _spm_even(n, owner_even, priority, succ):
    """Progress measures for the even player of a max-parity game.

    ``owner_even[v]`` is True if the even player moves at v; ``succ[v]`` is a
    list of (edge_id, w). Returns (wins_even, strategy_even).
    """
    odd = sorted({p for p in priority if p % 2 == 1}, reverse=True)
    slot = {p: j for j, p in enumerate(odd)}
    bound = [sum(1 for x in priority if x == p) for p in odd]
    width = len(odd)

    def prog(p, m):
        if m is _TOP:
            return _TOP
        # keep the components of odd priorities >= p
        keep = sum(1 for q in odd if q >= p)
        out = list(m[:keep]) + [0] * (width - keep)
        if p % 2 == 1:
            j = slot[p]
            while j >= 0:
                if out[j] < bound[j]:
                    out[j] += 1
                    break
                out[j] = 0
                j -= 1
            else:
                return _TOP
        return tuple(out)

    def less(a, b):
        if a is _TOP:
            return False
        if b is _TOP:
            return True
        return a < b

    pred = [[] for _ in range(n)]
    for v in range(n):
        for _, w in succ[v]:
            pred[w].append(v)

    zero = (0,) * width
    mu = [zero] * n

    def lifted(v):
        vals = [prog(priority[v], mu[w]) for _, w in succ[v]]
        if owner_even[v]:
            best = _TOP
            for x in vals:
                if less(x, best):
                    best = x
        else:
            best = zero
            for x in vals:
                if less(best, x):
                    best = x
        return best

    queue = deque(range(n))
    queued = [True] * n
    while queue:
        v = queue.popleft()
        queued[v] = False
        new = lifted(v)
        if less(mu[v], new):
            mu[v] = new
            for u in pred[v]:
                if not queued[u] and mu[u] is not _TOP:
                    queued[u] = True
                    queue.append(u)

    wins = [m is not _TOP for m in mu]
    strategy = {}
    for v in range(n):
        if wins[v] and owner_even[v]:
            best = None
            for e, w in succ[v]:
                x = prog(priority[v], mu[w])
                if x is not _TOP and (best is None or x < best[0]):
                    best = (x, e)
            strategy[v] = best[1]
    return wins, strategy


def solve_spm(arena: Arena) -> Solution:
    n = len(arena)
    succ = [[] for _ in range(n)]
    for idx, e in enumerate(arena.edges):
        succ[e.src].append((idx, e.dst))
    dup_owner = [arena.owner[v] == 0 for v in range(n)]
    dup_wins, dup_strat = _spm_even(n, dup_owner, arena.priority, succ)
    # dual game: Spoiler becomes the even player by shifting priorities
    spo_wins, spo_strat = _spm_even(
        n, [not o for o in dup_owner], [p + 1 for p in arena.priority], succ
    )
    for v in range(n):
        if dup_wins[v] == spo_wins[v]:
            raise AssertionError(f"progress measures disagree on vertex {v}")
    winner_of = [Player.DUPLICATOR if w else Player.SPOILER for w in dup_wins]
    return Solution(winner_of, dup_strat, spo_strat)


# --- strategy checking -------------------------------------------------------


def verify_strategy(arena: Arena, solution: Solution, player: Player) -> bool:
    """Check that ``player``'s strategy wins from every vertex of its region.

    Fixing the strategy leaves a one-player graph on the region; it must be
    closed and contain no cycle whose top priority favours the opponent.
    """
    player = Player(player)
    strategy = solution.strategy(player)
    region = solution.region(player)
    for v, e in strategy.items():
        if not 0 <= e < len(arena.edges) or arena.edges[e].src != v:
            raise ValueError(f"strategy edge {e} at vertex {v} is not an outgoing arena edge")
    succ: dict = {}
    for v in region:
        if arena.owner[v] is player:
            if v not in strategy:
                return False
            targets = [arena.edges[strategy[v]].dst]
        else:
            targets = arena.successors(v)
        if any(w not in region for w in targets):
            return False
        succ[v] = targets
    bad = [p for p in set(arena.priority[v] for v in region) if p % 2 != player % 2]
    for p in bad:
        nodes = [v for v in region if arena.priority[v] <= p]
        keep = set(nodes)

        def inner(v):
            return [w for w in succ[v] if w in keep]

        for comp in sccs(nodes, inner):
            if len(comp) == 1 and comp[0] not in inner(comp[0]):
                continue
            if any(arena.priority[v] == p for v in comp):
                return False
    return True
