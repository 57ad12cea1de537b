import itertools
import logging
from collections import deque

import networkx as nx
import pytest

from bufsim import fixtures
from bufsim.automata import NBA
from bufsim.gamegraph import (
    Arena,
    DupStep,
    EndRound,
    Player,
    SpoilerStep,
    UnsupportedCapacity,
    arena_size_bound,
    build_arena,
    export_dot,
    parse_capacity,
)
from bufsim.traces import TraceAlphabet
from randgen import random_instance

log = logging.getLogger(__name__)


def naive_arena_size(A, B, sigma, kappa):
    """Rule-by-rule enumeration, kept apart from the builder on purpose."""
    k = len(kappa)
    comps = [set(c) for c in sigma.components]
    start = ("S", A.initial, ("",) * k, B.initial, 0, None, False)
    seen = {start}
    todo = deque([start])

    def counter_step(c, ev):
        for _ in range(k + 1):
            if not ev[c]:
                return c, False
            c += 1
            if c > k:
                return 0, True
        return c, False

    while todo:
        who, p, bufs, q, c, moved, wrapped = todo.popleft()
        succs = []
        if who == "S":
            for (s, a, d) in A.transitions:
                if s != p:
                    continue
                nb = tuple(b + a if a in comps[i] else b for i, b in enumerate(bufs))
                ev = [False] + [nb[i] == "" for i in range(k)]
                c2, w = counter_step(c, ev)
                succs.append(("D", d, nb, q, c2, False, w))
        else:
            for (s, b, d) in B.transitions:
                if s != q:
                    continue
                touched = [i for i in range(k) if b in comps[i]]
                if not all(bufs[i].startswith(b) for i in touched):
                    continue
                nb = tuple(bufs[i][1:] if i in touched else bufs[i] for i in range(k))
                ev = [d in B.accepting] + [i in touched or nb[i] == "" for i in range(k)]
                c2, w = counter_step(c, ev)
                succs.append(("D", p, nb, d, c2, True, w))
            if all(len(bufs[i]) <= kappa[i] for i in range(k)):
                ev = [False] + [bufs[i] == "" for i in range(k)]
                c2, w = counter_step(c, ev)
                succs.append(("S", p, bufs, q, c2, None, w))
        for s in succs:
            if s not in seen:
                seen.add(s)
                todo.append(s)
    return len(seen)


def hierarchy(kappa, n=1):
    return build_arena(fixtures.thm33_A(n), fixtures.thm33_B(n), fixtures.thm33_sigma(), kappa)


def test_hierarchy_arena_initial_vertex():
    arena = hierarchy((1, 0))
    init = arena.vertices[arena.initial]
    assert arena.owner[arena.initial] is Player.SPOILER
    assert init.config.buffers == ((), ())
    assert (init.config.p, init.config.q, init.counter) == ("p0", "q0", 0)
    assert 0 < len(arena) < 100


def test_hierarchy_vertex_count_matches_naive_enumeration():
    for kappa in [(1, 0), (2, 0), (0, 0), (3, 1)]:
        A, B, s = fixtures.thm33_A(), fixtures.thm33_B(), fixtures.thm33_sigma()
        assert len(build_arena(A, B, s, kappa)) == naive_arena_size(A, B, s, kappa)


def test_random_vertex_counts_match_naive_enumeration(rng):
    for _ in range(60):
        A, B, sigma, kappa = random_instance(rng)
        assert len(build_arena(A, B, sigma, kappa)) == naive_arena_size(A, B, sigma, kappa)


def test_zero_capacity_spoiler_vertices_have_empty_buffers(rng):
    cases = [tuple(f() for f in trio) for trio in fixtures.PAIRS.values()]
    for _ in range(30):
        cases.append(random_instance(rng)[:3])
    for A, B, sigma in cases:
        arena = build_arena(A, B, sigma, (0,) * sigma.k)
        for v, vx in enumerate(arena.vertices):
            if arena.owner[v] is Player.SPOILER:
                assert all(not b for b in vx.config.buffers)


def test_size_bound_smallest_instance():
    A = NBA(["p"], ["a"], "p", {("p", "a", "p")}, {"p"})
    sigma = TraceAlphabet((("a",),))
    assert arena_size_bound(A, A, sigma, (0,)) == 4
    assert len(build_arena(A, A, sigma, (0,))) <= 8


def test_size_bound_ex31():
    A, B, sigma = fixtures.ex31_A(), fixtures.ex31_B(), fixtures.ex31_sigma()
    # 4 * 5 * (3+1) * (1+2+4) * (1+1+1) * (1+1)
    assert arena_size_bound(A, B, sigma, (1, 1, 0)) == 3360
    assert len(build_arena(A, B, sigma, (1, 1, 0))) <= 2 * 3360


def test_size_bound_hierarchy_ratio():
    A, B, sigma = fixtures.thm33_A(), fixtures.thm33_B(), fixtures.thm33_sigma()
    bound = 2 * arena_size_bound(A, B, sigma, (2, 0))
    size = len(build_arena(A, B, sigma, (2, 0)))
    log.info("hierarchy (2,0): %d vertices, bound %d, ratio %.4f", size, bound, size / bound)
    assert size <= bound


def test_size_bound_overflow():
    letters = [f"x{j}" for j in range(40)]
    A = NBA(["p"], letters, "p", set(), set())
    sigma = TraceAlphabet((tuple(letters),) * 3)
    with pytest.raises(OverflowError):
        arena_size_bound(A, A, sigma, (10, 10, 10))


def test_capacity_errors():
    A, B, sigma = fixtures.thm33_A(), fixtures.thm33_B(), fixtures.thm33_sigma()
    assert parse_capacity("1,0,2") == (1, 0, 2)
    kappa = parse_capacity("omega,0")
    with pytest.raises(UnsupportedCapacity):
        build_arena(A, B, sigma, kappa)
    with pytest.raises(ValueError, match="entries"):
        build_arena(A, B, sigma, (1,))
    with pytest.raises(ValueError):
        parse_capacity("1,x")
    with pytest.raises(ValueError, match="outside the trace alphabet"):
        build_arena(fixtures.ex31_A(), B, sigma, (0, 0))


def test_dot_single_vertex():
    arena = Arena.from_graph([Player.SPOILER], [0], [(0, 0)])
    dot = export_dot(arena)
    assert dot.startswith("digraph")
    assert sum(1 for line in dot.splitlines() if "[label=" in line and "->" not in line) == 1


def test_dot_unique_node_ids():
    arena = hierarchy((1, 0))
    ids = [line.split()[0] for line in export_dot(arena).splitlines()
           if line.startswith("  v") and "->" not in line]
    assert len(ids) == len(set(ids)) == len(arena)


def test_dot_marks_dead_end():
    arena = hierarchy((0, 0))  # Duplicator gets stuck after the first a
    dead = arena.dead_ends()
    assert dead and all(arena.owner[v] is Player.DUPLICATOR for v in dead)
    dot = export_dot(arena)
    for v in dead:
        line = next(x for x in dot.splitlines() if x.startswith(f"  v{v} ["))
        assert "color=red" in line and "dashed" in line
    label = next(x for x in dot.splitlines() if x.startswith("  v0 ["))
    assert "p0 | ε ε | q0 | 0" in label


def _random_arenas(rng, count, max_vertices=None):
    out = []
    while len(out) < count:
        A, B, sigma, kappa = random_instance(rng)
        kappa = tuple(rng.randint(0, 2) for _ in kappa)
        arena = build_arena(A, B, sigma, kappa)
        if max_vertices is None or len(arena) <= max_vertices:
            out.append((A, B, sigma, kappa, arena))
    return out


def test_buffer_bounds_and_alphabets(rng):
    for A, B, sigma, kappa, arena in _random_arenas(rng, 40):
        for v, vx in enumerate(arena.vertices):
            slack = 0 if arena.owner[v] is Player.SPOILER else 1
            for i, buf in enumerate(vx.config.buffers):
                assert len(buf) <= kappa[i] + slack
                assert set(buf) <= set(sigma.components[i])


def test_edge_shapes(rng):
    for A, B, sigma, kappa, arena in _random_arenas(rng, 40):
        for e in arena.edges:
            src, dst = arena.vertices[e.src], arena.vertices[e.dst]
            if arena.owner[e.src] is Player.SPOILER:
                assert isinstance(e.label, SpoilerStep)
                for i, (b0, b1) in enumerate(zip(src.config.buffers, dst.config.buffers)):
                    if i + 1 in sigma.letter_map[e.label.letter]:
                        assert b1 == b0 + (e.label.letter,)
                    else:
                        assert b1 == b0
            elif isinstance(e.label, DupStep):
                for i, (b0, b1) in enumerate(zip(src.config.buffers, dst.config.buffers)):
                    if i + 1 in sigma.letter_map[e.label.letter]:
                        assert b0[0] == e.label.letter and b1 == b0[1:]
                    else:
                        assert b1 == b0
            else:
                assert isinstance(e.label, EndRound)
                assert all(len(b) <= c for b, c in zip(src.config.buffers, kappa))


def test_intra_round_moves_are_acyclic(rng):
    for *_, arena in _random_arenas(rng, 40):
        g = nx.DiGraph()
        g.add_nodes_from(range(len(arena)))
        for e in arena.edges:
            if isinstance(e.label, DupStep):
                g.add_edge(e.src, e.dst)
                size = lambda v: sum(map(len, arena.vertices[v].config.buffers))
                assert size(e.dst) < size(e.src)
        assert nx.is_directed_acyclic_graph(g)


def test_fifo_discipline_on_random_paths(rng):
    for A, B, sigma, kappa, arena in _random_arenas(rng, 30):
        k = sigma.k
        for _ in range(20):
            v = arena.initial
            pushed = [[] for _ in range(k)]
            popped = [[] for _ in range(k)]
            for _ in range(20):
                if not arena.out[v]:
                    break
                e = arena.edges[rng.choice(arena.out[v])]
                if isinstance(e.label, (SpoilerStep, DupStep)):
                    log_ = pushed if isinstance(e.label, SpoilerStep) else popped
                    for i in sigma.letter_map[e.label.letter]:
                        log_[i - 1].append(e.label.letter)
                v = e.dst
                for i in range(k):
                    assert popped[i] == pushed[i][: len(popped[i])]
                    assert list(arena.vertices[v].config.buffers[i]) == pushed[i][len(popped[i]):]


def _edge_events(arena, e, B, sigma):
    dst = arena.vertices[e.dst]
    events = set()
    if isinstance(e.label, DupStep) and dst.config.q in B.accepting:
        events.add(0)
    for i in range(1, sigma.k + 1):
        touched = isinstance(e.label, DupStep) and i in sigma.letter_map[e.label.letter]
        if touched or not dst.config.buffers[i - 1]:
            events.add(i)
    return events


def test_priority_soundness_on_cycles(rng):
    checked = 0
    for A, B, sigma, kappa, arena in _random_arenas(rng, 25, max_vertices=200):
        g = nx.DiGraph()
        g.add_nodes_from(range(len(arena)))
        g.add_edges_from((e.src, e.dst) for e in arena.edges)
        for cycle in itertools.islice(nx.simple_cycles(g), 300):
            pairs = list(zip(cycle, cycle[1:] + cycle[:1]))
            # parallel edges give distinct cycles through the same vertices
            edge_sets = [[i for i in arena.out[u] if arena.edges[i].dst == w] for u, w in pairs]
            for choice in itertools.islice(itertools.product(*edge_sets), 8):
                realized = set().union(*(_edge_events(arena, arena.edges[i], B, sigma)
                                         for i in choice))
                top = max(arena.priority[v] for v in cycle)
                wraps = any(arena.vertices[v].wrapped for v in cycle)
                all_events = realized >= set(range(sigma.k + 1))
                assert (top == 2) == wraps
                assert wraps == all_events
                acc_a = any(arena.owner[v] is Player.SPOILER and arena.vertices[v].config.p
                            in A.accepting for v in cycle)
                assert (top == 1) == (not wraps and acc_a)
                checked += 1
    assert checked > 50
