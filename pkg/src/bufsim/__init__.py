"""Bounded multi-buffer simulation games between Buchi automata over a trace
alphabet, and a sound incremental test for trace-closure inclusion."""

from .automata import NBA, FiniteRun, Lasso, ParseError, accepts_lasso, parse_nba, print_nba, reachable_trim
from .gamegraph import (
    Arena,
    ArenaVertex,
    Configuration,
    Player,
    UnsupportedCapacity,
    arena_size_bound,
    build_arena,
    export_dot,
    parse_capacity,
)
from .inclusion import (
    Tag,
    Verdict,
    check_soundness_sample,
    decide_simulation,
    enumerate_accepted_lassos,
    incremental_include,
)
from .solver import Solution, solve_spm, solve_zielonka, verify_strategy
from .traces import (
    TraceAlphabet,
    closure_member,
    dependence,
    finite_trace_equiv,
    lasso_trace_equiv,
    parse_sigma,
    project,
    project_lasso,
)

__version__ = "0.1.0"
