"""Built-in example automata and trace alphabets.

Each fixture is built in code so its structure can be read off directly.
Parameterized fixtures take ``n``.
"""
from .automata import NBA
from .traces import TraceAlphabet


def ex21_sigma() -> TraceAlphabet:
    # a in component 1, b in both, c in component 2
    return TraceAlphabet((("a", "b"), ("b", "c")))


def ex31_sigma() -> TraceAlphabet:
    return TraceAlphabet((("a", "b"), ("b",), ("c",)))


def ex31_A() -> NBA:
    return NBA(
        states=["p0", "p1", "p2", "p3"],
        alphabet=["a", "b", "c"],
        initial="p0",
        transitions={
            ("p0", "b", "p1"),
            ("p1", "b", "p2"),
            ("p2", "a", "p2"),
            ("p2", "c", "p3"),
            ("p3", "a", "p2"),
        },
        accepting={"p3"},
        name="ex31_A",
    )


def ex31_B() -> NBA:
    return NBA(
        states=["q0", "q1", "q2", "q3", "q4"],
        alphabet=["a", "b", "c"],
        initial="q0",
        transitions={
            ("q0", "c", "q1"),
            ("q1", "b", "q2"),
            ("q2", "b", "q3"),
            ("q3", "c", "q4"),
            ("q4", "a", "q3"),
        },
        accepting={"q3"},
        name="ex31_B",
    )


def thm33_sigma() -> TraceAlphabet:
    return TraceAlphabet((("a",), ("b",)))


def thm33_A(n: int = 1) -> NBA:
    """Cycle: n+1 a-steps from the accepting initial state, then b back."""
    states = [f"p{j}" for j in range(n + 2)]
    trans = {(states[j], "a", states[j + 1]) for j in range(n + 1)}
    trans.add((states[-1], "b", states[0]))
    return NBA(states, ["a", "b"], "p0", trans, {"p0"}, name=f"thm33_A_{n}")


def thm33_B(n: int = 1) -> NBA:
    """Cycle: b from the accepting initial state, then n+1 a-steps back."""
    states = [f"q{j}" for j in range(n + 2)]
    trans = {("q0", "b", states[-1])}
    trans |= {(states[j + 1], "a", states[j]) for j in range(n + 1)}
    return NBA(states, ["a", "b"], "q0", trans, {"q0"}, name=f"thm33_B_{n}")


def sec5ex_sigma() -> TraceAlphabet:
    return TraceAlphabet((("a", "b"),))


def sec5ex_A() -> NBA:
    return NBA(
        states=["p0", "p1"],
        alphabet=["a", "b"],
        initial="p0",
        transitions={("p0", "a", "p0"), ("p0", "b", "p1"), ("p1", "b", "p1")},
        accepting={"p0"},
        name="sec5ex_A",
    )


def sec5ex_B() -> NBA:
    return NBA(
        states=["q0", "q1", "q2"],
        alphabet=["a", "b"],
        initial="q0",
        transitions={
            ("q0", "a", "q0"),
            ("q0", "a", "q1"),
            ("q0", "b", "q2"),
            ("q1", "a", "q1"),
            ("q2", "b", "q2"),
        },
        accepting={"q1"},
        name="sec5ex_B",
    )


def ex54_sigma() -> TraceAlphabet:
    return TraceAlphabet((("a",), ("b",)))


def ex54_A() -> NBA:
    return NBA(
        states=["p0", "p1"],
        alphabet=["a", "b"],
        initial="p0",
        transitions={("p0", "b", "p0"), ("p0", "a", "p1"), ("p1", "b", "p1")},
        accepting={"p1"},
        name="ex54_A",
    )


def ex54_B() -> NBA:
    return NBA(
        states=["q0", "q1"],
        alphabet=["a", "b"],
        initial="q0",
        transitions={("q0", "a", "q1"), ("q1", "b", "q1")},
        accepting={"q1"},
        name="ex54_B",
    )


AUTOMATA = {
    "ex31_A": ex31_A,
    "ex31_B": ex31_B,
    "thm33_A": thm33_A,
    "thm33_B": thm33_B,
    "sec5ex_A": sec5ex_A,
    "sec5ex_B": sec5ex_B,
    "ex54_A": ex54_A,
    "ex54_B": ex54_B,
}

ALPHABETS = {
    "ex21_sigma": ex21_sigma,
    "ex31_sigma": ex31_sigma,
    "thm33_sigma": thm33_sigma,
    "sec5ex_sigma": sec5ex_sigma,
    "ex54_sigma": ex54_sigma,
}

PARAMETERIZED = {"thm33_A", "thm33_B"}

# (A, B, sigma) triples used for game-level checks
PAIRS = {
    "ex31": (ex31_A, ex31_B, ex31_sigma),
    "thm33": (thm33_A, thm33_B, thm33_sigma),
    "sec5ex": (sec5ex_A, sec5ex_B, sec5ex_sigma),
    "ex54": (ex54_A, ex54_B, ex54_sigma),
}


def names() -> list:
    return sorted(AUTOMATA) + sorted(ALPHABETS)


def get(name: str, n: int | None = None):
    if name in AUTOMATA:
        if name in PARAMETERIZED:
            return AUTOMATA[name]() if n is None else AUTOMATA[name](n)
        if n is not None:
            raise ValueError(f"fixture {name} takes no parameter")
        return AUTOMATA[name]()
    if name in ALPHABETS:
        if n is not None:
            raise ValueError(f"fixture {name} takes no parameter")
        return ALPHABETS[name]()
    raise KeyError(f"unknown fixture {name!r}; available: {', '.join(names())}")
