"""Nondeterministic Buchi automata, the ``.nba`` text format, and lasso words.

A word is a tuple of letters; letters and state ids are opaque strings.
"""
from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from ._graph import reachable, sccs


class ParseError(ValueError):
    """Malformed input text; ``lineno`` is 1-based, or None for whole-file errors."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


def _word(letters) -> tuple:
    # a plain string is a word of one-character letters
    return tuple(letters)


@dataclass(frozen=True)
class Lasso:
    """The ultimately periodic word ``stem . loop^omega``.

    Strings are split into one-character letters; pass a tuple or list for
    multi-character letters.
    """

    stem: tuple
    loop: tuple

    def __post_init__(self):
        object.__setattr__(self, "stem", _word(self.stem))
        object.__setattr__(self, "loop", _word(self.loop))
        if not self.loop:
            raise ValueError("lasso loop must be nonempty")

    @classmethod
    def parse(cls, text: str) -> Lasso:
        """Parse ``stem/loop``; whitespace-separated letters are allowed."""
        if text.count("/") != 1:
            raise ValueError(f"lasso literal {text!r} must contain exactly one '/'")
        stem, loop = text.split("/")
        return cls(_split_letters(stem), _split_letters(loop))

    def __str__(self):
        return f"{_join_letters(self.stem)}/{_join_letters(self.loop)}"

    def __len__(self):
        return len(self.stem) + len(self.loop)

    def letters(self) -> set:
        return set(self.stem) | set(self.loop)

    def prefix(self, n: int) -> tuple:
        """First ``n`` letters of the infinite word."""
        out = list(self.stem[:n])
        while len(out) < n:
            out.extend(self.loop[: n - len(out)])
        return tuple(out)

    def position_after(self, pos: int) -> int:
        """Successor in the position automaton (stem indices, then loop indices)."""
        nxt = pos + 1
        return len(self.stem) if nxt == len(self) else nxt

    def letter_at(self, pos: int):
        if pos < len(self.stem):
            return self.stem[pos]
        return self.loop[pos - len(self.stem)]


def _split_letters(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    if re.search(r"\s", text):
        return tuple(text.split())
    return tuple(text)


def _join_letters(word) -> str:
    if all(len(a) == 1 for a in word):
        return "".join(word)
    return " ".join(word)


@dataclass(frozen=True)
class FiniteRun:
    """Alternating run prefix ``q0 a0 q1 a1 ... qn``."""

    states: tuple
    letters: tuple

    def is_run_of(self, nba: NBA) -> bool:
        if len(self.states) != len(self.letters) + 1:
            return False
        if self.states[0] != nba.initial:
            return False
        return all(
            (self.states[j], a, self.states[j + 1]) in nba.transitions
            for j, a in enumerate(self.letters)
        )


@dataclass(frozen=True)
class NBA:
    states: tuple
    alphabet: tuple
    initial: str
    transitions: frozenset
    accepting: frozenset
    name: str = field(default="A", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions", frozenset(tuple(t) for t in self.transitions))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate state id")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate letter")
        states = set(self.states)
        letters = set(self.alphabet)
        if self.initial not in states:
            raise ValueError(f"initial state {self.initial!r} is not declared")
        if not self.accepting <= states:
            raise ValueError(f"undeclared accepting states {sorted(self.accepting - states)}")
        for src, a, dst in self.transitions:
            if src not in states or dst not in states:
                raise ValueError(f"undeclared state in transition {src} {a} {dst}")
            if a not in letters:
                raise ValueError(f"undeclared letter {a!r} in transition {src} {a} {dst}")

    @cached_property
    def _out(self) -> dict:
        order = {q: i for i, q in enumerate(self.states)}
        lorder = {a: i for i, a in enumerate(self.alphabet)}
        out = defaultdict(list)
        for src, a, dst in sorted(
            self.transitions, key=lambda t: (order[t[0]], lorder[t[1]], order[t[2]])
        ):
            out[src].append((a, dst))
        return dict(out)

    def successors(self, q) -> list:
        """Outgoing ``(letter, target)`` pairs of ``q`` in canonical order."""
        return self._out.get(q, [])

    def post(self, q, a) -> list:
        return [dst for b, dst in self.successors(q) if b == a]


def parse_nba(text: str) -> NBA:
    name = None
    alphabet = states = initial = None
    accepting: list = []
    trans: list = []  # (lineno, src, letter, dst)
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        keyword = head.strip() if sep else None
        parts = line.split()
        if parts[0] == "nba" and len(parts) == 2 and not sep:
            name = parts[1]
            section = None
        elif keyword == "alphabet":
            if alphabet is not None:
                raise ParseError("duplicate alphabet declaration", lineno)
            alphabet = rest.split()
            section = None
        elif keyword == "states":
            if states is not None:
                raise ParseError("duplicate states declaration", lineno)
            states = rest.split()
            section = None
        elif keyword == "initial":
            if initial is not None:
                raise ParseError("duplicate initial declaration", lineno)
            parts = rest.split()
            if len(parts) != 1:
                raise ParseError("exactly one initial state expected", lineno)
            initial = (parts[0], lineno)
            section = None
        elif keyword == "accepting":
            accepting.extend((q, lineno) for q in rest.split())
            section = None
        elif keyword == "trans":
            if rest.strip():
                raise ParseError("transitions go on the lines after 'trans:'", lineno)
            section = "trans"
        elif section == "trans" and not sep:
            if len(parts) != 3:
                raise ParseError(f"expected 'src letter dst', got {line!r}", lineno)
            trans.append((lineno, *parts))
        else:
            raise ParseError(f"syntax error: {line!r}", lineno)

    if alphabet is None:
        raise ParseError("missing alphabet section")
    if states is None:
        raise ParseError("missing states section")
    if initial is None:
        raise ParseError("missing initial section")
    declared = set(states)
    letters = set(alphabet)
    if len(declared) != len(states):
        raise ParseError("duplicate state id in states section")
    if len(letters) != len(alphabet):
        raise ParseError("duplicate letter in alphabet section")
    if initial[0] not in declared:
        raise ParseError(f"undeclared state {initial[0]!r}", initial[1])
    for q, lineno in accepting:
        if q not in declared:
            raise ParseError(f"undeclared state {q!r}", lineno)
    for lineno, src, a, dst in trans:
        for q in (src, dst):
            if q not in declared:
                raise ParseError(f"undeclared state {q!r}", lineno)
        if a not in letters:
            raise ParseError(f"undeclared letter {a!r}", lineno)
    return NBA(
        states=states,
        alphabet=alphabet,
        initial=initial[0],
        transitions={(s, a, d) for _, s, a, d in trans},
        accepting={q for q, _ in accepting},
        name=name or "A",
    )


def print_nba(nba: NBA) -> str:
    lines = [
        f"nba {nba.name}",
        "alphabet: " + " ".join(nba.alphabet),
        "states: " + " ".join(nba.states),
        f"initial: {nba.initial}",
        "accepting: " + " ".join(q for q in nba.states if q in nba.accepting),
        "trans:",
    ]
    for q in nba.states:
        for a, dst in nba.successors(q):
            lines.append(f"{q} {a} {dst}")
    return "\n".join(line.rstrip() for line in lines) + "\n"


def _check_letters(word: Iterable, alphabet, what="word"):
    foreign = set(word) - set(alphabet)
    if foreign:
        raise ValueError(f"{what} uses letters outside the alphabet: {sorted(foreign)}")


def accepts_lasso(nba: NBA, w: Lasso) -> bool:
    """Decide ``stem . loop^omega`` in L(nba) via the product with the lasso's positions."""
    _check_letters(w.letters(), nba.alphabet, "lasso")

    def succ(node):
        q, pos = node
        a = w.letter_at(pos)
        nxt = w.position_after(pos)
        return [(dst, nxt) for dst in nba.post(q, a)]

    nodes = reachable((nba.initial, 0), succ)
    for comp in sccs(nodes, succ):
        members = set(comp)
        if len(comp) == 1:
            (node,) = comp
            if node not in succ(node):
                continue
        if any(q in nba.accepting for q, _ in members):
            return True
    return False


def reachable_trim(nba: NBA) -> NBA:
    keep = reachable(nba.initial, lambda q: [d for _, d in nba.successors(q)])
    if len(keep) == len(nba.states):
        return nba
    return NBA(
        states=[q for q in nba.states if q in keep],
        alphabet=nba.alphabet,
        initial=nba.initial,
        transitions={t for t in nba.transitions if t[0] in keep},
        accepting=nba.accepting & keep,
        name=nba.name,
    )
