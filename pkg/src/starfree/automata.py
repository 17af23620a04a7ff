"""Finite automata over digit (or digit-pair) alphabets.

Every :class:`Dfa` is complete: the transition table is total and a dead
state is kept explicitly when the language needs one.  Operations that
build new automata return them in canonical form (reachable states only,
numbered breadth-first from the initial state, letters visited in alphabet
order), so two minimal automata of the same language compare equal and
serialize byte-for-byte identically.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .errors import AlphabetMismatch, MonoidCapExceeded, NotAperiodic

DEFAULT_MONOID_CAP = 1_000_000


def _normalize_symbol(symbol):
    if isinstance(symbol, list):
        return tuple(_normalize_symbol(s) for s in symbol)
    return symbol


def check_alphabet(alphabet: Iterable) -> tuple:
    symbols = tuple(_normalize_symbol(s) for s in alphabet)
    if not symbols:
        raise ValueError("alphabet must be non-empty")
    if len(set(symbols)) != len(symbols):
        raise ValueError(f"alphabet has repeated symbols: {symbols!r}")
    if list(symbols) != sorted(symbols):
        raise ValueError(f"alphabet must be listed in increasing order: {symbols!r}")
    return symbols


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic automaton; ``delta[q][i]`` is the successor of
    state ``q`` on ``alphabet[i]``."""

    alphabet: tuple
    delta: tuple
    initial: int
    accepting: frozenset

    def __post_init__(self):
        object.__setattr__(self, "alphabet", check_alphabet(self.alphabet))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        n = len(self.delta)
        if n == 0:
            raise ValueError("a Dfa needs at least one state")
        if not 0 <= self.initial < n:
            raise ValueError(f"initial state {self.initial} out of range")
        for q in self.accepting:
            if not 0 <= q < n:
                raise ValueError(f"accepting state {q} out of range")
        k = len(self.alphabet)
        for q, row in enumerate(self.delta):
            if len(row) != k:
                raise ValueError(f"state {q} has {len(row)} transitions, expected {k}")
            for t in row:
                if not 0 <= t < n:
                    raise ValueError(f"transition from {q} to missing state {t}")

    @property
    def num_states(self) -> int:
        return len(self.delta)

    @cached_property
    def symbol_index(self) -> dict:
        return {a: i for i, a in enumerate(self.alphabet)}

    def step(self, state: int, symbol) -> int:
        return self.delta[state][self.symbol_index[symbol]]

    def run(self, word: Iterable, start: int | None = None) -> int:
        q = self.initial if start is None else start
        index = self.symbol_index
        delta = self.delta
        for a in word:
            q = delta[q][index[a]]
        return q

    def accepts(self, word: Iterable) -> bool:
        return self.run(word) in self.accepting

    def __contains__(self, word) -> bool:
        return self.accepts(word)

    def __repr__(self):
        return (f"Dfa(states={self.num_states}, alphabet={list(self.alphabet)}, "
                f"initial={self.initial}, accepting={sorted(self.accepting)})")


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton with epsilon moves.

    ``delta`` maps ``(state, symbol)`` to a set of states and ``eps`` maps a
    state to the states reachable by one epsilon move.  Missing keys mean no
    move.
    """

    alphabet: tuple
    num_states: int
    initials: frozenset
    accepting: frozenset
    delta: dict
    eps: dict

    def __post_init__(self):
        object.__setattr__(self, "alphabet", check_alphabet(self.alphabet))
        object.__setattr__(self, "initials", frozenset(self.initials))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        n = self.num_states
        symbols = set(self.alphabet)
        for q in itertools.chain(self.initials, self.accepting):
            if not 0 <= q < n:
                raise ValueError(f"state {q} out of range")
        for (q, a), targets in self.delta.items():
            if not 0 <= q < n or a not in symbols or any(not 0 <= t < n for t in targets):
                raise ValueError(f"bad transition {(q, a)} -> {targets}")
        for q, targets in self.eps.items():
            if not 0 <= q < n or any(not 0 <= t < n for t in targets):
                raise ValueError(f"bad epsilon move {q} -> {targets}")

    def closure(self, states: Iterable[int]) -> frozenset:
        seen = set(states)
        stack = list(seen)
        while stack:
            q = stack.pop()
            for t in self.eps.get(q, ()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def accepts(self, word: Iterable) -> bool:
        current = self.closure(self.initials)
        for a in word:
            current = self.closure(t for q in current for t in self.delta.get((q, a), ()))
        return bool(current & self.accepting)


@dataclass(frozen=True)
class StateMorphism:
    """Map from the states of an automaton onto the states of its minimal
    automaton.  Unreachable source states map to ``None``."""

    mapping: tuple

    def __call__(self, state: int) -> int | None:
        return self.mapping[state]

    def is_bijective(self) -> bool:
        image = [c for c in self.mapping if c is not None]
        return None not in self.mapping and len(set(image)) == len(image)


# --------------------------------------------------------------------------
# construction

def explore(alphabet: Sequence, start: Hashable,
            step: Callable[[Hashable, object], Hashable],
            accept: Callable[[Hashable], bool]) -> Dfa:
    """Build the Dfa of every state reachable from ``start`` under ``step``.

    States are arbitrary hashable values; they are numbered in BFS order.
    """
    alphabet = check_alphabet(alphabet)
    index = {start: 0}
    order = [start]
    rows = []
    i = 0
    while i < len(order):
        s = order[i]
        row = []
        for a in alphabet:
            t = step(s, a)
            j = index.get(t)
            if j is None:
                j = index[t] = len(order)
                order.append(t)
            row.append(j)
        rows.append(row)
        i += 1
    accepting = [j for j, s in enumerate(order) if accept(s)]
    return Dfa(alphabet, rows, 0, accepting)


def universal(alphabet: Sequence) -> Dfa:
    alphabet = check_alphabet(alphabet)
    return Dfa(alphabet, [[0] * len(alphabet)], 0, [0])


def empty(alphabet: Sequence) -> Dfa:
    alphabet = check_alphabet(alphabet)
    return Dfa(alphabet, [[0] * len(alphabet)], 0, [])


def from_words(alphabet: Sequence, words: Iterable[Sequence]) -> Dfa:
    """Minimal Dfa of a finite language."""
    alphabet = check_alphabet(alphabet)
    words = {tuple(_normalize_symbol(a) for a in w) for w in words}
    symbols = set(alphabet)
    for w in words:
        if not set(w) <= symbols:
            raise ValueError(f"word {w!r} uses letters outside {alphabet!r}")
    prefixes = {w[:i] for w in words for i in range(len(w) + 1)}

    def step(prefix, a):
        if prefix is None:
            return None
        longer = prefix + (a,)
        return longer if longer in prefixes else None

    dfa = explore(alphabet, (), step, lambda s: s in words)
    return minimize(dfa)[0]


def from_predicate(alphabet: Sequence, predicate: Callable[[tuple], bool], max_len: int) -> Dfa:
    """Dfa of the finite language ``{w : |w| <= max_len and predicate(w)}``."""
    return from_words(alphabet, (w for w in iter_words(alphabet, max_len) if predicate(w)))


def random_dfa(rng, states: int, letters: int, accept_prob: float = 0.5) -> Dfa:
    """A total Dfa over ``0..letters-1`` drawn from ``rng`` (a random.Random)."""
    delta = [[rng.randrange(states) for _ in range(letters)] for _ in range(states)]
    accepting = [q for q in range(states) if rng.random() < accept_prob]
    return Dfa(tuple(range(letters)), delta, 0, accepting)


def iter_words(alphabet: Sequence, max_len: int, min_len: int = 0) -> Iterator[tuple]:
    """All words of length ``min_len..max_len`` in shortlex order."""
    for n in range(min_len, max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def canonical(dfa: Dfa) -> Dfa:
    """Drop unreachable states and renumber in BFS order."""
    index = dfa.symbol_index
    return explore(dfa.alphabet, dfa.initial,
                   lambda q, a: dfa.delta[q][index[a]],
                   lambda q: q in dfa.accepting)


def reachable_states(dfa: Dfa) -> list:
    """Reachable states in BFS order, the numbering ``explore`` produces."""
    seen = {dfa.initial}
    order = [dfa.initial]
    for q in order:
        for t in dfa.delta[q]:
            if t not in seen:
                seen.add(t)
                order.append(t)
    return order


def minimize(dfa: Dfa) -> tuple[Dfa, StateMorphism]:
    """Minimal complete Dfa plus the state morphism onto it.

    Moore partition refinement on the reachable part; the quotient is
    renumbered canonically.
    """
    reach = reachable_states(dfa)
    delta = dfa.delta
    k = len(dfa.alphabet)
    cls = {q: int(q in dfa.accepting) for q in reach}
    count = len(set(cls.values()))
    while True:
        ids = {}
        new = {}
        for q in reach:
            sig = (cls[q],) + tuple(cls[delta[q][i]] for i in range(k))
            new[q] = ids.setdefault(sig, len(ids))
        cls = new
        if len(ids) == count:
            break
        count = len(ids)
    rep = {}
    for q in reach:
        rep.setdefault(cls[q], q)
    quotient_rows = [[cls[delta[rep[c]][i]] for i in range(k)] for c in range(count)]
    accepting_classes = {cls[q] for q in reach if q in dfa.accepting}
    quotient = Dfa(dfa.alphabet, quotient_rows, cls[dfa.initial], accepting_classes)
    # canonical numbering of the quotient
    renumber = {c: j for j, c in enumerate(reachable_states(quotient))}
    rows = [None] * count
    for c in range(count):
        rows[renumber[c]] = [renumber[t] for t in quotient_rows[c]]
    minimal = Dfa(dfa.alphabet, rows, 0, {renumber[c] for c in accepting_classes})
    mapping = tuple(renumber[cls[q]] if q in cls else None for q in range(dfa.num_states))
    return minimal, StateMorphism(mapping)


# --------------------------------------------------------------------------
# boolean algebra and rational operations

def _same_alphabet(lhs: Dfa, rhs: Dfa):
    if lhs.alphabet != rhs.alphabet:
        raise AlphabetMismatch(f"{list(lhs.alphabet)} != {list(rhs.alphabet)}")


_BOOLEAN_OPS = {
    "union": lambda a, b: a or b,
    "intersection": lambda a, b: a and b,
    "difference": lambda a, b: a and not b,
    "symmetric_difference": lambda a, b: a != b,
}


def boolean(lhs: Dfa, rhs: Dfa, op: str) -> Dfa:
    _same_alphabet(lhs, rhs)
    combine = _BOOLEAN_OPS[op]
    ld, rd = lhs.delta, rhs.delta
    k = len(lhs.alphabet)

    product = explore(range(k), (lhs.initial, rhs.initial),
                      lambda s, i: (ld[s[0]][i], rd[s[1]][i]),
                      lambda s: combine(s[0] in lhs.accepting, s[1] in rhs.accepting))
    product = Dfa(lhs.alphabet, product.delta, product.initial, product.accepting)
    return minimize(product)[0]


def union(lhs: Dfa, rhs: Dfa) -> Dfa:
    return boolean(lhs, rhs, "union")


def intersection(lhs: Dfa, rhs: Dfa) -> Dfa:
    return boolean(lhs, rhs, "intersection")


def difference(lhs: Dfa, rhs: Dfa) -> Dfa:
    return boolean(lhs, rhs, "difference")


def complement(dfa: Dfa) -> Dfa:
    flipped = set(range(dfa.num_states)) - dfa.accepting
    return minimize(Dfa(dfa.alphabet, dfa.delta, dfa.initial, flipped))[0]


def to_nfa(dfa: Dfa, offset: int = 0) -> Nfa:
    delta = {(q + offset, a): frozenset({row[i] + offset})
             for q, row in enumerate(dfa.delta) for i, a in enumerate(dfa.alphabet)}
    return Nfa(dfa.alphabet, dfa.num_states + offset, {dfa.initial + offset},
               {q + offset for q in dfa.accepting}, delta, {})


def determinize(nfa: Nfa) -> Dfa:
    """Subset construction; the empty subset serves as the dead state."""
    delta = nfa.delta
    start = nfa.closure(nfa.initials)

    def step(subset, a):
        return nfa.closure(t for q in subset for t in delta.get((q, a), ()))

    return explore(nfa.alphabet, start, step, lambda s: bool(s & nfa.accepting))


def concat(lhs: Dfa, rhs: Dfa) -> Dfa:
    _same_alphabet(lhs, rhs)
    n = lhs.num_states
    delta = dict(to_nfa(lhs).delta)
    delta.update(to_nfa(rhs, offset=n).delta)
    eps = {q: frozenset({rhs.initial + n}) for q in lhs.accepting}
    nfa = Nfa(lhs.alphabet, n + rhs.num_states, {lhs.initial},
              {q + n for q in rhs.accepting}, delta, eps)
    return minimize(determinize(nfa))[0]


def reverse(dfa: Dfa) -> Dfa:
    """Dfa accepting the mirror images of the accepted words."""
    delta = {}
    for q, row in enumerate(dfa.delta):
        for i, t in enumerate(row):
            delta.setdefault((t, dfa.alphabet[i]), set()).add(q)
    delta = {key: frozenset(v) for key, v in delta.items()}
    nfa = Nfa(dfa.alphabet, dfa.num_states, dfa.accepting, {dfa.initial}, delta, {})
    return minimize(determinize(nfa))[0]


def image(dfa: Dfa, mapping: Callable, alphabet: Sequence) -> Dfa:
    """Image of the language under the letter-to-letter map ``mapping``.

    Non-injective maps make the image nondeterministic; it is determinized.
    """
    alphabet = check_alphabet(alphabet)
    delta = {}
    for q, row in enumerate(dfa.delta):
        for i, t in enumerate(row):
            delta.setdefault((q, _normalize_symbol(mapping(dfa.alphabet[i]))), set()).add(t)
    delta = {key: frozenset(v) for key, v in delta.items()}
    nfa = Nfa(alphabet, dfa.num_states, {dfa.initial}, dfa.accepting, delta, {})
    return minimize(determinize(nfa))[0]


def inverse_image(dfa: Dfa, mapping: Callable, alphabet: Sequence) -> Dfa:
    """Words over ``alphabet`` whose letter-wise image under ``mapping`` is
    accepted by ``dfa``."""
    alphabet = check_alphabet(alphabet)
    index = dfa.symbol_index
    columns = [index[_normalize_symbol(mapping(a))] for a in alphabet]
    rows = [[row[c] for c in columns] for row in dfa.delta]
    return minimize(Dfa(alphabet, rows, dfa.initial, dfa.accepting))[0]


def restrict_alphabet(dfa: Dfa, symbols: Sequence) -> Dfa:
    """The accepted words that only use ``symbols``, as a Dfa over them."""
    return inverse_image(dfa, lambda a: a, symbols)


def extend_alphabet(dfa: Dfa, symbols: Sequence) -> Dfa:
    """Same language over a larger alphabet; new letters lead to a dead state."""
    alphabet = check_alphabet(symbols)
    if not set(dfa.alphabet) <= set(alphabet):
        raise AlphabetMismatch(f"{list(alphabet)} does not contain {list(dfa.alphabet)}")
    dead = dfa.num_states
    index = dfa.symbol_index
    rows = [[row[index[a]] if a in index else dead for a in alphabet] for row in dfa.delta]
    rows.append([dead] * len(alphabet))
    return minimize(Dfa(alphabet, rows, dfa.initial, dfa.accepting))[0]


def nonempty_words(alphabet: Sequence) -> Dfa:
    alphabet = check_alphabet(alphabet)
    k = len(alphabet)
    return Dfa(alphabet, [[1] * k, [1] * k], 0, [1])


def starting_with(alphabet: Sequence, symbol) -> Dfa:
    """Dfa for ``symbol . alphabet*``."""
    alphabet = check_alphabet(alphabet)
    rows = [[1 if a == symbol else 2 for a in alphabet], [1] * len(alphabet), [2] * len(alphabet)]
    return Dfa(alphabet, rows, 0, [1])


def leading_zero_closure(dfa: Dfa, zero=0) -> Dfa:
    """Dfa for ``zero* L``."""
    if zero not in dfa.symbol_index:
        raise AlphabetMismatch(f"{zero!r} is not a letter of {list(dfa.alphabet)}")
    base = to_nfa(dfa)
    fresh = dfa.num_states
    delta = dict(base.delta)
    delta[(fresh, zero)] = frozenset({fresh})
    nfa = Nfa(dfa.alphabet, fresh + 1, {fresh}, dfa.accepting, delta,
              {fresh: frozenset({dfa.initial})})
    return minimize(determinize(nfa))[0]


def strip_leading_zeros(dfa: Dfa, zero=0) -> Dfa:
    """Dfa for ``L minus zero.Sigma*``."""
    if zero not in dfa.symbol_index:
        raise AlphabetMismatch(f"{zero!r} is not a letter of {list(dfa.alphabet)}")
    return difference(dfa, starting_with(dfa.alphabet, zero))


def zero_quotient(dfa: Dfa, zero=0) -> Dfa:
    """Dfa for ``{w : zero^t w in L for some t >= 0}``."""
    orbit = [dfa.initial]
    while True:
        nxt = dfa.step(orbit[-1], zero)
        if nxt in orbit:
            break
        orbit.append(nxt)
    base = to_nfa(dfa)
    nfa = Nfa(dfa.alphabet, dfa.num_states, orbit, dfa.accepting, base.delta, {})
    return minimize(determinize(nfa))[0]


# --------------------------------------------------------------------------
# comparisons

def distinguishing_word(lhs: Dfa, rhs: Dfa) -> tuple | None:
    """Shortest (then alphabetically least) word in the symmetric difference."""
    _same_alphabet(lhs, rhs)
    start = (lhs.initial, rhs.initial)
    parent = {start: None}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        if (s[0] in lhs.accepting) != (s[1] in rhs.accepting):
            word = []
            while parent[s] is not None:
                s, a = parent[s]
                word.append(a)
            return tuple(reversed(word))
        for i, a in enumerate(lhs.alphabet):
            t = (lhs.delta[s[0]][i], rhs.delta[s[1]][i])
            if t not in parent:
                parent[t] = (s, a)
                queue.append(t)
    return None


def equivalent(lhs: Dfa, rhs: Dfa) -> bool:
    return distinguishing_word(lhs, rhs) is None


def shortest_word(dfa: Dfa) -> tuple | None:
    return distinguishing_word(dfa, empty(dfa.alphabet))


def is_empty(dfa: Dfa) -> bool:
    return shortest_word(dfa) is None


def count_words(dfa: Dfa, length: int) -> int:
    """Number of accepted words of exactly ``length`` letters."""
    counts = [0] * dfa.num_states
    counts[dfa.initial] = 1
    for _ in range(length):
        nxt = [0] * dfa.num_states
        for q, c in enumerate(counts):
            if c:
                for t in dfa.delta[q]:
                    nxt[t] += c
        counts = nxt
    return sum(counts[q] for q in dfa.accepting)


# --------------------------------------------------------------------------
# structural tests

@dataclass(frozen=True)
class PermutationWitness:
    """A word and a cycle of states of the minimal automaton that the word
    maps cyclically: ``cycle[i] -> cycle[i+1]`` and the last back to the
    first."""

    word: tuple
    cycle: tuple

    def holds_in(self, dfa: Dfa) -> bool:
        if len(self.cycle) < 2 or len(set(self.cycle)) != len(self.cycle):
            return False
        for i, q in enumerate(self.cycle):
            if dfa.run(self.word, q) != self.cycle[(i + 1) % len(self.cycle)]:
                return False
        return True


@dataclass(frozen=True)
class AperiodicityReport:
    aperiodic: bool
    index: int | None
    witness: PermutationWitness | None
    monoid_size: int
    automaton: Dfa

    def __post_init__(self):
        assert (self.index is None) != (self.witness is None)


def transition_monoid(dfa: Dfa, cap: int = DEFAULT_MONOID_CAP) -> dict:
    """Every transformation induced by a word, mapped to a shortest word
    inducing it.  Transformations are tuples ``f`` with ``f[q] = delta(q, w)``."""
    n = dfa.num_states
    gens = [tuple(row[i] for row in dfa.delta) for i in range(len(dfa.alphabet))]
    identity = tuple(range(n))
    words = {identity: ()}
    queue = deque([identity])
    while queue:
        f = queue.popleft()
        w = words[f]
        for a, g in zip(dfa.alphabet, gens):
            h = tuple(g[x] for x in f)
            if h not in words:
                words[h] = w + (a,)
                if len(words) > cap:
                    raise MonoidCapExceeded(f"transition monoid exceeds {cap} elements")
                queue.append(h)
    return words


def _compose(f, g):
    # first f, then g
    return tuple(g[x] for x in f)


def _element_index(f, n):
    """Least e >= 1 with f^e == f^(e+1), or None when f generates a group."""
    power = f
    for e in range(1, n + 1):
        nxt = _compose(power, f)
        if nxt == power:
            return e
        power = nxt
    return None


def _permuted_cycle(f, n):
    power = f
    for _ in range(n):
        power = _compose(power, f)
    for r in sorted(set(power)):
        if f[r] != r:
            cycle = [r]
            q = f[r]
            while q != r:
                cycle.append(q)
                q = f[q]
            return tuple(cycle)
    raise AssertionError("no cycle in a non-aperiodic transformation")


def is_aperiodic(dfa: Dfa, cap: int = DEFAULT_MONOID_CAP) -> AperiodicityReport:
    """Counter-freeness of the minimal automaton via its transition monoid."""
    minimal = minimize(dfa)[0]
    n = minimal.num_states
    monoid = transition_monoid(minimal, cap)
    index = 1
    for f, word in monoid.items():
        e = _element_index(f, n)
        if e is None:
            witness = PermutationWitness(word, _permuted_cycle(f, n))
            return AperiodicityReport(False, None, witness, len(monoid), minimal)
        index = max(index, e)
    return AperiodicityReport(True, index, None, len(monoid), minimal)


def aperiodicity_index(dfa: Dfa, cap: int = DEFAULT_MONOID_CAP) -> int:
    report = is_aperiodic(dfa, cap)
    if not report.aperiodic:
        raise NotAperiodic(f"word {report.witness.word!r} permutes states {report.witness.cycle!r}")
    return report.index


@dataclass(frozen=True)
class DefinitenessReport:
    definite: bool
    horizon: int | None
    witness: tuple | None
    automaton: Dfa


def is_definite(dfa: Dfa) -> DefinitenessReport:
    """Definiteness via the graph on pairs of distinct minimal states.

    The language is definite iff the graph is acyclic; the horizon is then
    the number of edges on a longest path plus one (zero for a one-state
    automaton, whose language ignores the input altogether).
    """
    minimal = minimize(dfa)[0]
    n = minimal.num_states
    nodes = [(p, q) for p in range(n) for q in range(p + 1, n)]
    if not nodes:
        return DefinitenessReport(True, 0, None, minimal)
    succ = {}
    indeg = {v: 0 for v in nodes}
    for p, q in nodes:
        targets = set()
        for i in range(len(minimal.alphabet)):
            a, b = minimal.delta[p][i], minimal.delta[q][i]
            if a != b:
                targets.add((min(a, b), max(a, b)))
        succ[(p, q)] = targets
        for t in targets:
            indeg[t] += 1
    # Kahn's algorithm doubles as the cycle test.
    order = [v for v in nodes if indeg[v] == 0]
    remaining = dict(indeg)
    for v in order:
        for t in succ[v]:
            remaining[t] -= 1
            if remaining[t] == 0:
                order.append(t)
    if len(order) < len(nodes):
        left = {v for v in nodes if remaining[v] > 0}
        pred = {}
        for v in left:
            for t in succ[v]:
                if t in left:
                    pred.setdefault(t, v)
        v = next(iter(sorted(left)))
        seen = []
        while v not in seen:
            seen.append(v)
            v = pred[v]
        cycle = seen[seen.index(v):]
        return DefinitenessReport(False, None, tuple(reversed(cycle)), minimal)
    longest = {}
    for v in reversed(order):
        longest[v] = max((longest[t] + 1 for t in succ[v]), default=0)
    return DefinitenessReport(True, max(longest.values()) + 1, None, minimal)


# --------------------------------------------------------------------------
# serialization

def _symbol_to_json(a):
    return list(_symbol_to_json(x) for x in a) if isinstance(a, tuple) else a


def to_json(dfa: Dfa) -> dict:
    return {
        "alphabet": [_symbol_to_json(a) for a in dfa.alphabet],
        "states": dfa.num_states,
        "initial": dfa.initial,
        "accepting": sorted(dfa.accepting),
        "transitions": [[q, i, t] for q, row in enumerate(dfa.delta) for i, t in enumerate(row)],
    }


def dumps(dfa: Dfa) -> str:
    return json.dumps(to_json(dfa))


def from_json(data: dict | str) -> Dfa:
    if isinstance(data, str):
        data = json.loads(data)
    alphabet = check_alphabet(data["alphabet"])
    n = data["states"]
    rows = [[None] * len(alphabet) for _ in range(n)]
    for q, i, t in data["transitions"]:
        rows[q][i] = t
    for q, row in enumerate(rows):
        if None in row:
            raise ValueError(f"state {q} lacks a transition on {alphabet[row.index(None)]!r}")
    return Dfa(alphabet, rows, data["initial"], data["accepting"])


def symbol_label(a) -> str:
    if isinstance(a, tuple):
        return "(" + ",".join(symbol_label(x) for x in a) + ")"
    return str(a)


def to_dot(dfa: Dfa, name: str = "dfa") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  __start [shape=point];",
             f"  __start -> {dfa.initial};"]
    for q in range(dfa.num_states):
        shape = "doublecircle" if q in dfa.accepting else "circle"
        lines.append(f"  {q} [shape={shape}];")
    for q, row in enumerate(dfa.delta):
        labels = {}
        for i, t in enumerate(row):
            labels.setdefault(t, []).append(symbol_label(dfa.alphabet[i]))
        for t in sorted(labels):
            lines.append(f'  {q} -> {t} [label="{",".join(labels[t])}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
