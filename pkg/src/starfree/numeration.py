"""Numeration systems: positional bases, linear recurrences, bijective bases.

Words are tuples of small ints, most significant digit first.  Integer
values are Python ints, so basis elements never overflow.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from . import automata as fa
from .errors import (CanonicalFormInvalid, CanonicalFormUnknown, ConvergenceFailure,
                     DigitOutOfRange, InvalidSystem, KindMismatch)

# horizon used to validate user-supplied canonical automata and digit bounds
VALIDATION_HORIZON = 10_000
_RATIO_HORIZON = 200


class NumerationSystem:
    """Common interface.  ``basis(i)`` is U_i; ``digits`` is the digit alphabet."""

    kind = "abstract"
    greedy = True

    def basis(self, i: int) -> int:
        raise NotImplementedError

    @property
    def digits(self) -> tuple:
        raise NotImplementedError

    def to_config(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class PositionalBase(NumerationSystem):
    k: int
    kind = "base"

    def __post_init__(self):
        if self.k < 2:
            raise InvalidSystem(f"base must be at least 2, got {self.k}")

    def basis(self, i: int) -> int:
        if i < 0:
            raise ValueError("basis index must be non-negative")
        return self.k ** i

    @property
    def digits(self) -> tuple:
        return tuple(range(self.k))

    def to_config(self) -> dict:
        return {"type": "base", "k": self.k}

    def __str__(self):
        return f"base:{self.k}"


@dataclass(frozen=True)
class BijectiveBase(NumerationSystem):
    p: int
    kind = "bijective"
    greedy = False

    def __post_init__(self):
        if self.p < 2:
            raise InvalidSystem(f"bijective base must be at least 2, got {self.p}")

    def basis(self, i: int) -> int:
        if i < 0:
            raise ValueError("basis index must be non-negative")
        return self.p ** i

    @property
    def digits(self) -> tuple:
        return tuple(range(1, self.p + 1))

    def to_config(self) -> dict:
        return {"type": "bijective", "p": self.p}

    def __str__(self):
        return f"bijective:{self.p}"


@dataclass(frozen=True, eq=False)
class LinearRecurrence(NumerationSystem):
    """U_{n+k} = c_{k-1} U_{n+k-1} + ... + c_0 U_n.

    ``coeffs`` lists c_{k-1}, ..., c_0 (so Fibonacci is ``(1, 1)``) and
    ``initial`` lists U_0, ..., U_{k-1}.  ``canonical`` optionally supplies
    the automaton of 0* rho_U(N) for systems without a built-in one.
    """

    coeffs: tuple
    initial: tuple
    canonical: fa.Dfa | None = None
    _cache: list = field(default_factory=list, repr=False, compare=False)
    kind = "linear"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "initial", tuple(int(u) for u in self.initial))
        if not self.coeffs:
            raise InvalidSystem("a recurrence needs at least one coefficient")
        if self.coeffs[-1] == 0:
            raise InvalidSystem("the constant coefficient c_0 must be non-zero")
        if len(self.initial) != len(self.coeffs):
            raise InvalidSystem(f"need {len(self.coeffs)} initial values, got {len(self.initial)}")
        if self.initial[0] != 1:
            raise InvalidSystem("U_0 must be 1")
        if any(b <= a for a, b in zip(self.initial, self.initial[1:])):
            raise InvalidSystem("initial values must be strictly increasing")
        self._cache.extend(self.initial)
        self.basis(_RATIO_HORIZON)

    def __eq__(self, other):
        return (isinstance(other, LinearRecurrence) and self.coeffs == other.coeffs
                and self.initial == other.initial)

    def __hash__(self):
        return hash((self.coeffs, self.initial))

    def basis(self, i: int) -> int:
        cache = self._cache
        if 0 <= i < len(cache):
            return cache[i]
        if i < 0:
            raise ValueError("basis index must be non-negative")
        k = len(self.coeffs)
        while len(cache) <= i:
            window = cache[-k:]
            nxt = sum(c * u for c, u in zip(self.coeffs, reversed(window)))
            if nxt <= cache[-1]:
                raise InvalidSystem(f"recurrence is not increasing at index {len(cache)}: "
                                    f"{cache[-1]} then {nxt}")
            cache.append(nxt)
        return cache[i]

    @cached_property
    def max_digit(self) -> int:
        # greedy digit at index n is at most (U_{n+1} - 1) // U_n
        self.basis(_RATIO_HORIZON + 1)
        cache = self._cache
        return max((cache[n + 1] - 1) // cache[n] for n in range(_RATIO_HORIZON))

    @property
    def digits(self) -> tuple:
        return tuple(range(self.max_digit + 1))

    def is_fibonacci(self) -> bool:
        return self.coeffs == (1, 1) and self.initial == (1, 2)

    def to_config(self) -> dict:
        return {"type": "linear", "coeffs": list(self.coeffs), "initial": list(self.initial)}

    def __str__(self):
        if self.is_fibonacci():
            return "fibonacci"
        return ("linear:" + ",".join(map(str, self.coeffs)) + ":"
                + ",".join(map(str, self.initial)))


def fibonacci() -> LinearRecurrence:
    return LinearRecurrence((1, 1), (1, 2))


def system_from_config(config: dict | str, base_dir: Path | None = None) -> NumerationSystem:
    """Parse the JSON system config or the short forms ``base:K``,
    ``bijective:P``, ``fibonacci`` and ``linear:C..:U..``."""
    if isinstance(config, str):
        text = config.strip()
        if text.startswith("{"):
            return system_from_config(json.loads(text), base_dir)
        name, _, arg = text.partition(":")
        if name == "base":
            return PositionalBase(int(arg))
        if name == "bijective":
            return BijectiveBase(int(arg))
        if name in ("fib", "fibonacci"):
            return fibonacci()
        if name == "linear":
            coeffs, _, initial = arg.partition(":")
            return LinearRecurrence(tuple(int(c) for c in coeffs.split(",")),
                                    tuple(int(u) for u in initial.split(",")))
        raise ValueError(f"unknown numeration system {config!r}")
    kind = config.get("type")
    if kind == "base":
        return PositionalBase(int(config["k"]))
    if kind == "bijective":
        return BijectiveBase(int(config["p"]))
    if kind == "linear":
        canonical = None
        if config.get("canonical_dfa"):
            path = Path(config["canonical_dfa"])
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            canonical = fa.from_json(path.read_text())
        return LinearRecurrence(tuple(config["coeffs"]), tuple(config["initial"]), canonical)
    raise ValueError(f"unknown numeration system type {kind!r}")


def _require_greedy(system: NumerationSystem):
    if not system.greedy:
        raise KindMismatch(f"{system} has no greedy representations")


# --------------------------------------------------------------------------
# representations

def greedy_repr(system: NumerationSystem, n: int) -> tuple:
    """Normalized representation rho_U(n); the empty word for 0."""
    _require_greedy(system)
    if n < 0:
        raise ValueError("only non-negative integers have representations")
    if n == 0:
        return ()
    if isinstance(system, PositionalBase):
        digits = []
        while n:
            n, d = divmod(n, system.k)
            digits.append(d)
        return tuple(reversed(digits))
    i = 1
    while system.basis(i) <= n:
        i *= 2
    top = bisect_right(system._cache, n) - 1
    digits = []
    for u in reversed(system._cache[:top + 1]):
        d, n = divmod(n, u)
        digits.append(d)
    return tuple(digits)


def bijective_repr(p: int, n: int) -> tuple:
    """The unique word over {1..p} with value n."""
    if p < 2:
        raise InvalidSystem(f"bijective base must be at least 2, got {p}")
    if n < 0:
        raise ValueError("only non-negative integers have representations")
    digits = []
    while n > 0:
        d = (n - 1) % p + 1
        digits.append(d)
        n = (n - d) // p
    return tuple(reversed(digits))


def representation(system: NumerationSystem, n: int) -> tuple:
    if isinstance(system, BijectiveBase):
        return bijective_repr(system.p, n)
    return greedy_repr(system, n)


def numeric_value(p: int, word) -> int:
    """pi_p(w) for a word over any integer digits."""
    total = 0
    for d in word:
        total = total * p + d
    return total


def value(system: NumerationSystem, word) -> int:
    """Sum of w_i U_i, position 0 being the rightmost letter."""
    allowed = set(system.digits)
    for d in word:
        if d not in allowed:
            raise DigitOutOfRange(f"digit {d} not in {min(allowed)}..{max(allowed)} for {system}")
    if isinstance(system, (PositionalBase, BijectiveBase)):
        return numeric_value(system.basis(1), word)
    n = len(word)
    system.basis(n)
    return sum(d * u for d, u in zip(reversed(word), system._cache))


def leading_term(system: NumerationSystem, x: int) -> int:
    """V_U(x): the largest basis element with a non-zero greedy digit."""
    word = greedy_repr(system, x)
    if not word:
        return system.basis(0)
    return system.basis(len(word) - 1)


def trailing_term(system: NumerationSystem, x: int) -> int:
    """The smallest basis element with a non-zero greedy digit (1 for 0).

    In base 2 this is the greatest power of 2 dividing x.
    """
    word = greedy_repr(system, x)
    for i, d in enumerate(reversed(word)):
        if d:
            return system.basis(i)
    return system.basis(0)


def basis_index(system: NumerationSystem, y: int) -> int | None:
    """i with U_i = y, or None when y is not a basis element."""
    i = 0
    while True:
        u = system.basis(i)
        if u == y:
            return i
        if u > y:
            return None
        i += 1


def epsilon(system: NumerationSystem, x: int, y: int, j: int = 1) -> bool:
    """True iff y is a basis element whose greedy digit in x is j."""
    _require_greedy(system)
    if j < 1:
        raise ValueError("coefficient j must be at least 1")
    i = basis_index(system, y)
    if i is None:
        return False
    word = greedy_repr(system, x)
    return i < len(word) and word[len(word) - 1 - i] == j


def format_word(word) -> str:
    """Bare digit string; dot-separated when some digit needs two characters."""
    if any(d >= 10 for d in word):
        return ".".join(str(d) for d in word)
    return "".join(str(d) for d in word)


def parse_word(text: str) -> tuple:
    text = text.strip()
    if "." in text:
        return tuple(int(d) for d in text.split("."))
    return tuple(int(ch) for ch in text)


# --------------------------------------------------------------------------
# automata

def _no_factor_11() -> fa.Dfa:
    # states: 0 = last letter not 1, 1 = last letter 1, 2 = dead
    return fa.Dfa((0, 1), [[0, 1], [0, 2], [2, 2]], 0, [0, 1])


def canonical_dfa(system: NumerationSystem) -> fa.Dfa:
    """Minimal Dfa of 0* rho_U(N)."""
    if isinstance(system, PositionalBase):
        return fa.universal(system.digits)
    if isinstance(system, LinearRecurrence):
        if system.is_fibonacci():
            return _no_factor_11()
        if len(system.coeffs) == 1:
            # U_n = c^n: every word over {0..c-1} is canonical
            return fa.universal(system.digits)
        if system.canonical is None:
            raise CanonicalFormUnknown(f"no canonical automaton known for {system}; supply one")
        dfa = fa.minimize(system.canonical)[0]
        validate_canonical(system, dfa)
        return dfa
    raise KindMismatch(f"{system} has no greedy representations")


def validate_canonical(system: NumerationSystem, dfa: fa.Dfa, horizon: int = VALIDATION_HORIZON):
    """Check that ``dfa`` accepts exactly the zero-padded greedy words.

    For each length L with U_L <= horizon + 1, every padded representation of
    n < U_L must be accepted and exactly U_L words of length L accepted.
    """
    if dfa.alphabet != system.digits:
        raise CanonicalFormInvalid(f"alphabet {list(dfa.alphabet)} != {list(system.digits)}")
    length = 0
    while system.basis(length) <= horizon + 1:
        accepted = fa.count_words(dfa, length)
        if accepted != system.basis(length):
            raise CanonicalFormInvalid(
                f"{accepted} words of length {length} accepted, expected {system.basis(length)}")
        length += 1
    for n in range(horizon + 1):
        word = greedy_repr(system, n)
        if not dfa.accepts(word) or not dfa.accepts((0,) + word):
            raise CanonicalFormInvalid(f"representation of {n} rejected")


def _residue_cycle(system: NumerationSystem, m: int) -> tuple[list, int]:
    """Residues U_i mod m for i < preperiod + period, and the preperiod."""
    if isinstance(system, PositionalBase):
        order = 1
    else:
        order = len(system.coeffs)
    seen = {}
    residues = []
    i = 0
    while True:
        window = tuple(system.basis(i + t) % m for t in range(order))
        if window in seen:
            return residues, seen[window]
        seen[window] = i
        residues.append(window[0])
        i += 1


def residue_dfa(system: NumerationSystem, m: int, r: int) -> fa.Dfa:
    """Minimal Dfa of the canonical words whose value is r modulo m.

    Reads least significant digit first over (phase, partial sum) where the
    phase indexes the eventually periodic sequence U_i mod m; the result is
    reversed to the most-significant-first convention.
    """
    _require_greedy(system)
    if m < 1 or not 0 <= r < m:
        raise ValueError(f"need 0 <= r < m, got r={r}, m={m}")
    residues, pre = _residue_cycle(system, m)
    last = len(residues)

    def step(state, d):
        phase, total = state
        total = (total + d * residues[phase]) % m
        phase = phase + 1 if phase + 1 < last else pre
        return phase, total

    lsd_first = fa.explore(system.digits, (0, 0), step, lambda s: s[1] == r)
    return fa.intersection(fa.reverse(lsd_first), canonical_dfa(system))


def finite_set_dfa(system: NumerationSystem, numbers) -> fa.Dfa:
    """Minimal Dfa of 0* rho_U(F) for a finite set F."""
    words = [greedy_repr(system, n) for n in numbers]
    return fa.leading_zero_closure(fa.from_words(system.digits, words), 0)


# --------------------------------------------------------------------------
# Pisot heuristic

@dataclass(frozen=True)
class PisotVerdict:
    is_pisot_like: bool
    dominant_root: float
    other_moduli: tuple
    tolerance: float
    roots: tuple = ()


def characteristic_roots(coeffs, residual: float = 1e-10, max_iter: int = 10_000) -> list:
    """Roots of x^k - c_{k-1} x^{k-1} - ... - c_0 by Durand-Kerner iteration."""
    poly = [1.0] + [-float(c) for c in coeffs]  # highest degree first
    k = len(coeffs)
    if k == 1:
        return [complex(coeffs[0])]

    def evaluate(z):
        acc = 0j
        for a in poly:
            acc = acc * z + a
        return acc

    bound = 1 + max(abs(a) for a in poly[1:])
    seed = complex(0.4, 0.9)
    roots = [bound * seed ** i for i in range(k)]
    for _ in range(max_iter):
        updated = []
        for i, z in enumerate(roots):
            denom = 1
            for j, w in enumerate(roots):
                if i != j:
                    denom *= z - w
            updated.append(z - evaluate(z) / denom if denom != 0 else z + 1e-6)
        roots = updated
        if max(abs(evaluate(z)) for z in roots) < residual:
            return roots
    raise ConvergenceFailure(f"root iteration did not reach residual {residual}")


def pisot_check(system: LinearRecurrence | tuple, tolerance: float = 1e-6) -> PisotVerdict:
    """Numeric test that exactly one root exceeds 1 and the others lie
    strictly inside the unit disc.  Irreducibility is not checked."""
    coeffs = system.coeffs if isinstance(system, LinearRecurrence) else tuple(system)
    if not coeffs:
        raise InvalidSystem("empty recurrence")
    if coeffs[-1] == 0:
        raise InvalidSystem("the constant coefficient c_0 must be non-zero")
    roots = sorted(characteristic_roots(coeffs), key=abs, reverse=True)
    dominant, others = roots[0], roots[1:]
    moduli = tuple(abs(z) for z in others)
    real_dominant = abs(dominant.imag) <= tolerance and dominant.real > 1 + tolerance
    verdict = real_dominant and all(mod < 1 - tolerance for mod in moduli)
    return PisotVerdict(verdict, dominant.real, moduli, tolerance, tuple(roots))


def dominant_root(coeffs) -> float:
    return max(characteristic_roots(coeffs), key=abs).real

