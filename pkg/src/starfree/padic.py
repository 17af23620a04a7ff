"""Bijective (p-adic) versus greedy p-ary representations.

Pairs of equal-length words are read as words over a pair alphabet.  The
normalization relation holds for (u, v) when u is a bijective word over
{1..p} padded on its most significant side with 0s, v is a word over
{0..p-1}, and both have the same numerical value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import automata as fa
from . import numeration as nm
from .errors import VerdictMismatch

LEFT, RIGHT = "left", "right"

# The bijective track carries its zero pad on the most significant side.
PAD_SIDE = "most-significant"


def pair_alphabet(left, right) -> tuple:
    return tuple(itertools.product(fa.check_alphabet(left), fa.check_alphabet(right)))


def _check_p(p: int):
    if p < 2:
        raise ValueError(f"base must be at least 2, got {p}")


def normalization_transducer_reversed(p: int) -> fa.Dfa:
    """Least significant digit first: a + carry = b + p * carry' on each pair,
    bijective digits first, then only pad zeros; accept with no carry left."""
    _check_p(p)
    alphabet = pair_alphabet(range(p + 1), range(p))

    def step(state, pair):
        if state is None:
            return None
        carry, padding = state
        a, b = pair
        if a == 0:
            padding = True
        elif padding:
            return None
        total = a + carry - b
        if total not in (0, p):
            return None
        return total // p, padding

    return fa.explore(alphabet, (0, False), step, lambda s: s is not None and s[0] == 0)


def normalization_transducer(p: int) -> fa.Dfa:
    """Most significant digit first version of the relation."""
    return fa.reverse(normalization_transducer_reversed(p))


def pad_pair(u, v) -> tuple:
    """Left-pad the shorter word with zeros and zip the two tracks."""
    u, v = tuple(u), tuple(v)
    width = max(len(u), len(v))
    u = (0,) * (width - len(u)) + u
    v = (0,) * (width - len(v)) + v
    return tuple(zip(u, v))


def relation_contains(transducer: fa.Dfa, u, v) -> bool:
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        return False
    return transducer.accepts(tuple(zip(u, v)))


def pad_product(dfa: fa.Dfa, other, side: str = LEFT) -> fa.Dfa:
    """Equal-length pairs whose ``side`` track lies in L, the other track
    free over ``other``."""
    if side == LEFT:
        return fa.inverse_image(dfa, lambda s: s[0], pair_alphabet(dfa.alphabet, other))
    if side == RIGHT:
        return fa.inverse_image(dfa, lambda s: s[1], pair_alphabet(other, dfa.alphabet))
    raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}")


def project(pairs: fa.Dfa, side: str = LEFT) -> fa.Dfa:
    """Erase the other track."""
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}")
    i = 0 if side == LEFT else 1
    alphabet = sorted({s[i] for s in pairs.alphabet})
    return fa.image(pairs, lambda s: s[i], alphabet)


def to_ary(dfa: fa.Dfa, p: int) -> fa.Dfa:
    """From bijective words of X (over 1..p) to 0* rho_p(X)."""
    _check_p(p)
    padded = fa.leading_zero_closure(fa.extend_alphabet(dfa, range(p + 1)))
    pairs = fa.intersection(pad_product(padded, range(p), LEFT), normalization_transducer(p))
    return project(pairs, RIGHT)


def to_adic(dfa: fa.Dfa, p: int) -> fa.Dfa:
    """From 0* rho_p(X) to the bijective words of X (over 1..p)."""
    _check_p(p)
    pairs = fa.intersection(pad_product(dfa, range(p + 1), RIGHT), normalization_transducer(p))
    padded = project(pairs, LEFT)
    # the left track is 0^j u with u bijective; drop the pad
    return fa.restrict_alphabet(fa.zero_quotient(padded), range(1, p + 1))


@dataclass(frozen=True)
class TransferReport:
    p: int
    ary: fa.Dfa
    adic: fa.Dfa
    ary_verdict: fa.AperiodicityReport
    adic_verdict: fa.AperiodicityReport
    round_trip: bool


def transfer_check(spec, p: int) -> TransferReport:
    """Aperiodicity of 0* rho_p(X) against that of the bijective words of X."""
    from .setspec import recognizer
    ary = recognizer(spec, nm.PositionalBase(p))
    adic = to_adic(ary, p)
    before, after = fa.is_aperiodic(ary), fa.is_aperiodic(adic)
    round_trip = fa.equivalent(to_ary(adic, p), fa.leading_zero_closure(ary))
    report = TransferReport(p, ary, adic, before, after, round_trip)
    if before.aperiodic != after.aperiodic:
        raise VerdictMismatch(f"p-ary aperiodic={before.aperiodic}, "
                              f"p-adic aperiodic={after.aperiodic}")
    return report
