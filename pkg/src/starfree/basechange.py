"""Moving automata between base p and base p^k.

Grouping reads k base-p digits at a time; expansion replaces each base-p^k
letter by its zero-padded block of k base-p digits.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import automata as fa
from . import numeration as nm
from .errors import AlphabetMismatch, NotAPowerAlphabet, NotZeroClosed, PreservationViolated

DEFAULT_HORIZON = 10_000


def _base_of(dfa: fa.Dfa) -> int:
    p = len(dfa.alphabet)
    if dfa.alphabet != tuple(range(p)) or p < 2:
        raise AlphabetMismatch(f"expected digits 0..p-1, got {list(dfa.alphabet)}")
    return p


def block(j: int, p: int, k: int) -> tuple:
    """The length-k base-p digits of j, most significant first."""
    digits = []
    for _ in range(k):
        j, d = divmod(j, p)
        digits.append(d)
    return tuple(reversed(digits))


def power_exponent(p: int, q: int) -> int | None:
    """k >= 1 with p**k == q, or None."""
    k, power = 1, p
    while power < q:
        power *= p
        k += 1
    return k if power == q else None


def is_zero_closed(dfa: fa.Dfa) -> bool:
    return fa.equivalent(dfa, fa.leading_zero_closure(dfa))


def grouped_automaton(dfa: fa.Dfa, k: int) -> fa.Dfa:
    """The grouped automaton before minimization: same states, initial and
    accepting states; letter j acts as the block of j."""
    p = _base_of(dfa)
    if k < 1:
        raise ValueError("k must be at least 1")
    blocks = [block(j, p, k) for j in range(p ** k)]
    delta = [[dfa.run(b, q) for b in blocks] for q in range(dfa.num_states)]
    return fa.Dfa(tuple(range(p ** k)), delta, dfa.initial, dfa.accepting)


def group_dfa(dfa: fa.Dfa, k: int, closure: bool = True) -> fa.Dfa:
    """Base-p^k automaton of the same set.  The source must accept a
    0*-closed language; with ``closure`` it is closed first."""
    if closure:
        dfa = fa.leading_zero_closure(dfa)
    elif not is_zero_closed(dfa):
        raise NotZeroClosed("grouping needs a language closed under leading zeros")
    return fa.minimize(grouped_automaton(dfa, k))[0]


def expand_dfa(dfa: fa.Dfa, p: int, closure: bool = True) -> fa.Dfa:
    """Base-p automaton of the block images of L.  With ``closure`` the result
    is 0* rho_p(X) where X is the set of values of the words of L."""
    size = len(dfa.alphabet)
    k = power_exponent(p, size) if p >= 2 else None
    if k is None or dfa.alphabet != tuple(range(size)):
        raise NotAPowerAlphabet(f"alphabet of size {size} is not 0..{p}^k-1")

    # state: (source state, digits of the current block read so far)
    def step(state, d):
        q, prefix = state
        if q is None:
            return state
        prefix = prefix + (d,)
        if len(prefix) < k:
            return q, prefix
        return dfa.step(q, nm.numeric_value(p, prefix)), ()

    result = fa.explore(tuple(range(p)), (dfa.initial, ()), step,
                        lambda s: s[1] == () and s[0] in dfa.accepting)
    result = fa.minimize(result)[0]
    if not closure:
        return result
    # blocks carry their own leading zeros: drop them, then allow any padding
    return fa.leading_zero_closure(fa.zero_quotient(result))


@dataclass(frozen=True)
class GroupingReport:
    p: int
    k: int
    source: fa.Dfa
    raw: fa.Dfa
    grouped: fa.Dfa
    source_verdict: fa.AperiodicityReport
    grouped_verdict: fa.AperiodicityReport
    agreement: int
    samples: int
    # whether the source is 0* rho_p(X) for a set X, so that agreement must be total
    set_language: bool = True

    @property
    def preserved(self) -> bool:
        """The proven direction: aperiodic source gives aperiodic grouping."""
        return not self.source_verdict.aperiodic or self.grouped_verdict.aperiodic


def grouping_preservation_check(dfa: fa.Dfa, k: int,
                                horizon: int = DEFAULT_HORIZON) -> GroupingReport:
    p = _base_of(dfa)
    source = fa.leading_zero_closure(dfa)
    raw = grouped_automaton(source, k)
    grouped = fa.minimize(raw)[0]
    before = fa.is_aperiodic(source)
    after = fa.is_aperiodic(grouped)
    small, big = nm.PositionalBase(p), nm.PositionalBase(p ** k)
    agreement = sum(
        source.accepts(nm.greedy_repr(small, n)) == grouped.accepts(nm.greedy_repr(big, n))
        for n in range(horizon + 1))
    exact = fa.equivalent(source, fa.leading_zero_closure(fa.zero_quotient(source)))
    report = GroupingReport(p, k, source, raw, grouped, before, after, agreement, horizon + 1,
                            exact)
    if not report.preserved:
        raise PreservationViolated(f"aperiodic source lost aperiodicity when grouped by {k}: "
                                   f"{after.witness}")
    if exact and agreement != horizon + 1:
        raise PreservationViolated(f"grouped automaton disagrees on {horizon + 1 - agreement} "
                                   f"of {horizon + 1} integers")
    return report
