import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import bijective_table, digits_value, fibonacci_basis, greedy, words
from starfree import automata as fa
from starfree import numeration as nm
from starfree.errors import (CanonicalFormInvalid, CanonicalFormUnknown, DigitOutOfRange,
                             InvalidSystem, KindMismatch)

FIB = nm.fibonacci()
B2, B3 = nm.PositionalBase(2), nm.PositionalBase(3)


def test_basis_values():
    assert [FIB.basis(i) for i in range(8)] == [1, 2, 3, 5, 8, 13, 21, 34]
    assert B2.basis(6) == 64
    assert nm.BijectiveBase(2).basis(3) == 8


def test_invalid_systems():
    with pytest.raises(InvalidSystem):
        nm.PositionalBase(1)
    with pytest.raises(InvalidSystem):
        nm.LinearRecurrence((1, 0), (1, 2))
    with pytest.raises(InvalidSystem):
        nm.LinearRecurrence((1, 1), (2, 3))
    with pytest.raises(InvalidSystem):
        # 1, 2, then 2 - 1 = 1
        nm.LinearRecurrence((1, -1), (1, 2))


def test_representation_examples():
    assert nm.greedy_repr(B2, 74) == (1, 0, 0, 1, 0, 1, 0)
    assert nm.greedy_repr(B2, 0) == ()
    assert nm.greedy_repr(FIB, 4) == (1, 0, 1)
    assert nm.value(B2, (1, 0, 0, 1)) == 9
    assert nm.value(nm.BijectiveBase(2), (1, 2, 1)) == 9
    assert nm.value(FIB, (1, 0, 1, 0, 1)) == 12
    assert nm.bijective_repr(2, 9) == (1, 2, 1)
    assert nm.bijective_repr(2, 2) == (2,)
    assert nm.bijective_repr(2, 0) == ()


def test_value_checks_digits():
    with pytest.raises(DigitOutOfRange):
        nm.value(B2, (1, 2))
    with pytest.raises(DigitOutOfRange):
        nm.value(nm.BijectiveBase(2), (1, 0))
    # canonical form is not required
    assert nm.value(FIB, (1, 1)) == 3


def test_bijective_systems_have_no_greedy_repr():
    with pytest.raises(KindMismatch):
        nm.greedy_repr(nm.BijectiveBase(2), 3)
    with pytest.raises(KindMismatch):
        nm.epsilon(nm.BijectiveBase(2), 3, 1)


@pytest.mark.parametrize("system", [B2, B3, nm.PositionalBase(10), FIB],
                         ids=str)
def test_greedy_matches_oracle(system):
    basis = fibonacci_basis(40) if system == FIB else [system.k ** i for i in range(40)]
    for n in range(3000):
        assert nm.greedy_repr(system, n) == greedy(basis, n)


@pytest.mark.parametrize("p", [2, 3])
def test_bijective_matches_enumeration(p):
    table = bijective_table(p, 7)
    for n, w in table.items():
        assert nm.bijective_repr(p, n) == w


def test_bijective_is_injective_and_zero_free():
    seen = set()
    for n in range(100_001):
        w = nm.bijective_repr(2, n)
        assert 0 not in w
        seen.add(w)
    assert len(seen) == 100_001


@pytest.mark.parametrize("system", [B2, B3, FIB], ids=str)
def test_greedy_words_are_canonical(system):
    dfa = nm.canonical_dfa(system)
    for n in range(2000):
        w = nm.greedy_repr(system, n)
        assert dfa.accepts(w) and dfa.accepts((0, 0) + w)


@pytest.mark.parametrize("system,max_len", [(B2, 8), (B3, 6), (FIB, 8)], ids=str)
def test_order_compatibility(system, max_len):
    dfa = nm.canonical_dfa(system)
    for length in range(1, max_len + 1):
        # itertools.product yields radix order
        vals = [nm.value(system, w) for w in itertools.product(system.digits, repeat=length)
                if dfa.accepts(w)]
        assert all(a < b for a, b in zip(vals, vals[1:]))
        assert vals == list(range(len(vals)))


def test_leading_term():
    assert nm.leading_term(B2, 74) == 64
    assert nm.leading_term(B2, 0) == 1
    powers = {2 ** i for i in range(9)}
    for x in range(1, 257):
        assert (nm.leading_term(B2, x) == x) == (x in powers)
    assert nm.leading_term(FIB, 12) == 8


def test_trailing_term_is_largest_dividing_power():
    assert nm.trailing_term(B2, 0) == 1
    for x in range(1, 1025):
        assert nm.trailing_term(B2, x) == x & -x


def test_epsilon_examples():
    assert nm.epsilon(B2, 74, 8)
    assert not nm.epsilon(B2, 74, 16)
    assert not nm.epsilon(B2, 74, 31)
    for x in range(300):
        assert nm.epsilon(B2, x, x) == (x > 0 and x & (x - 1) == 0)


def test_epsilon_decomposition_fibonacci():
    basis = [FIB.basis(i) for i in range(25)]
    for x in range(4001):
        total = sum(j * y for y in basis for j in FIB.digits[1:] if nm.epsilon(FIB, x, y, j))
        assert total == x


def _display(x, y, v2):
    """The first-order definition of eps_2 from V_2, with z and t searched."""
    if v2(y) != y or y == 0:
        return False
    return any((t := x - y - z) >= 0 and (t == 0 or y < v2(t)) for z in range(y))


def test_epsilon_interdefinable_with_dividing_power():
    v2 = lambda x: nm.trailing_term(B2, x)  # noqa: E731
    for x in range(257):
        for y in range(257):
            assert _display(x, y, v2) == nm.epsilon(B2, x, y)


def test_epsilon_from_dividing_power_and_back():
    for x in range(1, 513):
        candidates = [y for y in range(1, 513) if nm.epsilon(B2, x, y)]
        least = [y for y in candidates if all(y <= z for z in candidates)]
        assert least == [nm.trailing_term(B2, x)]


def test_display_fails_with_leading_term_reading():
    # 8 = 5 + 2 + 1 with V(5) = 4 > 2, yet 2 does not occur in 1000
    v = lambda x: nm.leading_term(B2, x)  # noqa: E731
    assert _display(8, 2, v) and not nm.epsilon(B2, 8, 2)


def test_canonical_dfas():
    assert fa.equivalent(nm.canonical_dfa(nm.PositionalBase(4)), fa.universal(range(4)))
    fib = nm.canonical_dfa(FIB)
    assert not fib.accepts((0, 1, 1, 0)) and fib.accepts((0, 1, 0, 1))
    assert fa.is_aperiodic(fib).aperiodic


def test_canonical_dfa_for_supplied_systems():
    tribonacci = nm.LinearRecurrence((1, 1, 1), (1, 2, 4))
    with pytest.raises(CanonicalFormUnknown):
        nm.canonical_dfa(tribonacci)
    no111 = fa.explore((0, 1), 0, lambda q, a: 3 if q == 3 else (q + 1 if a else 0),
                        lambda q: q < 3)
    supplied = nm.LinearRecurrence((1, 1, 1), (1, 2, 4), no111)
    assert fa.equivalent(nm.canonical_dfa(supplied), no111)
    with pytest.raises(CanonicalFormInvalid):
        nm.canonical_dfa(nm.LinearRecurrence((1, 1, 1), (1, 2, 4), nm.canonical_dfa(FIB)))


def test_power_recurrence_is_positional():
    four = nm.LinearRecurrence((4,), (1,))
    assert fa.equivalent(nm.canonical_dfa(four), fa.universal(range(4)))
    assert nm.greedy_repr(four, 27) == nm.greedy_repr(nm.PositionalBase(4), 27)


def test_residue_dfa_examples():
    even2 = nm.residue_dfa(B2, 2, 0)
    assert same(even2, lambda w: not w or w[-1] == 0, (0, 1), 8)
    assert fa.is_aperiodic(even2).aperiodic
    even3 = nm.residue_dfa(B3, 2, 0)
    assert same(even3, lambda w: w.count(1) % 2 == 0, (0, 1, 2), 6)
    assert not fa.is_aperiodic(even3).aperiodic
    assert not fa.is_aperiodic(nm.residue_dfa(FIB, 2, 0)).aperiodic


def same(dfa, predicate, alphabet, max_len):
    return all(dfa.accepts(w) == predicate(w) for w in words(alphabet, max_len))


@pytest.mark.parametrize("system,m", [(nm.PositionalBase(k), m) for k in range(2, 7)
                                      for m in range(2, 7)] + [(FIB, 2), (FIB, 3)], ids=str)
def test_residue_membership(system, m):
    dfas = [nm.residue_dfa(system, m, r) for r in range(m)]
    for n in range(0, 10_001, 7 if system != FIB else 1):
        w = nm.greedy_repr(system, n)
        assert [d.accepts(w) for d in dfas] == [n % m == r for r in range(m)]


def test_fibonacci_parity_has_period_three():
    parities = [nm.value(FIB, (1,) + (0, 1) * n) % 2 for n in range(21)]
    assert parities == [parities[i % 3] for i in range(21)]
    assert all(parities[i:i + 3].count(0) == 2 for i in range(19))


def test_finite_set_dfa():
    dfa = nm.finite_set_dfa(B2, [0, 5, 9])
    accepted = {n for n in range(64) if dfa.accepts(nm.greedy_repr(B2, n))}
    assert accepted == {0, 5, 9}
    assert dfa.accepts((0, 0, 1, 0, 1))


def test_pisot():
    fib = nm.pisot_check(FIB)
    assert fib.is_pisot_like
    assert math.isclose(fib.dominant_root, (1 + 5 ** 0.5) / 2, rel_tol=1e-9)
    four = nm.pisot_check((4,))
    assert four.is_pisot_like and math.isclose(four.dominant_root, 4)
    # x^3 - x - 1 has the plastic number as dominant root
    assert nm.pisot_check((0, 1, 1)).is_pisot_like
    # x^2 - 2x - 2: roots 1 +- sqrt(3), the small one has modulus 0.73
    assert nm.pisot_check((2, 2)).is_pisot_like
    # x^2 - x - 3: roots (1 +- sqrt(13))/2, second modulus 1.30
    assert not nm.pisot_check((1, 3)).is_pisot_like
    with pytest.raises(InvalidSystem):
        nm.pisot_check((1, 0))


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4).filter(lambda c: c[-1] != 0))
def test_roots_are_roots(coeffs):
    for z in nm.characteristic_roots(coeffs):
        residual = z ** len(coeffs) - sum(c * z ** (len(coeffs) - 1 - i)
                                          for i, c in enumerate(coeffs))
        assert abs(residual) < 1e-6 * max(1, abs(z)) ** len(coeffs)


def test_system_config_forms():
    assert nm.system_from_config("base:3") == B3
    assert nm.system_from_config("fibonacci") == FIB
    assert nm.system_from_config("bijective:2") == nm.BijectiveBase(2)
    assert nm.system_from_config("linear:1,1:1,2") == FIB
    assert nm.system_from_config('{"type": "base", "k": 5}') == nm.PositionalBase(5)
    for system in (B3, FIB, nm.BijectiveBase(3)):
        assert nm.system_from_config(system.to_config()) == system
    with pytest.raises(ValueError):
        nm.system_from_config("decimal")


def test_supplied_canonical_from_file(tmp_path):
    (tmp_path / "fib.json").write_text(fa.dumps(nm.canonical_dfa(FIB)))
    config = {"type": "linear", "coeffs": [1, 1], "initial": [1, 2], "canonical_dfa": "fib.json"}
    system = nm.system_from_config(config, base_dir=tmp_path)
    assert system.canonical is not None and system == FIB


def test_word_formatting():
    assert nm.format_word((1, 0, 1)) == "101"
    assert nm.format_word((1, 11)) == "1.11"
    assert nm.parse_word("1.11") == (1, 11)
    assert nm.parse_word("0101") == (0, 1, 0, 1)
    assert nm.format_word(()) == ""


@given(st.integers(0, 10 ** 30), st.integers(2, 16))
def test_round_trip_large_values(n, k):
    system = nm.PositionalBase(k)
    assert nm.value(system, nm.greedy_repr(system, n)) == n
    assert digits_value(nm.greedy_repr(system, n), k) == n
    assert nm.numeric_value(k, nm.bijective_repr(k, n)) == n


@given(st.integers(0, 10 ** 25))
def test_fibonacci_round_trip_large(n):
    w = nm.greedy_repr(FIB, n)
    assert nm.value(FIB, w) == n
    assert nm.canonical_dfa(FIB).accepts(w)
