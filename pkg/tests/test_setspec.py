import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from batteries import random_up_specs, three_zeros_dfa
from oracles import pumping_oracle, radical_oracle, words
from starfree import automata as fa
from starfree import numeration as nm
from starfree import setspec as ss
from starfree.errors import AlphabetMismatch, KindMismatch
from starfree.logic import library as lib

B2, B3, B4 = nm.PositionalBase(2), nm.PositionalBase(3), nm.PositionalBase(4)
ALL, EMPTY = ss.ALL, ss.EMPTY


def text(w):
    return "".join(map(str, w))


# --------------------------------------------------------------------------
# ultimately periodic sets

def test_progression_and_finite_sets():
    up = ss.progression(7, 4)
    assert [n for n in range(20) if n in up] == [7, 11, 15, 19]
    assert str(ss.progression(0, 6)) == "6N" and str(ss.progression(1, 4)) == "4N+1"
    assert [n for n in range(20) if n in ss.finite_set({1, 5})] == [1, 5]
    assert ss.finite_set({5}).is_finite() and not ss.finite_set({5}).is_cofinite()
    with pytest.raises(ValueError):
        ss.UltimatelyPeriodic(3, {3})
    with pytest.raises(ValueError):
        ss.UltimatelyPeriodic(3, {0}, 2, include={4})


def test_normalized_finds_least_period():
    up = ss.UltimatelyPeriodic(12, {0, 4, 8}, 5, include={1}, exclude={0})
    norm = up.normalized()
    assert (norm.period, norm.residues) == (4, {0})
    assert all((n in up) == (n in norm) for n in range(200))
    assert ss.UltimatelyPeriodic(3, {0, 1, 2}).is_cofinite()


@given(st.integers(1, 12), st.data())
def test_normalized_preserves_membership(period, data):
    residues = data.draw(st.sets(st.integers(0, period - 1)))
    threshold = data.draw(st.integers(0, 15))
    flips = data.draw(st.sets(st.integers(0, max(threshold - 1, 0)))) if threshold else set()
    include = {n for n in flips if n % period not in residues}
    exclude = {n for n in flips if n % period in residues}
    up = ss.UltimatelyPeriodic(period, residues, threshold, include, exclude)
    norm = up.normalized()
    assert all((n in up) == (n in norm) for n in range(3 * period + threshold + 5))
    assert norm.period <= period and period % norm.period == 0


def test_up_to_dfa_even_numbers():
    dfa = ss.up_to_dfa(ss.progression(0, 2), B2)
    for w in words((0, 1), 8):
        assert dfa.accepts(w) == (not w or w[-1] == 0)
    assert fa.is_aperiodic(dfa).aperiodic
    for p in range(1, 6):
        assert fa.is_aperiodic(ss.up_to_dfa(ss.progression(0, 2), nm.PositionalBase(2 * p))
                               ).aperiodic


def test_up_to_dfa_rejects_bijective():
    with pytest.raises(KindMismatch):
        ss.up_to_dfa(ss.progression(0, 2), nm.BijectiveBase(2))


@pytest.mark.parametrize("k", [2, 3, 5, 10])
def test_up_to_dfa_matches_predicate(k):
    system = nm.PositionalBase(k)
    for spec in random_up_specs(25 if k == 2 else 12, seed=k):
        dfa = ss.up_to_dfa(spec, system)
        for n in range(10_001):
            assert dfa.accepts(nm.greedy_repr(system, n)) == (n in spec)


def test_up_to_dfa_in_fibonacci():
    fib = nm.fibonacci()
    for spec in random_up_specs(5, seed=7, max_period=6):
        dfa = ss.up_to_dfa(spec, fib)
        for n in range(3000):
            assert dfa.accepts(nm.greedy_repr(fib, n)) == (n in spec)
            assert dfa.accepts((0,) + nm.greedy_repr(fib, n)) == (n in spec)


# --------------------------------------------------------------------------
# the arithmetic-progression statements

def test_radical_examples():
    assert ss.radical(12) == (6, 2)
    assert ss.radical(13) == (13, 1)
    assert ss.radical(4) == (2, 2)
    for s in range(2, 300):
        assert ss.radical(s) == radical_oracle(s)


@pytest.mark.parametrize("r,s,i", [(1, 4, 1), (2, 5, 2), (3, 4, 3)])
def test_final_digit_language(r, s, i):
    q = i * s
    report = ss.star_free_in_base(ss.progression(r, s), nm.PositionalBase(q))
    assert report.definite
    finals = {r + j * s for j in range(i)}
    for w in words(range(q), 3, 1):
        value = nm.numeric_value(q, w)
        expected = w[-1] in finals and value >= r
        assert report.recognizer.accepts(w) == expected


@pytest.mark.parametrize("r,s", [(1, 4), (2, 5), (3, 4), (0, 12), (5, 18)])
@pytest.mark.parametrize("i", [1, 2])
def test_multiples_of_period_and_radical_are_definite(r, s, i):
    P, _ = ss.radical(s)
    for q in (i * s, i * P):
        assert ss.star_free_in_base(ss.progression(r, s), nm.PositionalBase(q)).definite


def test_radical_bases_on_random_specs():
    for spec in random_up_specs(25, seed=11):
        s = spec.normalized().period
        if s < 2:
            continue
        P, _ = ss.radical(s)
        for i in (1, 2):
            base = nm.PositionalBase(i * P)
            assert ss.star_free_in_base(spec, base).aperiodic
            periodic_part = ss.UltimatelyPeriodic(s, spec.normalized().residues)
            assert ss.star_free_in_base(periodic_part, base).definite


def test_exceptions_can_break_definiteness():
    # 3N+4 is 3N+1 without 1: in base 3 that is Sigma*1 minus 0*1
    report = ss.star_free_in_base(ss.progression(4, 3), B3)
    assert report.aperiodic and not report.definite
    assert ss.star_free_in_base(ss.progression(1, 3), B3).definite
    assert ss.classify(ss.progression(4, 3)).notes == ()


@pytest.mark.parametrize("s", [4, 6, 9, 12])
@pytest.mark.parametrize("q", [2, 3, 5])
def test_aperiodic_iff_no_missing_prime(s, q):
    for r in range(s):
        report = ss.star_free_in_base(ss.progression(r, s), nm.PositionalBase(q))
        assert report.aperiodic == (not ss.missing_prime(s, q))
        if not report.aperiodic:
            assert report.aperiodicity.witness.holds_in(report.recognizer)


def test_six_n_verdicts():
    six = ss.progression(0, 6)
    assert not ss.star_free_in_base(six, B2).aperiodic
    assert not ss.star_free_in_base(six, B3).aperiodic
    for q in (6, 12):
        report = ss.star_free_in_base(six, nm.PositionalBase(q))
        assert report.aperiodic and report.definite


# --------------------------------------------------------------------------
# expressions

def test_expression_examples():
    dfa = ss.expr_to_dfa(ss.ones_then_zeros_expr(), (0, 1))
    for w in words((0, 1), 8):
        assert dfa.accepts(w) == (text(w).startswith("1") and "01" not in text(w))
    assert fa.equivalent(ss.expr_to_dfa(ss.Words(((),)), (0, 1)), fa.from_words((0, 1), [()]))
    assert fa.equivalent(ss.expr_to_dfa(ss.no_factor_11_expr(), (0, 1)),
                         nm.canonical_dfa(nm.fibonacci()))


def test_three_times_powers_of_four_expression():
    expr = ss.Concat((ss.Words(((3,),)),
                      ss.Comp(ss.Concat((ALL, ss.Words(((1,), (2,), (3,))), ALL)))))
    dfa = ss.expr_to_dfa(expr, range(4))
    assert fa.equivalent(dfa, fa.strip_leading_zeros(three_zeros_dfa()))


def test_displayed_binary_expression_is_not_eleven_double_zeros():
    expr = ss.Concat((ss.Words(((1, 1),)),
                      ss.Comp(ss.Concat((ALL, ss.Words(((0, 1), (1, 0), (1, 1))), ALL)))))
    dfa = ss.expr_to_dfa(expr, (0, 1))
    for w in words((0, 1), 9):
        t = text(w)
        assert dfa.accepts(w) == (t == "111" or (t.startswith("11") and set(t[2:]) <= {"0"}))


def test_zero_prefix_identities():
    zeros = ss.Comp(ss.Concat((ALL, ss.Words(((1,), (2,))), ALL)))
    lang = ss.Concat((ss.Words(((2,),)), ALL))
    padded = ss.expr_to_dfa(ss.Concat((zeros, lang)), range(3))
    assert fa.equivalent(padded, fa.leading_zero_closure(ss.expr_to_dfa(lang, range(3))))
    stripped = ss.Inter((ss.Concat((zeros, lang)), ss.Comp(ss.Concat((ss.Words(((0,),)), ALL)))))
    assert fa.equivalent(ss.expr_to_dfa(stripped, range(3)), ss.expr_to_dfa(lang, range(3)))


def expressions(alphabet):
    leaf = st.builds(lambda ws: ss.Words(tuple(sorted(ws))),
                     st.sets(st.lists(st.sampled_from(alphabet), max_size=3).map(tuple),
                             max_size=3))
    return st.recursive(leaf, lambda sub: st.one_of(
        st.builds(ss.Comp, sub),
        st.builds(lambda a, b: ss.Union((a, b)), sub, sub),
        st.builds(lambda a, b: ss.Inter((a, b)), sub, sub),
        st.builds(lambda a, b: ss.Concat((a, b)), sub, sub)), max_leaves=6)


@given(expressions((0, 1)))
def test_expressions_are_aperiodic(expr):
    dfa = ss.expr_to_dfa(expr, (0, 1))
    assert fa.is_aperiodic(dfa).aperiodic
    assert pumping_oracle(dfa)


@given(expressions((0, 1, 2)))
def test_expression_json_round_trip(expr):
    data = json.loads(json.dumps(ss.expr_to_json(expr)))
    assert ss.expr_from_json(data) == expr


def test_expression_json_string_words():
    expr = ss.expr_from_json({"concat": [{"words": ["1"]}, {"comp": {"words": []}}]})
    assert fa.equivalent(ss.expr_to_dfa(expr, (0, 1)), fa.starting_with((0, 1), 1))


# --------------------------------------------------------------------------
# specs and recognizers

def test_dfa_spec_example():
    spec = ss.DfaSpec(B4, three_zeros_dfa())
    assert ss.members(spec, 1000) == [3, 12, 48, 192, 768]
    report = ss.star_free_in_base(spec, B4)
    assert report.aperiodic


def test_dfa_spec_ignores_leading_zero_convention():
    bare = fa.strip_leading_zeros(three_zeros_dfa())
    rec = ss.recognizer(ss.DfaSpec(B4, bare), B4)
    assert fa.equivalent(rec, fa.leading_zero_closure(bare))


def test_set_language_checks_alphabet():
    with pytest.raises(AlphabetMismatch):
        ss.set_language(three_zeros_dfa(), B2)


def test_formula_spec_powers_of_two():
    spec = ss.FormulaSpec(lib.SINGLE_ONE_NUM)
    assert ss.members(spec, 5000) == [2 ** i for i in range(13)]
    assert ss.star_free_in_base(spec, B2).aperiodic
    four = ss.recognizer(spec, B4)
    assert {n for n in range(5000) if four.accepts(nm.greedy_repr(B4, n))} == \
        {2 ** i for i in range(13)}


def test_expr_spec_needs_a_system_for_odd_alphabets():
    with pytest.raises(AlphabetMismatch):
        ss.ExprSpec((1, 2), ss.ALL).numeration()


# --------------------------------------------------------------------------
# classification

def test_classify_finite():
    category = ss.classify(ss.finite_set({5}))
    assert category.tag == 1


def test_classify_six_n():
    category = ss.classify(ss.progression(0, 6))
    assert (category.tag, category.radical, category.alpha) == (2, 6, 1)
    by_base = {p.base: p for p in category.evidence}
    assert not by_base[2].aperiodic and not by_base[3].aperiodic
    assert by_base[6].definite and by_base[12].definite
    assert by_base[2].missing_prime and not by_base[6].missing_prime
    assert category.notes == ()


def test_classify_powers_of_two():
    category = ss.classify(ss.FormulaSpec(lib.SINGLE_ONE_NUM), probes=(2, 3, 4, 8))
    assert category.tag == 3 and not category.exhaustive
    by_base = {p.base: p for p in category.evidence}
    assert by_base[2].available and by_base[2].aperiodic
    assert not by_base[3].available
    assert any("not ultimately periodic" in note for note in category.notes)


def test_classify_non_star_free_evidence():
    spec = ss.DfaSpec(B2, fa.strip_leading_zeros(
        fa.explore((0, 1), 0, lambda q, a: (q + 1) % 2, lambda q: q == 0)))
    assert ss.classify(spec, probes=(2,), horizon=2000).tag == 4
    # even binary length means a leading base-4 digit of 2 or 3
    category = ss.classify(spec, probes=(2, 4), horizon=2000)
    assert category.tag == 3
    assert [p.aperiodic for p in category.evidence] == [False, True]


def test_periodicity_evidence():
    assert ss.periodicity_evidence([n for n in range(1000) if n % 6 == 1 or n == 4], 999) == (5, 6)
    assert ss.periodicity_evidence([2 ** i for i in range(12)], 999) is None


# --------------------------------------------------------------------------
# configs

def test_short_forms():
    assert ss.spec_from_config("up:6N") == ss.progression(0, 6)
    assert ss.spec_from_config("up:4N+1") == ss.progression(1, 4)
    assert ss.spec_from_config("finite:1,5") == ss.finite_set({1, 5})
    with pytest.raises(ValueError):
        ss.spec_from_config("squares")


@pytest.mark.parametrize("spec", [
    ss.UltimatelyPeriodic(6, {1, 2}, 4, include={3}, exclude={1}),
    ss.DfaSpec(B4, three_zeros_dfa()),
    ss.ExprSpec((0, 1), ss.ones_then_zeros_expr()),
    ss.FormulaSpec(lib.SINGLE_ONE_NUM, nm.fibonacci()),
], ids=["up", "dfa", "expr", "formula"])
def test_config_round_trip(spec):
    config = json.loads(json.dumps(ss.spec_to_config(spec)))
    back = ss.spec_from_config(config)
    if isinstance(spec, ss.DfaSpec):
        assert back.system == spec.system and fa.equivalent(back.dfa, spec.dfa)
    else:
        assert back == spec


def test_dfa_spec_from_path(tmp_path):
    (tmp_path / "x.json").write_text(fa.dumps(three_zeros_dfa()))
    (tmp_path / "spec.json").write_text(json.dumps(
        {"type": "dfa", "system": {"type": "base", "k": 4}, "path": "x.json"}))
    spec = ss.spec_from_config(str(tmp_path / "spec.json"))
    assert fa.equivalent(spec.dfa, three_zeros_dfa())
