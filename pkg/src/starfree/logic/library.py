"""Named formulas used by the tests, the scripts and the CLI."""

from .numbers import NO_ADJACENT_ONES, NO_ADJACENT_ONES_UNGUARDED, TAUTOLOGY
from .syntax import parse

# words 1+0*: a lowest 1 with only 1s above it and no 1 below it
ONES_THEN_ZEROS = parse(
    "(E x (and (P 1 x) (and (A y (imp (< x y) (P 1 y)))"
    " (A y (imp (< y x) (not (P 1 y)))))))")

# numbers whose binary representation lies in 1+0*
ONES_THEN_ZEROS_NUM = parse(
    "(top b (Eb x (and (eps 1 n x) (and (Ab y (imp (< x y) (eps 1 n y)))"
    " (Ab y (imp (< y x) (not (eps 1 n y))))))))")

# numbers with exactly one non-zero binary digit equal to 1: powers of 2
SINGLE_ONE_NUM = parse(
    "(top b (Eb x (and (eps 1 n x) (Ab y (imp (eps 1 n y) (= x y))))))")

# words with exactly one 1
SINGLE_ONE = parse("(E x (and (P 1 x) (A y (imp (P 1 y) (= x y)))))")

# last letter (most significant digit) is 1
LEADING_ONE = parse("(P 1 max)")

# no two adjacent positions both carry 1, written with the successor macro
NO_ADJACENT_ONES_SUCC = parse(
    "(A x (A y (imp (succ x y) (not (and (P 1 x) (P 1 y))))))")

WORD_CORPUS = {
    "ones_then_zeros": ONES_THEN_ZEROS,
    "single_one": SINGLE_ONE,
    "no_adjacent_ones": NO_ADJACENT_ONES,
    "no_adjacent_ones_unguarded": NO_ADJACENT_ONES_UNGUARDED,
    "no_adjacent_ones_succ": NO_ADJACENT_ONES_SUCC,
    "leading_one": LEADING_ONE,
    "tautology": TAUTOLOGY,
    "ends_with_zero": parse("(E x (and (P 0 x) (A y (<= x y))))"),
    "some_one_below_a_zero": parse("(E x (E y (and (< x y) (and (P 1 x) (P 0 y)))))"),
    "empty": parse("(E x (< x x))"),
}

NUMBER_CORPUS = {
    "ones_then_zeros": ONES_THEN_ZEROS_NUM,
    "single_one": SINGLE_ONE_NUM,
    "unsatisfiable": parse("(top b (Eb x (< x x)))"),
    "has_one_above_a_one": parse(
        "(top b (Eb x (Eb y (and (< x y) (and (eps 1 n x) (eps 1 n y))))))"),
}
