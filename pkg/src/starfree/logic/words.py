"""First-order logic on words: word models, satisfaction, and compilation of
sentences to automata.

Positions are numbered 1..max from the right, so position i carries the
digit of weight U_{i-1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .. import automata as fa
from ..errors import CertificationFailure, EmptyWord, NotASentence, UnboundVariable
from .syntax import (COMPARISONS, And, BoundedExists, BoundedForall, Eps, Equal, Exists,
                     Forall, Iff, Implies, Less, LessEq, Letter, Max, Not, Or, Top,
                     check_word_formula, free_vars)


@dataclass(frozen=True)
class WordModel:
    max: int
    predicates: dict  # letter -> frozenset of positions, letters >= 1 only
    letters: tuple    # letters[i - 1] is the letter at position i

    def letter_at(self, position: int) -> int:
        return self.letters[position - 1]


def word_model(word) -> WordModel:
    word = tuple(word)
    if not word:
        raise EmptyWord("word models have at least one position")
    by_position = tuple(reversed(word))
    predicates = {}
    for i, a in enumerate(by_position, start=1):
        if a != 0:
            predicates.setdefault(a, set()).add(i)
    return WordModel(len(word), {a: frozenset(s) for a, s in predicates.items()}, by_position)


def _term_value(term, model, valuation):
    if isinstance(term, Max):
        return model.max
    try:
        return valuation[term.name]
    except KeyError:
        raise UnboundVariable(f"variable {term.name} has no value") from None


def eval_sf(f, model: WordModel, valuation=None) -> bool:
    """Satisfaction of a word formula in ``model``."""
    valuation = dict(valuation or {})
    return _eval(f, model, valuation)


def _eval(f, model, val):
    if isinstance(f, Less):
        return _term_value(f.left, model, val) < _term_value(f.right, model, val)
    if isinstance(f, Equal):
        return _term_value(f.left, model, val) == _term_value(f.right, model, val)
    if isinstance(f, LessEq):
        return _term_value(f.left, model, val) <= _term_value(f.right, model, val)
    if isinstance(f, Letter):
        return model.letter_at(_term_value(f.term, model, val)) == f.letter
    if isinstance(f, Not):
        return not _eval(f.body, model, val)
    if isinstance(f, And):
        return _eval(f.left, model, val) and _eval(f.right, model, val)
    if isinstance(f, Or):
        return _eval(f.left, model, val) or _eval(f.right, model, val)
    if isinstance(f, Implies):
        return (not _eval(f.left, model, val)) or _eval(f.right, model, val)
    if isinstance(f, Iff):
        return _eval(f.left, model, val) == _eval(f.right, model, val)
    if isinstance(f, (Exists, Forall)):
        saved = val.get(f.var)
        quantifier = any if isinstance(f, Exists) else all
        try:
            return quantifier(_eval_at(f, model, val, i) for i in range(1, model.max + 1))
        finally:
            if saved is None:
                val.pop(f.var, None)
            else:
                val[f.var] = saved
    if isinstance(f, (Eps, BoundedExists, BoundedForall, Top)):
        raise TypeError(f"{type(f).__name__} is not part of the word logic")
    raise TypeError(f"not a formula: {f!r}")


def _eval_at(f, model, val, i):
    val[f.var] = i
    return _eval(f.body, model, val)


def defines(f, word) -> bool:
    """Whether the non-empty ``word`` satisfies the sentence ``f``."""
    return eval_sf(f, word_model(word))


# --------------------------------------------------------------------------
# compilation
#
# A formula with free variables V (sorted) compiles to a Dfa over symbols
# (letter, bits), bits[i] marking the position of V[i].  Words are read from
# position 1 upward (least significant digit first).  Every compiled Dfa
# accepts only encodings in which each variable track holds exactly one 1.

class _Compiler:
    def __init__(self, alphabet):
        self.alphabet = fa.check_alphabet(alphabet)
        self.cache = {}
        self.valid_cache = {}

    def symbols(self, names):
        return tuple((a, bits) for a in self.alphabet
                     for bits in itertools.product((0, 1), repeat=len(names)))

    def valid(self, names):
        if names not in self.valid_cache:
            k = len(names)

            def step(seen, sym):
                if seen is None:
                    return None
                bits = sym[1]
                if any(b and s for b, s in zip(bits, seen)):
                    return None
                return tuple(s or b for s, b in zip(seen, bits))

            self.valid_cache[names] = fa.minimize(
                fa.explore(self.symbols(names), (0,) * k, step,
                           lambda s: s is not None and all(s)))[0]
        return self.valid_cache[names]

    def lift(self, dfa, names, target):
        if names == target:
            return dfa
        where = [target.index(v) for v in names]
        return fa.inverse_image(dfa, lambda s: (s[0], tuple(s[1][i] for i in where)),
                                self.symbols(target))

    def compile(self, f):
        """Return (dfa, names) with names the sorted free variables of f."""
        key = f
        if key not in self.cache:
            self.cache[key] = self._compile(f)
        return self.cache[key]

    def _compile(self, f):
        if isinstance(f, COMPARISONS) or isinstance(f, Letter):
            return self.atom(f)
        if isinstance(f, Not):
            dfa, names = self.compile(f.body)
            return fa.intersection(fa.complement(dfa), self.valid(names)), names
        if isinstance(f, (And, Or, Implies, Iff)):
            left, lnames = self.compile(f.left)
            right, rnames = self.compile(f.right)
            names = tuple(sorted(set(lnames) | set(rnames)))
            left = self.lift(left, lnames, names)
            right = self.lift(right, rnames, names)
            if isinstance(f, And):
                dfa = fa.intersection(left, right)
            elif isinstance(f, Or):
                dfa = fa.union(left, right)
            elif isinstance(f, Implies):
                dfa = fa.union(fa.complement(left), right)
            else:
                dfa = fa.complement(fa.boolean(left, right, "symmetric_difference"))
            return fa.intersection(dfa, self.valid(names)), names
        if isinstance(f, Exists):
            dfa, names = self.compile(f.body)
            if f.var not in names:
                # an empty word has no position to witness the quantifier
                nonempty = self.lift(fa.nonempty_words(self.symbols(())), (), names)
                return fa.intersection(dfa, nonempty), names
            drop = names.index(f.var)
            rest = names[:drop] + names[drop + 1:]
            projected = fa.image(dfa, lambda s: (s[0], s[1][:drop] + s[1][drop + 1:]),
                                 self.symbols(rest))
            return projected, rest
        if isinstance(f, Forall):
            return self.compile(Not(Exists(f.var, Not(f.body))))
        raise TypeError(f"{type(f).__name__} is not part of the word logic")

    def atom(self, f):
        names = tuple(sorted(free_vars(f)))
        syms = self.symbols(names)

        def bit(sym, term):
            return sym[1][names.index(term.name)]

        if isinstance(f, Letter):
            if f.letter not in self.alphabet:
                raise ValueError(f"letter {f.letter} is not in {list(self.alphabet)}")
            if isinstance(f.term, Max):
                # state: does the last letter read carry f.letter?
                dfa = fa.explore(syms, False, lambda s, sym: sym[0] == f.letter, bool)
            else:
                def step(s, sym):
                    if s != "wait":
                        return s
                    if bit(sym, f.term):
                        return "yes" if sym[0] == f.letter else "no"
                    return "wait"
                dfa = fa.explore(syms, "wait", step, lambda s: s == "yes")
        else:
            dfa = self.comparison(f, syms, bit)
        return fa.intersection(fa.minimize(dfa)[0], self.valid(names)), names

    def comparison(self, f, syms, bit):
        left, right = f.left, f.right
        if isinstance(f, LessEq):
            strict = self.comparison(Less(left, right), syms, bit)
            equal = self.comparison(Equal(left, right), syms, bit)
            return fa.union(strict, equal)
        lmax, rmax = isinstance(left, Max), isinstance(right, Max)
        if lmax and rmax or (not lmax and not rmax and left == right):
            # max = max and x = x hold on every model; the strict forms never do
            return fa.universal(syms) if isinstance(f, Equal) else fa.empty(syms)
        if isinstance(f, Less) and lmax:
            return fa.empty(syms)
        if rmax:
            # "x < max": x is seen and some letter follows; "x = max": x is last
            def step(s, sym):
                if s == 0:
                    return 1 if bit(sym, left) else 0
                return 2
            accept = {Less: 2, Equal: 1}[type(f)]
            return fa.explore(syms, 0, step, lambda s: s == accept)
        if lmax:
            return self.comparison(Equal(right, left), syms, bit)
        if isinstance(f, Less):
            def step(s, sym):
                bx, by = bit(sym, left), bit(sym, right)
                if s == 0:
                    return "dead" if by else (1 if bx else 0)
                if s == 1:
                    return 2 if by else 1
                return s
            return fa.explore(syms, 0, step, lambda s: s == 2)

        def step(s, sym):
            bx, by = bit(sym, left), bit(sym, right)
            if s == 0:
                return 1 if bx and by else ("dead" if bx or by else 0)
            return s
        return fa.explore(syms, 0, step, lambda s: s == 1)


def compile_sf(f, alphabet, certify: bool = True) -> fa.Dfa:
    """Minimal Dfa of ``{w in alphabet+ : w satisfies f}``, most significant
    letter first.  With ``certify`` the result is checked to be aperiodic."""
    check_word_formula(f)
    if free_vars(f):
        raise NotASentence(f"free variables: {sorted(free_vars(f))}")
    compiler = _Compiler(alphabet)
    dfa, _ = compiler.compile(f)
    plain = fa.inverse_image(dfa, lambda a: (a, ()), compiler.alphabet)
    result = fa.intersection(fa.reverse(plain), fa.nonempty_words(compiler.alphabet))
    if certify:
        report = fa.is_aperiodic(result)
        if not report.aperiodic:
            raise CertificationFailure(f"compiled sentence is not aperiodic: {report.witness}")
    return result
