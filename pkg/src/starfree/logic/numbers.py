"""Bounded number logic over a numeration system and its translations to
and from the word logic.

A number formula has the shape ``(top b body)``.  Inside ``body`` every
variable is introduced by a bounded quantifier and denotes a basis element
U_i below b; ``(eps j n x)`` holds when the greedy representation of n has
digit j at the weight x.  Variables are evaluated as basis indices, so the
order between two of them is the order of their indices.
"""

from __future__ import annotations

from functools import lru_cache

from .. import automata as fa
from .. import numeration as nm
from ..errors import (CanonicalFormUnknown, CanonicalNotAperiodic, KindMismatch, NotASentence,
                      ShapeViolation, TranslationMismatch)
from .syntax import (And, BoundedExists, BoundedForall, Eps, Equal, Exists, Forall, Iff,
                     Implies, Less, LessEq, Letter, Max, Not, Or, Top, Var, all_vars,
                     check_number_formula, check_word_formula, fresh_name, free_vars,
                     rename_bound, uses_max, parse)
from .words import compile_sf

TAUTOLOGY = parse("(A x (= x x))")

# No two 1s at adjacent positions.
NO_ADJACENT_ONES = parse(
    "(A x (A y (or (not (< x y)) (or (E z (and (< x z) (< z y)))"
    " (not (and (P 1 x) (P 1 y)))))))")

# The same property written without the x < y guard; taking x = y at a
# position holding 1 makes it false on every word that contains a 1.
NO_ADJACENT_ONES_UNGUARDED = parse(
    "(A x (A y (or (E z (and (< x z) (< z y))) (not (and (P 1 x) (P 1 y))))))")


# --------------------------------------------------------------------------
# word logic <-> number logic

def num_to_sf(psi, number: str = "n"):
    """Drop the top wrapper and read eps atoms as letter predicates."""
    check_number_formula(psi, number)

    def walk(g):
        if isinstance(g, Eps):
            return Letter(g.digit, Var(g.var))
        if isinstance(g, BoundedExists):
            return Exists(g.var, walk(g.body))
        if isinstance(g, BoundedForall):
            return Forall(g.var, walk(g.body))
        if isinstance(g, Not):
            return Not(walk(g.body))
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(walk(g.left), walk(g.right))
        return g

    return walk(psi.body)


def eliminate_max(phi):
    """Replace the constant max by a variable pinned to the last position."""
    if not uses_max(phi):
        return phi
    m = fresh_name("m", all_vars(phi))
    z = fresh_name("z", all_vars(phi) | {m})

    def term(t):
        return Var(m) if isinstance(t, Max) else t

    def walk(g):
        if isinstance(g, (Less, Equal, LessEq)):
            return type(g)(term(g.left), term(g.right))
        if isinstance(g, Letter):
            return Letter(g.letter, term(g.term))
        if isinstance(g, Not):
            return Not(walk(g.body))
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(walk(g.left), walk(g.right))
        if isinstance(g, (Exists, Forall)):
            return type(g)(g.var, walk(g.body))
        return g

    last = Not(Exists(z, Less(Var(m), Var(z))))
    return Exists(m, And(last, walk(phi)))


def sf_to_num(phi, system: nm.NumerationSystem | None = None,
              number: str = "n", bound: str = "b"):
    """Translate a word sentence into ``(top b ...)``.

    Letter 0 has no eps atom; it becomes "no non-zero digit here", which
    needs the digit alphabet of ``system`` (binary by default).
    """
    check_word_formula(phi)
    if free_vars(phi):
        raise NotASentence(f"free variables: {sorted(free_vars(phi))}")
    system = system or nm.PositionalBase(2)
    nonzero = [d for d in system.digits if d != 0]
    phi = rename_bound(eliminate_max(phi), {number, bound})

    def walk(g):
        if isinstance(g, Letter):
            x = g.term.name
            if g.letter != 0:
                return Eps(g.letter, number, x)
            atoms = [Eps(d, number, x) for d in nonzero]
            disjunction = atoms[-1]
            for atom in reversed(atoms[:-1]):
                disjunction = Or(atom, disjunction)
            return Not(disjunction)
        if isinstance(g, Exists):
            return BoundedExists(g.var, walk(g.body))
        if isinstance(g, Forall):
            return BoundedForall(g.var, walk(g.body))
        if isinstance(g, Not):
            return Not(walk(g.body))
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(walk(g.left), walk(g.right))
        return g

    return check_number_formula(Top(bound, walk(phi)), number)


# --------------------------------------------------------------------------
# evaluation

@lru_cache(maxsize=256)
def _compiled(psi, system, number):
    return compile_sf(num_to_sf(psi, number), system.digits)


def default_slack(psi, system: nm.NumerationSystem, number: str = "n") -> int:
    return _compiled(psi, system, number).num_states + 1


def _require_greedy(system):
    if not system.greedy:
        raise KindMismatch(f"{system} has no greedy representations")


def eval_num(psi, n: int, system: nm.NumerationSystem, slack: int | None = None,
             number: str = "n") -> bool:
    """Truth of ``psi`` at ``n``.

    b is tried at U_m for m from |rho_U(n)| (at least 1) to that plus
    ``slack``; smaller b cut digits of n off, larger ones only add padding.
    """
    _require_greedy(system)
    check_number_formula(psi, number)
    if slack is None:
        slack = default_slack(psi, system, number)
    word = nm.greedy_repr(system, n)
    low = max(1, len(word))
    # digit_at[i] is the digit of weight U_i
    digit_at = tuple(reversed(word))

    def digit(i):
        return digit_at[i] if i < len(digit_at) else 0

    def holds(g, val, top):
        if isinstance(g, Eps):
            return digit(val[g.var]) == g.digit
        if isinstance(g, Less):
            return val[g.left.name] < val[g.right.name]
        if isinstance(g, Equal):
            return val[g.left.name] == val[g.right.name]
        if isinstance(g, LessEq):
            return val[g.left.name] <= val[g.right.name]
        if isinstance(g, Not):
            return not holds(g.body, val, top)
        if isinstance(g, And):
            return holds(g.left, val, top) and holds(g.right, val, top)
        if isinstance(g, Or):
            return holds(g.left, val, top) or holds(g.right, val, top)
        if isinstance(g, Implies):
            return not holds(g.left, val, top) or holds(g.right, val, top)
        if isinstance(g, Iff):
            return holds(g.left, val, top) == holds(g.right, val, top)
        if isinstance(g, BoundedExists):
            return any(holds(g.body, {**val, g.var: i}, top) for i in range(top))
        if isinstance(g, BoundedForall):
            return all(holds(g.body, {**val, g.var: i}, top) for i in range(top))
        raise ShapeViolation(f"unexpected node {type(g).__name__}")

    return any(holds(psi.body, {}, m) for m in range(low, low + slack + 1))


def padded_membership(dfa: fa.Dfa, word, slack: int) -> bool:
    """Whether some zero-padding of ``word`` to a length between max(1, |word|)
    and that plus ``slack`` is accepted."""
    word = tuple(word)
    low = len(word) or 1
    return any(dfa.accepts((0,) * (m - len(word)) + word) for m in range(low, low + slack + 1))


def define_set(psi, system: nm.NumerationSystem, horizon: int, cross_check: bool = True,
               slack: int | None = None, number: str = "n") -> list:
    """``{n <= horizon : eval_num(psi, n)}``, optionally checked against the
    compiled word language of the translated sentence."""
    _require_greedy(system)
    if slack is None:
        slack = default_slack(psi, system, number)
    result = [n for n in range(horizon + 1) if eval_num(psi, n, system, slack, number)]
    if cross_check:
        dfa = _compiled(psi, system, number)
        members = set(result)
        for n in range(horizon + 1):
            word = nm.greedy_repr(system, n)
            if padded_membership(dfa, word, slack) != (n in members):
                raise TranslationMismatch(
                    f"n={n}: evaluator says {n in members}, compiled automaton disagrees")
    return result


# --------------------------------------------------------------------------
# canonical sentences

def canonical_sentence(system: nm.NumerationSystem):
    """A word sentence defining the non-empty canonical words of ``system``."""
    _require_greedy(system)
    dfa = nm.canonical_dfa(system)
    report = fa.is_aperiodic(dfa)
    if not report.aperiodic:
        raise CanonicalNotAperiodic(f"canonical language of {system} is not aperiodic: "
                                    f"{report.witness}")
    if fa.equivalent(dfa, fa.universal(system.digits)):
        return TAUTOLOGY
    if system.digits == (0, 1) and fa.equivalent(dfa, nm.canonical_dfa(nm.fibonacci())):
        return NO_ADJACENT_ONES
    raise CanonicalFormUnknown(f"no sentence known for the canonical language of {system}")


def inject_canonical(psi, system: nm.NumerationSystem, number: str = "n"):
    """Conjoin the number form of the canonical sentence to the main part,
    after renaming so that the two share only ``number`` and the bound."""
    check_number_formula(psi, number)
    extra = sf_to_num(canonical_sentence(system), system, number, psi.bound)
    extra_body = rename_bound(extra.body, all_vars(psi.body))
    return check_number_formula(Top(psi.bound, And(psi.body, extra_body)), number)

