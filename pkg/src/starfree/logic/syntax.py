"""Formula trees for the word logic and the bounded number logic, with a
prefix-notation parser and printer.

Grammar (whitespace separated, fully parenthesized)::

    term    := VAR | max
    formula := (< t t) | (= t t) | (<= t t) | (P a t) | (eps j n x)
             | (not f) | (and f g ...) | (or f g ...) | (imp f g) | (iff f g)
             | (E x f) | (A x f) | (Eb x f) | (Ab x f) | (top b f)
             | (succ x y)            ; macro for y = x + 1

``and``/``or`` with more than two operands nest to the right.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from ..errors import FormulaSyntaxError, ShapeViolation


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Max:
    pass


MAX = Max()


@dataclass(frozen=True)
class Less:
    left: object
    right: object


@dataclass(frozen=True)
class Equal:
    left: object
    right: object


@dataclass(frozen=True)
class LessEq:
    left: object
    right: object


@dataclass(frozen=True)
class Letter:
    """P_a(term): the position carries letter ``a``."""
    letter: int
    term: object


@dataclass(frozen=True)
class Eps:
    """epsilon_{j,U}(n, x): basis element x occurs in the normalized
    representation of n with digit j."""
    digit: int
    number: str
    var: str


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Implies:
    left: object
    right: object


@dataclass(frozen=True)
class Iff:
    left: object
    right: object


@dataclass(frozen=True)
class Exists:
    var: str
    body: object


@dataclass(frozen=True)
class Forall:
    var: str
    body: object


@dataclass(frozen=True)
class BoundedExists:
    """(exists x)_U^{<b}: x ranges over basis elements below b."""
    var: str
    body: object


@dataclass(frozen=True)
class BoundedForall:
    var: str
    body: object


@dataclass(frozen=True)
class Top:
    """(exists b)(epsilon_{1,U}(b, b) and body)."""
    bound: str
    body: object


COMPARISONS = (Less, Equal, LessEq)
CONNECTIVES = (And, Or, Implies, Iff)
QUANTIFIERS = (Exists, Forall, BoundedExists, BoundedForall)

_HEADS = {
    "<": Less, "=": Equal, "<=": LessEq,
    "and": And, "or": Or, "imp": Implies, "iff": Iff,
    "E": Exists, "A": Forall, "Eb": BoundedExists, "Ab": BoundedForall,
}
_NAMES = {cls: head for head, cls in _HEADS.items()}
_ALIASES = {"exists": "E", "forall": "A", "->": "imp", "<->": "iff"}


# --------------------------------------------------------------------------
# printing

def term_str(term) -> str:
    return "max" if isinstance(term, Max) else term.name


def to_text(f) -> str:
    if isinstance(f, COMPARISONS):
        return f"({_NAMES[type(f)]} {term_str(f.left)} {term_str(f.right)})"
    if isinstance(f, Letter):
        return f"(P {f.letter} {term_str(f.term)})"
    if isinstance(f, Eps):
        return f"(eps {f.digit} {f.number} {f.var})"
    if isinstance(f, Not):
        return f"(not {to_text(f.body)})"
    if isinstance(f, CONNECTIVES):
        return f"({_NAMES[type(f)]} {to_text(f.left)} {to_text(f.right)})"
    if isinstance(f, QUANTIFIERS):
        return f"({_NAMES[type(f)]} {f.var} {to_text(f.body)})"
    if isinstance(f, Top):
        return f"(top {f.bound} {to_text(f.body)})"
    raise TypeError(f"not a formula: {f!r}")


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise FormulaSyntaxError("unexpected character", pos)
        start = m.start(m.lastindex)
        tokens.append((m.group(m.lastindex), start))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        if self.i >= len(self.tokens):
            raise FormulaSyntaxError("unexpected end of input", len(self.text))
        return self.tokens[self.i]

    def take(self, expected=None):
        tok, pos = self.peek()
        if expected is not None and tok != expected:
            raise FormulaSyntaxError(f"expected {expected!r}, found {tok!r}", pos)
        self.i += 1
        return tok, pos

    def done(self):
        if self.i != len(self.tokens):
            tok, pos = self.tokens[self.i]
            raise FormulaSyntaxError(f"trailing input {tok!r}", pos)

    def var(self):
        tok, pos = self.take()
        if not _IDENT.match(tok) or tok == "max":
            raise FormulaSyntaxError(f"expected a variable, found {tok!r}", pos)
        return tok

    def term(self):
        tok, pos = self.peek()
        if tok == "(":
            self.take("(")
            head, hpos = self.take()
            if head in ("+", "plus"):
                raise FormulaSyntaxError(
                    "addition of variables is not expressible in this logic", hpos)
            raise FormulaSyntaxError(f"terms are variables or max, found ({head} ...)", hpos)
        self.take()
        if tok == "max":
            return MAX
        if not _IDENT.match(tok):
            raise FormulaSyntaxError(f"expected a term, found {tok!r}", pos)
        return Var(tok)

    def integer(self):
        tok, pos = self.take()
        if not tok.isdigit():
            raise FormulaSyntaxError(f"expected a digit index, found {tok!r}", pos)
        return int(tok)

    def formula(self):
        self.take("(")
        head, pos = self.take()
        head = _ALIASES.get(head, head)
        if head in ("<", "=", "<="):
            f = _HEADS[head](self.term(), self.term())
        elif head == "P":
            f = Letter(self.integer(), self.term())
        elif head == "eps":
            digit = self.integer()
            f = Eps(digit, self.var(), self.var())
        elif head == "not":
            f = Not(self.formula())
        elif head in ("and", "or"):
            parts = [self.formula(), self.formula()]
            while self.peek()[0] != ")":
                parts.append(self.formula())
            f = parts[-1]
            for part in reversed(parts[:-1]):
                f = _HEADS[head](part, f)
        elif head in ("imp", "iff"):
            f = _HEADS[head](self.formula(), self.formula())
        elif head in ("E", "A", "Eb", "Ab"):
            f = _HEADS[head](self.var(), self.formula())
        elif head == "top":
            f = Top(self.var(), self.formula())
        elif head == "succ":
            x, y = self.var(), self.var()
            f = successor(x, y, avoid={x, y})
        else:
            raise FormulaSyntaxError(f"unknown operator {head!r}", pos)
        self.take(")")
        return f


def parse(text: str):
    """Parse any formula of either logic (no shape checks)."""
    parser = _Parser(text)
    f = parser.formula()
    parser.done()
    return f


def successor(x: str, y: str, avoid=()) -> object:
    """y = x + 1 written as x < y and every z above x is at least y."""
    z = fresh_name("z", set(avoid) | {x, y})
    return And(Less(Var(x), Var(y)),
               Forall(z, Implies(Less(Var(x), Var(z)), LessEq(Var(y), Var(z)))))


# --------------------------------------------------------------------------
# variables

def children(f):
    if isinstance(f, (Not, Top) + QUANTIFIERS):
        return (f.body,)
    if isinstance(f, CONNECTIVES):
        return (f.left, f.right)
    return ()


def subformulas(f):
    yield f
    for c in children(f):
        yield from subformulas(c)


def _term_vars(term):
    return set() if isinstance(term, Max) else {term.name}


def atom_vars(f) -> set:
    if isinstance(f, COMPARISONS):
        return _term_vars(f.left) | _term_vars(f.right)
    if isinstance(f, Letter):
        return _term_vars(f.term)
    if isinstance(f, Eps):
        return {f.number, f.var}
    return set()


def free_vars(f) -> frozenset:
    if isinstance(f, QUANTIFIERS):
        return free_vars(f.body) - {f.var}
    if isinstance(f, Top):
        return free_vars(f.body) - {f.bound}
    kids = children(f)
    if kids:
        return frozenset().union(*(free_vars(c) for c in kids))
    return frozenset(atom_vars(f))


def all_vars(f) -> set:
    names = set()
    for g in subformulas(f):
        names |= atom_vars(g)
        if isinstance(g, QUANTIFIERS):
            names.add(g.var)
        if isinstance(g, Top):
            names.add(g.bound)
    return names


def fresh_name(stem: str, avoid) -> str:
    if stem not in avoid:
        return stem
    for i in itertools.count(1):
        name = f"{stem}{i}"
        if name not in avoid:
            return name


def uses_max(f) -> bool:
    for g in subformulas(f):
        if isinstance(g, COMPARISONS) and (isinstance(g.left, Max) or isinstance(g.right, Max)):
            return True
        if isinstance(g, Letter) and isinstance(g.term, Max):
            return True
    return False


def rename_free(f, old: str, new: str):
    """Substitute variable ``new`` for free occurrences of ``old``."""
    def term(t):
        return Var(new) if isinstance(t, Var) and t.name == old else t

    if isinstance(f, COMPARISONS):
        return type(f)(term(f.left), term(f.right))
    if isinstance(f, Letter):
        return Letter(f.letter, term(f.term))
    if isinstance(f, Eps):
        return Eps(f.digit, new if f.number == old else f.number, new if f.var == old else f.var)
    if isinstance(f, Not):
        return Not(rename_free(f.body, old, new))
    if isinstance(f, CONNECTIVES):
        return type(f)(rename_free(f.left, old, new), rename_free(f.right, old, new))
    if isinstance(f, QUANTIFIERS):
        if f.var == old:
            return f
        return type(f)(f.var, rename_free(f.body, old, new))
    if isinstance(f, Top):
        if f.bound == old:
            return f
        return Top(f.bound, rename_free(f.body, old, new))
    raise TypeError(f"not a formula: {f!r}")


def rename_bound(f, avoid):
    """Rename quantified variables whose names lie in ``avoid``."""
    avoid = set(avoid)
    blocked = avoid | all_vars(f)
    chosen = {}

    def walk(g):
        if isinstance(g, QUANTIFIERS):
            body = g.body
            name = g.var
            if name in avoid:
                if name not in chosen:
                    chosen[name] = fresh_name(name, blocked)
                    blocked.add(chosen[name])
                name = chosen[name]
                body = rename_free(body, g.var, name)
            return type(g)(name, walk(body))
        if isinstance(g, Not):
            return Not(walk(g.body))
        if isinstance(g, CONNECTIVES):
            return type(g)(walk(g.left), walk(g.right))
        if isinstance(g, Top):
            return Top(g.bound, walk(g.body))
        return g

    return walk(f)


# --------------------------------------------------------------------------
# shape checks

def check_word_formula(f):
    """Reject number-logic constructs inside a word formula."""
    for g in subformulas(f):
        if isinstance(g, (Eps, BoundedExists, BoundedForall, Top)):
            raise ShapeViolation(f"{to_text(g)} is not part of the word logic")
    return f


def check_number_formula(f, number: str = "n"):
    """Validate the (top b body) shape of a bounded number formula.

    ``number`` may occur only as the first argument of eps atoms, the bound
    variable only in the top wrapper, and every other variable must be
    introduced by a bounded quantifier.
    """
    if not isinstance(f, Top):
        raise ShapeViolation("a number formula must have the form (top b ...)")
    b = f.bound
    if b == number:
        raise ShapeViolation("the bound variable must differ from the free variable")

    def walk(g, bound):
        if isinstance(g, COMPARISONS):
            for t in (g.left, g.right):
                if isinstance(t, Max):
                    raise ShapeViolation("max is not available in number formulas")
                if t.name in (number, b):
                    raise ShapeViolation(f"{t.name} cannot be an order operand: {to_text(g)}")
                if t.name not in bound:
                    raise ShapeViolation(f"{t.name} is not introduced by a bounded quantifier")
        elif isinstance(g, Letter):
            raise ShapeViolation(f"letter predicates belong to the word logic: {to_text(g)}")
        elif isinstance(g, Eps):
            if g.number != number:
                raise ShapeViolation(f"eps must test {number}, found {g.number}")
            if g.var in (number, b) or g.var not in bound:
                raise ShapeViolation(f"eps second argument must be a bounded variable: {to_text(g)}")
            if g.digit < 1:
                raise ShapeViolation("eps digit must be at least 1")
        elif isinstance(g, (Exists, Forall)):
            raise ShapeViolation(f"unbounded quantifier in number formula: {to_text(g)}")
        elif isinstance(g, (BoundedExists, BoundedForall)):
            if g.var in (number, b):
                raise ShapeViolation(f"{g.var} cannot be quantified inside the main part")
            walk(g.body, bound | {g.var})
        elif isinstance(g, Top):
            raise ShapeViolation("nested top wrapper")
        else:
            for c in children(g):
                walk(c, bound)

    walk(f.body, frozenset())
    return f


def parse_word_formula(text: str):
    return check_word_formula(parse(text))


def parse_number_formula(text: str, number: str = "n"):
    """Also accepts the unabbreviated top shape (E b (and (eps 1 b b) body))."""
    f = parse(text)
    if (isinstance(f, Exists) and isinstance(f.body, And) and f.body.left
            == Eps(1, f.var, f.var)):
        f = Top(f.var, f.body.right)
    return check_number_formula(f, number)


def main_part(f):
    """The largest subformula in which the bound variable is free."""
    return f.body
