"""Sets of naturals and their recognizers.

A set X is handed over as ultimately periodic data, an automaton, a
star-free expression or a formula.  Each is compiled, for a numeration
system U, to the minimal Dfa of 0* rho_U(X), on which the aperiodicity and
definiteness tests give the star-freeness verdict for that base.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from . import automata as fa
from . import basechange as bc
from . import numeration as nm
from .errors import AlphabetMismatch, KindMismatch, UnsupportedConversion

DEFAULT_HORIZON = 10_000


# --------------------------------------------------------------------------
# ultimately periodic sets

@dataclass(frozen=True)
class UltimatelyPeriodic:
    """n is in the set when it is listed in ``include``, or when it is not
    listed in ``exclude`` and n mod ``period`` lies in ``residues``.  Both
    exception lists stay below ``threshold``."""

    period: int
    residues: frozenset
    threshold: int = 0
    include: frozenset = frozenset()
    exclude: frozenset = frozenset()

    def __post_init__(self):
        for name in ("residues", "include", "exclude"):
            object.__setattr__(self, name, frozenset(int(v) for v in getattr(self, name)))
        if self.period < 1:
            raise ValueError(f"period must be at least 1, got {self.period}")
        if any(not 0 <= r < self.period for r in self.residues):
            raise ValueError(f"residues must lie in 0..{self.period - 1}")
        if self.include & self.exclude:
            raise ValueError("a number cannot be both included and excluded")
        exceptions = self.include | self.exclude
        if exceptions and (min(exceptions) < 0 or max(exceptions) >= self.threshold):
            raise ValueError(f"exceptions must lie in 0..{self.threshold - 1}")

    def __contains__(self, n: int) -> bool:
        if n in self.include:
            return True
        if n in self.exclude:
            return False
        return n % self.period in self.residues

    def periodic_member(self, n: int) -> bool:
        return n % self.period in self.residues

    def normalized(self) -> "UltimatelyPeriodic":
        """Same set with the least period and no redundant exceptions."""
        s = self.period
        for d in sorted(d for d in range(1, s + 1) if s % d == 0):
            if all(((n % s) in self.residues) == ((n % d) in self.residues) for n in range(s)):
                break
        residues = frozenset(r for r in range(d) if r in self.residues)
        include = frozenset(n for n in self.include if n % d not in residues)
        exclude = frozenset(n for n in self.exclude if n % d in residues)
        exceptions = include | exclude
        threshold = max(exceptions) + 1 if exceptions else 0
        return UltimatelyPeriodic(d, residues, threshold, include, exclude)

    def is_finite(self) -> bool:
        return not self.normalized().residues

    def is_cofinite(self) -> bool:
        up = self.normalized()
        return len(up.residues) == up.period

    def to_config(self) -> dict:
        return {"type": "up", "period": self.period, "residues": sorted(self.residues),
                "threshold": self.threshold,
                "exceptions": {"include": sorted(self.include), "exclude": sorted(self.exclude)}}

    def __str__(self):
        up = self.normalized()
        if len(up.residues) == 1 and not up.include and not up.exclude:
            (r,) = up.residues
            return f"{up.period}N" + (f"+{r}" if r else "")
        return json.dumps(self.to_config(), sort_keys=True)


def progression(r: int, s: int) -> UltimatelyPeriodic:
    """r + sN."""
    if s < 1 or r < 0:
        raise ValueError("need r >= 0 and s >= 1")
    below = frozenset(range(r % s, r, s))
    return UltimatelyPeriodic(s, {r % s}, r if below else 0, exclude=below)


def finite_set(numbers) -> UltimatelyPeriodic:
    numbers = frozenset(numbers)
    return UltimatelyPeriodic(1, frozenset(), max(numbers, default=-1) + 1, include=numbers)


def up_to_dfa(spec: UltimatelyPeriodic, system: nm.NumerationSystem) -> fa.Dfa:
    """Minimal Dfa of 0* rho_U(X): residue automata for the periodic rule,
    corrected exactly on the finite exceptions."""
    if not system.greedy:
        raise KindMismatch(f"{system} has no greedy representations")
    up = spec.normalized()
    if not up.residues:
        dfa = fa.empty(system.digits)
    elif len(up.residues) == up.period:
        dfa = nm.canonical_dfa(system)
    else:
        parts = [nm.residue_dfa(system, up.period, r) for r in sorted(up.residues)]
        dfa = parts[0]
        for part in parts[1:]:
            dfa = fa.union(dfa, part)
    if up.include:
        dfa = fa.union(dfa, nm.finite_set_dfa(system, up.include))
    if up.exclude:
        dfa = fa.difference(dfa, nm.finite_set_dfa(system, up.exclude))
    return dfa


# --------------------------------------------------------------------------
# star-free expressions

@dataclass(frozen=True)
class Words:
    words: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(sorted({tuple(w) for w in self.words})))


@dataclass(frozen=True)
class Union:
    parts: tuple


@dataclass(frozen=True)
class Inter:
    parts: tuple


@dataclass(frozen=True)
class Comp:
    part: object


@dataclass(frozen=True)
class Concat:
    parts: tuple


EMPTY = Words(())
ALL = Comp(EMPTY)
_NARY = {"union": Union, "inter": Inter, "concat": Concat}


def expr_to_dfa(expr, alphabet) -> fa.Dfa:
    alphabet = fa.check_alphabet(alphabet)
    if isinstance(expr, Words):
        for w in expr.words:
            if any(a not in alphabet for a in w):
                raise AlphabetMismatch(f"word {w} is not over {list(alphabet)}")
        return fa.from_words(alphabet, expr.words)
    if isinstance(expr, Comp):
        return fa.complement(expr_to_dfa(expr.part, alphabet))
    if isinstance(expr, (Union, Inter, Concat)):
        if not expr.parts:
            raise ValueError(f"{type(expr).__name__} needs at least one operand")
        parts = [expr_to_dfa(p, alphabet) for p in expr.parts]
        combine = {Union: fa.union, Inter: fa.intersection, Concat: fa.concat}[type(expr)]
        dfa = parts[0]
        for part in parts[1:]:
            dfa = combine(dfa, part)
        return dfa
    raise TypeError(f"not an expression: {expr!r}")


def _word_from_json(w) -> tuple:
    return nm.parse_word(w) if isinstance(w, str) else tuple(int(d) for d in w)


def expr_from_json(data):
    if not isinstance(data, dict) or len(data) != 1:
        raise ValueError(f"expression nodes are one-key objects, got {data!r}")
    (key, arg), = data.items()
    if key == "words":
        return Words(tuple(_word_from_json(w) for w in arg))
    if key == "comp":
        return Comp(expr_from_json(arg))
    if key in _NARY:
        return _NARY[key](tuple(expr_from_json(a) for a in arg))
    raise ValueError(f"unknown expression node {key!r}")


def expr_to_json(expr):
    if isinstance(expr, Words):
        return {"words": [list(w) for w in expr.words]}
    if isinstance(expr, Comp):
        return {"comp": expr_to_json(expr.part)}
    name = {Union: "union", Inter: "inter", Concat: "concat"}[type(expr)]
    return {name: [expr_to_json(p) for p in expr.parts]}


def ones_then_zeros_expr():
    """1 . comp(All 0 All) . comp(All 1 All), read in the usual way: a 1, then a
    word without 0, then a word without 1."""
    no_zero = Comp(Concat((ALL, Words(((0,),)), ALL)))
    no_one = Comp(Concat((ALL, Words(((1,),)), ALL)))
    return Concat((Words(((1,),)), no_zero, no_one))


def no_factor_11_expr():
    return Comp(Concat((ALL, Words(((1, 1),)), ALL)))


# --------------------------------------------------------------------------
# spec kinds

@dataclass(frozen=True)
class DfaSpec:
    """X = {n : 0^t rho_U(n) is accepted for some t}."""
    system: nm.NumerationSystem
    dfa: fa.Dfa


@dataclass(frozen=True)
class ExprSpec:
    alphabet: tuple
    expr: object
    system: nm.NumerationSystem | None = None

    def numeration(self) -> nm.NumerationSystem:
        if self.system is not None:
            return self.system
        k = len(self.alphabet)
        if tuple(self.alphabet) != tuple(range(k)):
            raise AlphabetMismatch("give a system for an alphabet that is not 0..k-1")
        return nm.PositionalBase(k)


@dataclass(frozen=True)
class FormulaSpec:
    """A number formula (top b ...) or a word sentence, read in ``system``."""
    formula: object
    system: nm.NumerationSystem = field(default_factory=lambda: nm.PositionalBase(2))


def set_language(dfa: fa.Dfa, system: nm.NumerationSystem) -> fa.Dfa:
    """0* rho_U(X) for X = {n : some zero-padding of rho_U(n) is in L}."""
    if dfa.alphabet != system.digits:
        raise AlphabetMismatch(f"automaton alphabet {list(dfa.alphabet)} is not the digit set "
                               f"of {system}")
    core = fa.strip_leading_zeros(fa.zero_quotient(dfa))
    return fa.intersection(fa.leading_zero_closure(core), nm.canonical_dfa(system))


def formula_dfa(spec: FormulaSpec) -> fa.Dfa:
    from .logic.numbers import num_to_sf
    from .logic.syntax import Top
    from .logic.words import compile_sf
    phi = num_to_sf(spec.formula) if isinstance(spec.formula, Top) else spec.formula
    return compile_sf(phi, spec.system.digits)


def native(spec) -> tuple:
    """(system, recognizer) in the set's own numeration system."""
    if isinstance(spec, DfaSpec):
        return spec.system, set_language(spec.dfa, spec.system)
    if isinstance(spec, ExprSpec):
        system = spec.numeration()
        return system, set_language(expr_to_dfa(spec.expr, spec.alphabet), system)
    if isinstance(spec, FormulaSpec):
        return spec.system, set_language(formula_dfa(spec), spec.system)
    raise TypeError(f"{type(spec).__name__} has no native system")


def convert(dfa: fa.Dfa, source: nm.NumerationSystem, target: nm.NumerationSystem) -> fa.Dfa:
    """Move a 0* rho(X) recognizer between bases p and p^k."""
    if source == target:
        return dfa
    if isinstance(source, nm.PositionalBase) and isinstance(target, nm.PositionalBase):
        p, q = source.k, target.k
        k = bc.power_exponent(p, q)
        if k is not None:
            return bc.group_dfa(dfa, k)
        if bc.power_exponent(q, p) is not None:
            return fa.intersection(bc.expand_dfa(dfa, q), nm.canonical_dfa(target))
    raise UnsupportedConversion(f"no automatic conversion from {source} to {target}")


def recognizer(spec, system: nm.NumerationSystem) -> fa.Dfa:
    if isinstance(spec, UltimatelyPeriodic):
        return up_to_dfa(spec, system)
    source, dfa = native(spec)
    return convert(dfa, source, system)


# --------------------------------------------------------------------------
# verdicts

@dataclass(frozen=True)
class StarFreeReport:
    system: nm.NumerationSystem
    recognizer: fa.Dfa
    aperiodicity: fa.AperiodicityReport
    definiteness: fa.DefinitenessReport

    @property
    def aperiodic(self) -> bool:
        return self.aperiodicity.aperiodic

    @property
    def definite(self) -> bool:
        return self.definiteness.definite


def star_free_in_base(spec, system: nm.NumerationSystem, cap: int = fa.DEFAULT_MONOID_CAP
                      ) -> StarFreeReport:
    dfa = recognizer(spec, system)
    return StarFreeReport(system, dfa, fa.is_aperiodic(dfa, cap), fa.is_definite(dfa))


def prime_factors(s: int) -> dict:
    factors = {}
    d = 2
    while d * d <= s:
        while s % d == 0:
            factors[d] = factors.get(d, 0) + 1
            s //= d
        d += 1
    if s > 1:
        factors[s] = factors.get(s, 0) + 1
    return factors


def radical(s: int) -> tuple:
    """(P, alpha): product of the primes of s and their largest exponent."""
    if s < 2:
        raise ValueError(f"radical needs s >= 2, got {s}")
    factors = prime_factors(s)
    P = 1
    for prime in factors:
        P *= prime
    return P, max(factors.values())


def missing_prime(s: int, q: int) -> bool:
    """Whether some prime factor of s does not divide q."""
    return any(q % prime for prime in prime_factors(s))


@dataclass(frozen=True)
class Probe:
    base: int
    available: bool
    aperiodic: bool | None = None
    definite: bool | None = None
    witness: fa.PermutationWitness | None = None
    missing_prime: bool = False
    note: str = ""


@dataclass(frozen=True)
class Category:
    tag: int
    evidence: tuple
    period: int | None = None
    radical: int | None = None
    alpha: int | None = None
    exhaustive: bool = False
    notes: tuple = ()

    LABELS = {1: "finite or cofinite", 2: "ultimately periodic, non-trivial period",
              3: "star-free in some probed base, not ultimately periodic",
              4: "not star-free in any probed base"}

    @property
    def label(self) -> str:
        return self.LABELS[self.tag]


DEFAULT_PROBES = tuple(range(2, 13))


def _probe(spec, q: int, s: int | None, cap: int) -> Probe:
    system = nm.PositionalBase(q)
    try:
        report = star_free_in_base(spec, system, cap)
    except UnsupportedConversion as exc:
        return Probe(q, False, note=str(exc))
    missing = s is not None and s >= 2 and missing_prime(s, q)
    return Probe(q, True, report.aperiodic, report.definite, report.aperiodicity.witness, missing)


def periodicity_evidence(members, horizon: int) -> tuple | None:
    """(N0, s) with X(n) = X(n + s) for N0 <= n <= horizon - s, s <= horizon / 4
    and N0 <= horizon / 2, or None when no such pair exists."""
    mask = 0
    for n in members:
        if n <= horizon:
            mask |= 1 << n
    full = (1 << (horizon + 1)) - 1
    for s in range(1, horizon // 4 + 1):
        diff = (mask ^ (mask >> s)) & (full >> s)
        last = diff.bit_length()  # mismatches happen below this n
        if last <= horizon // 2:
            return last, s
    return None


def members(spec, horizon: int = DEFAULT_HORIZON) -> list:
    if isinstance(spec, UltimatelyPeriodic):
        return [n for n in range(horizon + 1) if n in spec]
    system, dfa = native(spec)
    return [n for n in range(horizon + 1) if dfa.accepts(nm.greedy_repr(system, n))]


def classify(spec, probes=None, horizon: int = DEFAULT_HORIZON,
             cap: int = fa.DEFAULT_MONOID_CAP) -> Category:
    if isinstance(spec, UltimatelyPeriodic):
        up = spec.normalized()
        if up.is_finite() or up.is_cofinite():
            bases = sorted(set(probes or DEFAULT_PROBES))
            return Category(1, tuple(_probe(up, q, None, cap) for q in bases), up.period)
        s = up.period
        P, alpha = radical(s)
        bases = sorted(set(probes or DEFAULT_PROBES) | {P, 2 * P})
        evidence = tuple(_probe(up, q, s, cap) for q in bases)
        notes = []
        # finite exceptions keep aperiodicity but can break definiteness
        exact = not up.include and not up.exclude
        for probe in evidence:
            if probe.base % P == 0 and not (probe.definite if exact else probe.aperiodic):
                notes.append(f"base {probe.base} is a multiple of {P} but the recognizer "
                             f"is not {'definite' if exact else 'aperiodic'}")
            if probe.missing_prime and probe.aperiodic:
                notes.append(f"base {probe.base} misses a prime of {s} yet is aperiodic")
        return Category(2, evidence, s, P, alpha, notes=tuple(notes))
    bases = sorted(set(probes or DEFAULT_PROBES))
    evidence = tuple(_probe(spec, q, None, cap) for q in bases)
    found = periodicity_evidence(members(spec, horizon), horizon)
    notes = ["verdicts cover the probed bases only"]
    if found is not None:
        notes.append(f"looks ultimately periodic up to {horizon}: threshold {found[0]}, "
                     f"period {found[1]}")
    else:
        notes.append(f"not ultimately periodic up to {horizon}")
    tag = 3 if any(p.available and p.aperiodic for p in evidence) else 4
    return Category(tag, evidence, notes=tuple(notes))


# --------------------------------------------------------------------------
# parsing

_SHORT_UP = re.compile(r"^up:(\d*)N(?:\+(\d+))?$")


def _load_json(text_or_path, base_dir: Path | None):
    if isinstance(text_or_path, dict):
        return text_or_path
    text = str(text_or_path).strip()
    if text.startswith("{"):
        return json.loads(text)
    path = Path(text)
    if not path.is_absolute() and base_dir is not None:
        path = base_dir / path
    return json.loads(path.read_text())


def spec_from_config(config, base_dir: Path | None = None):
    """Spec from a JSON object, JSON text, a file path, or a short form such
    as ``up:6N``, ``up:4N+1`` or ``finite:1,5``."""
    if isinstance(config, str):
        text = config.strip()
        match = _SHORT_UP.match(text)
        if match:
            return progression(int(match.group(2) or 0), int(match.group(1) or 1))
        if text.startswith("finite:"):
            items = text[len("finite:"):]
            return finite_set(int(v) for v in items.split(",") if v.strip())
        if text.startswith("{"):
            data = json.loads(text)
        else:
            path = Path(text) if base_dir is None else base_dir / text
            if not path.exists():
                raise ValueError(f"unrecognized spec {text!r}")
            data = json.loads(path.read_text())
            base_dir = path.parent
    else:
        data = config
    kind = data.get("type")
    if kind == "up":
        exceptions = data.get("exceptions", {})
        include = exceptions.get("include", [])
        exclude = exceptions.get("exclude", [])
        threshold = data.get("threshold", max([*include, *exclude], default=-1) + 1)
        return UltimatelyPeriodic(int(data["period"]), frozenset(data.get("residues", [])),
                                  int(threshold), frozenset(include), frozenset(exclude))
    if kind == "dfa":
        system = nm.system_from_config(data["system"], base_dir)
        source = data["dfa"] if "dfa" in data else _load_json(data["path"], base_dir)
        return DfaSpec(system, fa.from_json(source))
    if kind == "expr":
        system = nm.system_from_config(data["system"], base_dir) if "system" in data else None
        return ExprSpec(tuple(data["alphabet"]), expr_from_json(data["tree"]), system)
    if kind == "formula":
        from .logic.syntax import parse
        system = nm.system_from_config(data.get("system", "base:2"), base_dir)
        return FormulaSpec(parse(data["text"]), system)
    raise ValueError(f"unknown spec type {kind!r}")


def spec_to_config(spec) -> dict:
    if isinstance(spec, UltimatelyPeriodic):
        return spec.to_config()
    if isinstance(spec, DfaSpec):
        return {"type": "dfa", "system": spec.system.to_config(), "dfa": fa.to_json(spec.dfa)}
    if isinstance(spec, ExprSpec):
        out = {"type": "expr", "alphabet": list(spec.alphabet), "tree": expr_to_json(spec.expr)}
        if spec.system is not None:
            out["system"] = spec.system.to_config()
        return out
    if isinstance(spec, FormulaSpec):
        from .logic.syntax import to_text
        return {"type": "formula", "text": to_text(spec.formula),
                "system": spec.system.to_config()}
    raise TypeError(f"not a spec: {spec!r}")

