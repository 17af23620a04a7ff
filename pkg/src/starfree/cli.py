"""Batch command line front end.

Every verb except ``repr`` prints a JSON report on stdout.  Exit status is
0 on success, 1 on bad input and 2 when a machine-checked statement fails.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
import time
from pathlib import Path

from . import __version__
from . import automata as fa
from . import basechange as bc
from . import numeration as nm
from . import padic as pa
from . import setspec as ss
from .errors import (CertificationFailure, PreservationViolated, StarFreeError,
                     TranslationMismatch, VerdictMismatch)

OUT_ENV = "STARFREE_OUT"
MISMATCH_ERRORS = (CertificationFailure, PreservationViolated, TranslationMismatch,
                   VerdictMismatch)


_SCALAR_LIST = re.compile(r"\[\s*((?:-?\d+|null|true|false)(?:,\s*(?:-?\d+|null|true|false))*)\s*\]")


def dumps(report) -> str:
    """Indented JSON with lists of scalars kept on one line."""
    text = json.dumps(report, indent=2, sort_keys=True)
    return _SCALAR_LIST.sub(lambda m: "[" + ", ".join(re.split(r",\s*", m.group(1))) + "]", text)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


class ReportProblem(StarFreeError):
    """A loaded report contains a witness that does not check out."""


# --------------------------------------------------------------------------
# input helpers

def _read_text(value: str) -> tuple[str, Path | None]:
    """Inline text, or the contents of the file it names."""
    path = Path(value)
    if not value.lstrip().startswith(("{", "(")) and path.is_file():
        return path.read_text(), path.parent
    return value, None


def load_dfa(value: str) -> fa.Dfa:
    text, _ = _read_text(value)
    return fa.from_json(text)


def load_system(value: str) -> nm.NumerationSystem:
    text, base_dir = _read_text(value)
    return nm.system_from_config(text, base_dir)


def load_formula(value: str):
    from .logic.syntax import parse
    text, _ = _read_text(value)
    return parse(text)


def _ints(text: str) -> list:
    return [int(v) for v in text.split(",") if v.strip()]


# --------------------------------------------------------------------------
# report pieces

def witness_json(w):
    return None if w is None else {"word": list(w.word), "cycle": list(w.cycle)}


def aperiodicity_json(report: fa.AperiodicityReport) -> dict:
    return {"aperiodic": report.aperiodic, "index": report.index,
            "monoid_size": report.monoid_size, "witness": witness_json(report.witness),
            "automaton": fa.to_json(report.automaton)}


def definiteness_json(report: fa.DefinitenessReport) -> dict:
    witness = None if report.witness is None else [list(pair) for pair in report.witness]
    return {"definite": report.definite, "horizon": report.horizon, "witness": witness}


def analysis_json(dfa: fa.Dfa, cap: int) -> dict:
    return {"states": dfa.num_states,
            "aperiodicity": aperiodicity_json(fa.is_aperiodic(dfa, cap)),
            "definiteness": definiteness_json(fa.is_definite(dfa))}


def category_json(category: ss.Category) -> dict:
    return {
        "tag": category.tag, "label": category.label, "period": category.period,
        "radical": category.radical, "alpha": category.alpha,
        "exhaustive": category.exhaustive, "notes": list(category.notes),
        "evidence": [{"base": p.base, "available": p.available, "aperiodic": p.aperiodic,
                      "definite": p.definite, "witness": witness_json(p.witness),
                      "missing_prime": p.missing_prime, "note": p.note}
                     for p in category.evidence],
    }


def validate_report(report) -> tuple[int, list]:
    """Re-run every permutation witness against the automaton stored next
    to it.  Returns (number checked, problems)."""
    checked, problems = 0, []

    def walk(node, where):
        nonlocal checked
        if isinstance(node, dict):
            if "witness" in node and "automaton" in node and node.get("witness"):
                checked += 1
                w = node["witness"]
                dfa = fa.from_json(node["automaton"])
                word = tuple(tuple(a) if isinstance(a, list) else a for a in w["word"])
                witness = fa.PermutationWitness(word, tuple(w["cycle"]))
                if not witness.holds_in(dfa):
                    problems.append(f"{where}: witness {w} does not permute its cycle")
            for key, value in node.items():
                walk(value, f"{where}.{key}")
        elif isinstance(node, list):
            for i, value in enumerate(node):
                walk(value, f"{where}[{i}]")

    walk(report, "$")
    return checked, problems


class Emitter:
    def __init__(self, out: str | None, formats: list):
        self.out = Path(out) if out else None
        self.formats = formats
        self.paths = []

    def dfa(self, name: str, dfa: fa.Dfa):
        if self.out is None:
            return
        self.out.mkdir(parents=True, exist_ok=True)
        if "json" in self.formats:
            path = self.out / f"{name}.json"
            path.write_text(fa.dumps(dfa) + "\n")
            self.paths.append(str(path))
        if "dot" in self.formats:
            path = self.out / f"{name}.dot"
            path.write_text(fa.to_dot(dfa, name))
            self.paths.append(str(path))


# --------------------------------------------------------------------------
# verbs

def cmd_repr(args, emit):
    system = load_system(args.system)
    lines = []
    for n in args.n or []:
        lines.append(nm.format_word(nm.representation(system, n)))
    for w in args.word or []:
        lines.append(str(nm.value(system, nm.parse_word(w))))
    print("\n".join(lines))
    return {"system": str(system), "lines": lines}


def _spec_and_system(args):
    spec = ss.spec_from_config(args.spec)
    if args.system:
        system = load_system(args.system)
    elif isinstance(spec, ss.UltimatelyPeriodic):
        system = nm.PositionalBase(2)
    else:
        system = ss.native(spec)[0]
    return spec, system


def cmd_build(args, emit):
    spec, system = _spec_and_system(args)
    dfa = ss.recognizer(spec, system)
    emit.dfa("recognizer", dfa)
    return {"spec": ss.spec_to_config(spec), "system": str(system), "automaton": fa.to_json(dfa)}


def cmd_analyze(args, emit):
    targets = []
    if args.dfa:
        dfa = load_dfa(args.dfa)
        targets.append(("dfa", dfa))
    if args.spec:
        spec, system = _spec_and_system(args)
        targets.append((f"spec in {system}", ss.recognizer(spec, system)))
    if args.random:
        rng = random.Random(args.seed)
        for i in range(args.random):
            states = rng.randint(1, args.states)
            letters = rng.randint(1, args.letters)
            targets.append((f"random-{i}", fa.random_dfa(rng, states, letters)))
    if not targets:
        raise ValueError("give --dfa, --spec or --random")
    results = []
    for i, (name, dfa) in enumerate(targets):
        entry = {"name": name, **analysis_json(dfa, args.cap)}
        emit.dfa(f"target-{i}", fa.minimize(dfa)[0])
        results.append(entry)
    return {"targets": results}


def cmd_classify(args, emit):
    spec = ss.spec_from_config(args.spec)
    probes = _ints(args.probes) if args.probes else None
    if probes and min(probes) < 2:
        raise ValueError("probe bases must be at least 2")
    category = ss.classify(spec, probes, args.horizon, args.cap)
    return {"spec": ss.spec_to_config(spec), "category": category_json(category)}


def cmd_group(args, emit):
    report = bc.grouping_preservation_check(load_dfa(args.dfa), args.k, args.horizon)
    emit.dfa("grouped", report.grouped)
    return {"p": report.p, "k": report.k,
            "source": aperiodicity_json(report.source_verdict),
            "grouped": aperiodicity_json(report.grouped_verdict),
            "preserved": report.preserved, "agreement": report.agreement,
            "samples": report.samples, "set_language": report.set_language,
            "automaton": fa.to_json(report.grouped)}


def cmd_expand(args, emit):
    source = load_dfa(args.dfa)
    result = bc.expand_dfa(source, args.p, closure=not args.no_closure)
    before, after = fa.is_aperiodic(source, args.cap), fa.is_aperiodic(result, args.cap)
    emit.dfa("expanded", result)
    out = {"p": args.p, "source": aperiodicity_json(before), "expanded": aperiodicity_json(after),
           "automaton": fa.to_json(result), "discrepancy": None}
    if before.aperiodic and not after.aperiodic:
        out["discrepancy"] = ("the block expansion of an aperiodic recognizer is not aperiodic; "
                              "the base p^k to base p direction fails on this instance")
    return out


def cmd_logic_eval(args, emit):
    from .logic import eval_num, eval_sf, word_model
    from .logic.syntax import Top, to_text
    f = load_formula(args.formula)
    results = []
    if isinstance(f, Top):
        system = load_system(args.system)
        for n in args.n or []:
            results.append({"n": n, "value": eval_num(f, n, system, args.slack)})
    else:
        for w in args.word or []:
            results.append({"word": w, "value": eval_sf(f, word_model(nm.parse_word(w)))})
    if not results:
        raise ValueError("give --n for number formulas or --word for word sentences")
    return {"formula": to_text(f), "results": results}


def _word_sentence(f):
    from .logic import num_to_sf
    from .logic.syntax import Top
    return num_to_sf(f) if isinstance(f, Top) else f


def cmd_logic_compile(args, emit):
    from .logic import compile_sf
    from .logic.syntax import to_text
    f = load_formula(args.formula)
    alphabet = _ints(args.alphabet) if args.alphabet else load_system(args.system).digits
    dfa = compile_sf(_word_sentence(f), alphabet)
    emit.dfa("compiled", dfa)
    return {"formula": to_text(f), "alphabet": list(alphabet), "automaton": fa.to_json(dfa),
            "aperiodicity": aperiodicity_json(fa.is_aperiodic(dfa, args.cap))}


def cmd_logic_translate(args, emit):
    from .logic import num_to_sf, sf_to_num
    from .logic.syntax import Top, to_text
    f = load_formula(args.formula)
    if isinstance(f, Top):
        return {"direction": "number-to-word", "input": to_text(f), "output": to_text(num_to_sf(f))}
    system = load_system(args.system)
    return {"direction": "word-to-number", "input": to_text(f),
            "output": to_text(sf_to_num(f, system))}


def cmd_logic_define_set(args, emit):
    from .logic import define_set, inject_canonical, sf_to_num
    from .logic.syntax import Top, to_text
    system = load_system(args.system)
    f = load_formula(args.formula)
    psi = f if isinstance(f, Top) else sf_to_num(f, system)
    if args.inject:
        psi = inject_canonical(psi, system)
    members = define_set(psi, system, args.horizon, not args.no_cross_check, args.slack)
    return {"formula": to_text(psi), "system": str(system), "horizon": args.horizon,
            "members": members}


def cmd_padic_to_ary(args, emit):
    dfa = pa.to_ary(load_dfa(args.dfa), args.p)
    emit.dfa("ary", dfa)
    return {"p": args.p, "automaton": fa.to_json(dfa),
            "aperiodicity": aperiodicity_json(fa.is_aperiodic(dfa, args.cap))}


def cmd_padic_to_adic(args, emit):
    dfa = pa.to_adic(load_dfa(args.dfa), args.p)
    emit.dfa("adic", dfa)
    return {"p": args.p, "automaton": fa.to_json(dfa),
            "aperiodicity": aperiodicity_json(fa.is_aperiodic(dfa, args.cap))}


def cmd_padic_check(args, emit):
    spec = ss.spec_from_config(args.spec)
    report = pa.transfer_check(spec, args.p)
    emit.dfa("ary", report.ary)
    emit.dfa("adic", report.adic)
    return {"spec": ss.spec_to_config(spec), "p": args.p,
            "ary": aperiodicity_json(report.ary_verdict),
            "adic": aperiodicity_json(report.adic_verdict),
            "round_trip": report.round_trip}


def cmd_verify(args, emit):
    report = json.loads(Path(args.report).read_text())
    checked, problems = validate_report(report)
    if problems:
        raise ReportProblem("; ".join(problems))
    return {"report": args.report, "witnesses_checked": checked}


# --------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=os.environ.get(OUT_ENV),
                        help=f"directory for artifacts and report.json (default ${OUT_ENV})")
    common.add_argument("--emit", default="json", help="artifact formats: json, dot or both")
    common.add_argument("--seed", type=int, default=0, help="seed for random batteries")
    common.add_argument("--cap", type=int, default=fa.DEFAULT_MONOID_CAP,
                        help="largest transition monoid to generate")

    parser = _Parser(prog="starfree", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    verbs = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(sub, name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = verb(verbs, "repr", cmd_repr, "representations and values")
    p.add_argument("--system", default="base:2")
    p.add_argument("--n", type=int, nargs="+")
    p.add_argument("--word", nargs="+")

    p = verb(verbs, "build", cmd_build, "recognizer of a set spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--system")

    p = verb(verbs, "analyze", cmd_analyze, "aperiodicity and definiteness")
    p.add_argument("--dfa")
    p.add_argument("--spec")
    p.add_argument("--system")
    p.add_argument("--random", type=int, default=0, help="also analyze N random automata")
    p.add_argument("--states", type=int, default=6)
    p.add_argument("--letters", type=int, default=3)

    p = verb(verbs, "classify", cmd_classify, "four-way classification of a set")
    p.add_argument("--spec", required=True)
    p.add_argument("--probes", help="comma separated probe bases")
    p.add_argument("--horizon", type=int, default=ss.DEFAULT_HORIZON)

    p = verb(verbs, "group", cmd_group, "base p to base p^k")
    p.add_argument("--dfa", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--horizon", type=int, default=bc.DEFAULT_HORIZON)

    p = verb(verbs, "expand", cmd_expand, "base p^k to base p")
    p.add_argument("--dfa", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--no-closure", action="store_true")

    logic = verbs.add_parser("logic", help="word and number logic")
    lverbs = logic.add_subparsers(dest="logic_verb", required=True, parser_class=_Parser)
    p = verb(lverbs, "eval", cmd_logic_eval, "evaluate a formula")
    p.add_argument("--formula", required=True)
    p.add_argument("--word", nargs="+")
    p.add_argument("--n", type=int, nargs="+")
    p.add_argument("--system", default="base:2")
    p.add_argument("--slack", type=int)
    p = verb(lverbs, "compile", cmd_logic_compile, "compile a sentence to a Dfa")
    p.add_argument("--formula", required=True)
    p.add_argument("--alphabet")
    p.add_argument("--system", default="base:2")
    p = verb(lverbs, "translate", cmd_logic_translate, "word logic <-> number logic")
    p.add_argument("--formula", required=True)
    p.add_argument("--system", default="base:2")
    p = verb(lverbs, "define-set", cmd_logic_define_set, "enumerate a defined set")
    p.add_argument("--formula", required=True)
    p.add_argument("--system", default="base:2")
    p.add_argument("--horizon", type=int, default=64)
    p.add_argument("--slack", type=int)
    p.add_argument("--inject", action="store_true", help="conjoin the canonical sentence")
    p.add_argument("--no-cross-check", action="store_true")

    padic = verbs.add_parser("padic", help="bijective versus greedy base p")
    pverbs = padic.add_subparsers(dest="padic_verb", required=True, parser_class=_Parser)
    for name, func in (("to-ary", cmd_padic_to_ary), ("to-adic", cmd_padic_to_adic)):
        p = verb(pverbs, name, func, f"pipeline {name}")
        p.add_argument("--dfa", required=True)
        p.add_argument("--p", type=int, required=True)
    p = verb(pverbs, "check", cmd_padic_check, "compare both aperiodicity verdicts")
    p.add_argument("--spec", required=True)
    p.add_argument("--p", type=int, required=True)

    p = verb(verbs, "verify", cmd_verify, "re-check the witnesses of a saved report")
    p.add_argument("--report", required=True)
    return parser


def _check_config(args):
    for name in ("horizon", "random", "states", "letters"):
        value = getattr(args, name, None)
        if value is not None and value < (0 if name == "random" else 1):
            raise ValueError(f"--{name} must be positive")
    formats = [f.strip() for f in args.emit.split(",") if f.strip()]
    if not set(formats) <= {"json", "dot"}:
        raise ValueError(f"--emit accepts json and dot, got {args.emit!r}")
    return formats


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # usage errors exit 1, --help and --version exit 0
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        emit = Emitter(args.out, _check_config(args))
        result = args.func(args, emit)
        status = 0
    except MISMATCH_ERRORS + (ReportProblem,) as exc:
        print(f"starfree: check failed: {exc}", file=sys.stderr)
        result, status = {"error": str(exc), "kind": type(exc).__name__}, 2
        emit = Emitter(None, [])
    except (StarFreeError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"starfree: error: {exc}", file=sys.stderr)
        return 1
    report = {"command": ["starfree", *argv], "version": __version__,
              "elapsed_seconds": round(time.perf_counter() - start, 6),
              "status": status, "result": result, "artifacts": emit.paths}
    text = dumps(report)
    if emit.out is not None:
        emit.out.mkdir(parents=True, exist_ok=True)
        (emit.out / "report.json").write_text(text + "\n")
    if args.verb != "repr" or status:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
