"""Command-line front end.

Each command is one line: a verb followed by ``key=value`` fields.  A
field's value runs until the next token that starts a field of the same
verb, so values may contain spaces (combinations, polynomials, nested
object formats).  Exit codes: 0 success, 1 verification failure, 2 usage,
parse or semantic error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import habiro, jacobi, textfmt
from .errors import InvalidArgument, PrecisionExceeded, QtopoError, ResourceLimit
from .homcob import (HomologyCobordism, compose, is_homology_cobordism, is_homology_cylinder,
                     is_torelli, mapping_cylinder)
from .symplectic import commutator, moyal_product, poisson_bracket, tree_bracket
from .textfmt import ParseError, Word
from .verify import SUITES, run_suite

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE = 0, 1, 2


class SemanticError(InvalidArgument):
    """Well-formed input that is inconsistent (genus mismatch and the like)."""


@dataclass(frozen=True)
class Defaults:
    level: int = 5
    degree: int = 3
    order: int = 4
    genus: int = 1


@dataclass(frozen=True)
class VerbSpec:
    keys: tuple[str, ...]
    positional: str | None
    summary: str
    usage: str


VERBS: dict[str, VerbSpec] = {
    "habiro-eval": VerbSpec(("level", "n", "fs"), None,
                            "evaluate a Habiro element at a primitive n-th root of unity",
                            "habiro-eval level=<N> n=<order> fs=[<poly>;<poly>;...]"),
    "habiro-taylor": VerbSpec(("level", "fs"), None,
                              "Taylor expansion at q = 1 in powers of h = 1 - q",
                              "habiro-taylor level=<N> fs=[<poly>;...]"),
    "diagram-reduce": VerbSpec(("degree", "comb"), "comb",
                               "coordinates of a diagram combination modulo AS/IHX",
                               "diagram-reduce [degree=<cap>] <rational>*<diagram> + ..."),
    "weight": VerbSpec(("data", "degree", "series", "diagram"), "diagram",
                       "weight system value (or h-series with series=<K>)",
                       "weight data=<epsilon|sl2> diagram=<combination> [series=<K>]"),
    "grouplike": VerbSpec(("trunc", "degree", "comb"), "comb",
                          "test whether a combination is group-like",
                          "grouplike [trunc=<T>] <combination>   (exp(<combination>) allowed)"),
    "tree-bracket": VerbSpec(("g", "degree", "left", "right"), None,
                             "Lie bracket of tree combinations",
                             "tree-bracket g=<g> left=<tree combination> right=<tree combination>"),
    "moyal": VerbSpec(("g", "K", "op", "p", "q"), None,
                      "Moyal-Weyl star product (op=star|commutator|poisson)",
                      "moyal g=<g> K=<t-order> [op=star] p=<poly> q=<poly>"),
    "cob-compose": VerbSpec(("left", "right"), None,
                            "compose two cobordisms (left's top glued to right's bottom)",
                            "cob-compose left=<cobordism|word> right=<cobordism|word>"),
    "cob-check": VerbSpec(("target",), "target",
                          "homology cobordism / cylinder / Torelli predicates",
                          "cob-check <cobordism|word>"),
    "verify": VerbSpec(("suite",), "suite",
                       "run a property suite",
                       "verify <" + "|".join(list(SUITES) + ["all"]) + ">"),
}


# Fields whose values may contain spaces; every other field is one token.
_MULTI_TOKEN = frozenset({"fs", "comb", "diagram", "left", "right", "p", "q", "target"})


@dataclass(frozen=True)
class Command:
    verb: str
    args: tuple[tuple[str, Any], ...]
    line: int = field(default=1, compare=False)

    def get(self, key: str, default=None):
        return dict(self.args).get(key, default)


# -- parsing -----------------------------------------------------------------

def _raw_fields(text: str, line: int) -> tuple[str, dict[str, tuple[str, int]]]:
    tokens = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", text)]
    if not tokens:
        raise ParseError("empty command", 1, line)
    verb, vcol = tokens[0]
    if verb not in VERBS:
        raise ParseError(f"unknown verb {verb!r}", vcol, line)
    spec = VERBS[verb]
    groups: dict[str, list] = {}
    current = None
    for tok, col in tokens[1:]:
        m = re.match(r"^([A-Za-z_]+)=(.*)$", tok, re.S)
        if m and m.group(1) in spec.keys:
            key = m.group(1)
            if key in groups:
                raise ParseError(f"field {key!r} given twice", col, line)
            groups[key] = [(m.group(2), col + len(key) + 1)]
            current = key
        elif current is not None and current in _MULTI_TOKEN:
            groups[current].append((tok, col))
        elif verb.startswith("habiro") and tok == "habiro":
            continue
        elif spec.positional and spec.positional not in groups:
            groups[spec.positional] = [(tok, col)]
            current = spec.positional
        else:
            raise ParseError(f"unexpected token {tok!r}", col, line)
    out = {}
    for key, parts in groups.items():
        parts = [(t, c) for t, c in parts if t != ""] or [("", parts[0][1])]
        out[key] = (" ".join(t for t, _ in parts), parts[0][1])
    return verb, out


def _need(fields: dict, key: str, verb: str, line: int):
    if key not in fields or not fields[key][0]:
        raise ParseError(f"{verb} needs {key}=", 1, line)
    return fields[key]


def _with_line(fn: Callable, line: int, *args):
    try:
        return fn(*args)
    except ParseError as e:
        raise e.shifted(0, line) from None


def _int_field(fields, key, default, line) -> int:
    if key not in fields:
        return default
    return _with_line(textfmt.parse_int, line, *fields[key])


def parse_input(text: str, line: int = 1, defaults: Defaults = Defaults()) -> Command:
    """Parse one command line into a validated :class:`Command`."""
    verb, f = _raw_fields(text, line)
    args: dict[str, Any] = {}
    if verb in ("habiro-eval", "habiro-taylor"):
        level = _int_field(f, "level", defaults.level, line)
        if level < 1:
            raise SemanticError(f"level must be positive, got {level}")
        fs = _with_line(textfmt.parse_factorial_series, line, *_need(f, "fs", verb, line))
        if len(fs) > level + 1:
            raise SemanticError(f"{len(fs)} factorial-series terms exceed level {level}")
        args.update(level=level, fs=fs)
        if verb == "habiro-eval":
            n = _with_line(textfmt.parse_int, line, *_need(f, "n", verb, line))
            if not 1 <= n <= level + 1:
                raise SemanticError(f"root order {n} needs 1 <= n <= level + 1 = {level + 1}")
            args["n"] = n
    elif verb in ("diagram-reduce", "weight", "grouplike"):
        degree = _int_field(f, "degree", defaults.degree, line)
        ckey = {"weight": "diagram"}.get(verb, "comb")
        comb = _with_line(textfmt.parse_combination, line, *_need(f, ckey, verb, line)[:1], degree,
                          _need(f, ckey, verb, line)[1])
        if comb.truncated:
            raise SemanticError(f"combination has terms above degree {degree}; raise degree=")
        args.update(degree=degree)
        if verb == "weight":
            data = f.get("data", ("epsilon", 1))[0]
            if data not in jacobi.BUILTIN_WEIGHT_DATA:
                raise ParseError(f"unknown weight data {data!r}", f["data"][1], line)
            args["data"] = data
            if "series" in f:
                args["series"] = _int_field(f, "series", 0, line)
        if verb == "grouplike":
            args["trunc"] = _int_field(f, "trunc", degree, line)
        args[ckey] = comb
    elif verb == "tree-bracket":
        g = _int_field(f, "g", defaults.genus, line)
        args.update(g=g, degree=_int_field(f, "degree", defaults.degree, line))
        for side in ("left", "right"):
            text_, col = _need(f, side, verb, line)
            args[side] = _with_line(textfmt.parse_tree_combination, line, text_, g, col)
    elif verb == "moyal":
        g = _int_field(f, "g", defaults.genus, line)
        order = _int_field(f, "K", defaults.order, line)
        op = f.get("op", ("star", 1))[0]
        if op not in ("star", "commutator", "poisson"):
            raise ParseError(f"unknown op {op!r}", f["op"][1], line)
        args.update(g=g, K=order, op=op)
        for side in ("p", "q"):
            text_, col = _need(f, side, verb, line)
            args[side] = _with_line(textfmt.parse_observable, line, text_, g, order, col)
    elif verb == "cob-compose":
        left = _with_line(textfmt.parse_cobordism_or_word, line, *_need(f, "left", verb, line))
        right = _with_line(textfmt.parse_cobordism_or_word, line, *_need(f, "right", verb, line))
        if left.genus != right.genus:
            raise SemanticError(f"genus mismatch: {left.genus} vs {right.genus}")
        args.update(left=left, right=right)
    elif verb == "cob-check":
        args["target"] = _with_line(textfmt.parse_cobordism_or_word, line, *_need(f, "target", verb, line))
    elif verb == "verify":
        suite = _need(f, "suite", verb, line)[0]
        if suite not in SUITES and suite != "all":
            raise ParseError(f"unknown suite {suite!r}", f["suite"][1], line)
        args["suite"] = suite
    order_ = VERBS[verb].keys
    return Command(verb, tuple(sorted(args.items(), key=lambda kv: order_.index(kv[0]))), line)


def _fmt_value(key: str, value) -> str:
    if isinstance(value, jacobi.DiagramCombination):
        return textfmt.fmt_combination(value)
    if key == "fs":
        return textfmt.fmt_factorial_series(value)
    if key in ("left", "right") and isinstance(value, (Word, HomologyCobordism)):
        return _fmt_target(value)
    if key == "target":
        return _fmt_target(value)
    if key in ("left", "right"):
        return textfmt.fmt_tree_combination(value)
    if key in ("p", "q"):
        return textfmt.fmt_observable(value)
    return str(value)


def _fmt_target(value) -> str:
    return textfmt.fmt_word(value) if isinstance(value, Word) else textfmt.fmt_cobordism(value)


def serialize(cmd: Command) -> str:
    return " ".join([cmd.verb] + [f"{k}={_fmt_value(k, v)}" for k, v in cmd.args])


# -- execution ---------------------------------------------------------------

@dataclass
class Outcome:
    """``value`` for single-valued verbs, else ``records`` of key/value pairs."""

    value: str | None = None
    records: list[list[tuple[str, str]]] = field(default_factory=list)
    label: str = ""
    notes: list[str] = field(default_factory=list)
    failed: bool = False


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _cobordism(value) -> HomologyCobordism:
    return mapping_cylinder(value.mapping_class()) if isinstance(value, Word) else value


def execute(cmd: Command) -> Outcome:
    a = dict(cmd.args)
    v = cmd.verb
    if v == "habiro-eval":
        e = habiro.from_factorial_series(a["fs"], a["level"])
        return Outcome(str(habiro.evaluate_at_root(e, a["n"])),
                       label=f"value at a primitive root of order {a['n']} (xi = that root)")
    if v == "habiro-taylor":
        e = habiro.from_factorial_series(a["fs"], a["level"])
        return Outcome(textfmt.fmt_series(habiro.taylor_at_one(e)),
                       label=f"coefficients of h^0..h^{a['level']}, h = 1 - q")
    if v == "diagram-reduce":
        coords = jacobi.reduce(a["comb"], a["degree"])
        recs = []
        for deg in sorted(coords):
            qb = jacobi.generate_relations(deg, a["degree"])
            recs.append([("degree", str(deg)), ("dimension", str(qb.dimension)),
                         ("coords", ",".join(textfmt.fmt_rational(x) for x in coords[deg]))])
        return Outcome(records=recs or [[("zero", "true")]])
    if v == "weight":
        w = jacobi.BUILTIN_WEIGHT_DATA[a["data"]]
        comb = a["diagram"]
        if "series" in a:
            s = jacobi.weight_series(w, comb, a["series"])
            return Outcome(",".join(textfmt.fmt_rational(x) for x in s.coefficients),
                           label=f"{w.name} weight series, coefficients of h^0..h^{a['series'] - 1}")
        total = sum((c * jacobi.key_weight(w, k) for k, c in comb.terms), Fraction(0))
        return Outcome(textfmt.fmt_rational(total), label=f"{w.name} weight")
    if v == "grouplike":
        ok = jacobi.is_group_like(a["comb"], a["trunc"], a["degree"])
        return Outcome(records=[[("group_like", _bool(ok))]])
    if v == "tree-bracket":
        r = tree_bracket(a["left"], a["right"], a["degree"])
        return Outcome(textfmt.fmt_tree_combination(r), label="bracket modulo AS/IHX")
    if v == "moyal":
        p, q, op = a["p"], a["q"], a["op"]
        if op == "star":
            r = moyal_product(p, q, a["K"])
        elif op == "commutator":
            r = commutator(p, q, a["K"])
        else:
            r = poisson_bracket(p, q)
        return Outcome(textfmt.fmt_observable(r), label=f"{op} product mod t^{a['K']}")
    if v == "cob-compose":
        r = compose(_cobordism(a["left"]), _cobordism(a["right"]))
        return Outcome(textfmt.fmt_cobordism(r), label="composite (Smith-reduced)",
                       notes=[f"homology_cobordism={_bool(is_homology_cobordism(r))} "
                              f"homology_cylinder={_bool(is_homology_cylinder(r))}"])
    if v == "cob-check":
        t = a["target"]
        c = _cobordism(t)
        rec = [("homology_cobordism", _bool(is_homology_cobordism(c))),
               ("homology_cylinder", _bool(is_homology_cylinder(c)))]
        if isinstance(t, Word):
            rec.append(("torelli", _bool(is_torelli(t.mapping_class()))))
        return Outcome(records=[rec])
    if v == "verify":
        results = run_suite(a["suite"])
        recs = []
        for r in results:
            rec = [("property", _slug(r.name)), ("status", "pass" if r.ok else "fail")]
            if not r.ok:
                rec.append(("counterexample", json.dumps(r.detail)))
            recs.append(rec)
        return Outcome(records=recs, failed=not all(r.ok for r in results))
    raise InvalidArgument(f"unknown verb {v}")


def _slug(name: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")


def render(out: Outcome, fmt: str) -> list[str]:
    if fmt == "machine":
        if out.value is not None:
            return [out.value]
        return [" ".join(f"{k}={v}" for k, v in rec) for rec in out.records]
    lines = []
    if out.value is not None:
        lines.append(f"{out.label}: {out.value}" if out.label else out.value)
    for rec in out.records:
        lines.append(", ".join(f"{k.replace('_', ' ')}: {v}" for k, v in rec))
    lines.extend(out.notes)
    return lines


def run_line(text: str, fmt: str, line: int = 1, defaults: Defaults = Defaults(),
             stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        cmd = parse_input(text, line, defaults)
    except ParseError as e:
        print(f"syntax error: line {e.line}, column {e.column}: {e.message}", file=stderr)
        return EXIT_USAGE
    except (SemanticError, InvalidArgument) as e:
        print(f"semantic error: line {line}: {e}", file=stderr)
        return EXIT_USAGE
    try:
        out = execute(cmd)
    except (PrecisionExceeded, ResourceLimit, InvalidArgument) as e:
        print(f"error: line {line}: {e}", file=stderr)
        return EXIT_USAGE
    for ln in render(out, fmt):
        print(ln, file=stdout)
    return EXIT_VERIFY_FAILED if out.failed else EXIT_OK


def run_file(lines: Sequence[str], fmt: str, defaults: Defaults = Defaults(), stdout=None, stderr=None) -> int:
    code = EXIT_OK
    for i, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        code = max(code, run_line(text, fmt, i, defaults, stdout, stderr))
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default=argparse.SUPPRESS,
                        help="output format (default: text)")
    common.add_argument("--level", type=int, default=argparse.SUPPRESS, help="Habiro truncation level (default 5)")
    common.add_argument("--degree", type=int, default=argparse.SUPPRESS, help="diagram degree cap (default 3)")
    common.add_argument("--order", type=int, default=argparse.SUPPRESS, help="t-truncation order (default 4)")
    common.add_argument("--genus", type=int, default=argparse.SUPPRESS, help="surface genus (default 1)")
    parser = argparse.ArgumentParser(prog="qtopo", parents=[common],
                                     description="Exact algebra for quantum invariants of 3-manifolds.")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    for name, spec in VERBS.items():
        p = sub.add_parser(name, parents=[common], help=spec.summary,
                           description=f"{spec.summary}.  Usage: {spec.usage}")
        p.add_argument("fields", nargs=argparse.REMAINDER, help="key=value fields")
    p = sub.add_parser("run", parents=[common], help="run commands from a file, one per line ('-' for stdin)")
    p.add_argument("file")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    for i, tok in enumerate(argv[:-1]):
        if tok == "habiro" and argv[i + 1].startswith("habiro-"):
            del argv[i]
            break
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    opts = vars(ns)
    fmt = opts.get("format", "text")
    base = Defaults()
    defaults = Defaults(opts.get("level", base.level), opts.get("degree", base.degree),
                        opts.get("order", base.order), opts.get("genus", base.genus))
    if ns.verb == "run":
        try:
            lines = sys.stdin.read().splitlines() if ns.file == "-" else open(ns.file).read().splitlines()
        except OSError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_USAGE
        return run_file(lines, fmt, defaults)
    return run_line(" ".join([ns.verb] + list(ns.fields)), fmt, 1, defaults)


if __name__ == "__main__":
    sys.exit(main())
