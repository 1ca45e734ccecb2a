"""Parsers and serializers for the textual input formats.

Every ``parse_*`` raises :class:`ParseError` carrying a 1-based column
relative to the string it was given; callers shift it to the line.
"""
from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import graphs, poly
from .errors import InvalidArgument
from .habiro import HabiroElement, OneMinusQSeries, from_factorial_series
from .homcob import HomologyCobordism, MappingClass, parse_class, word_class
from .jacobi import EMPTY, THETA, DiagramCombination, JacobiDiagram, key_degree, theta_power
from .symplectic.lattice import SymplecticLattice
from .symplectic.moyal import PolynomialObservable
from .symplectic.trees import LabeledTree, TreeCombination, from_shape


class ParseError(InvalidArgument):
    def __init__(self, message: str, column: int = 1, line: int = 1):
        self.message = message
        self.column = column
        self.line = line
        super().__init__(f"line {line}, column {column}: {message}")

    def shifted(self, offset: int = 0, line: int | None = None) -> ParseError:
        return ParseError(self.message, self.column + offset, self.line if line is None else line)


def fmt_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text: str, column: int = 1) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}", column) from None


def parse_int(text: str, column: int = 1) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ParseError(f"not an integer: {text!r}", column) from None


def split_terms(text: str) -> list[tuple[int, str, int]]:
    """Split ``a + b - c`` at standalone +/- tokens.

    Returns (sign, term text, column) triples.
    """
    out = []
    sign = 1
    buf: list[tuple[str, int]] = []
    for m in re.finditer(r"\S+", text):
        tok = m.group()
        if tok in "+-":
            if not buf:
                if out or tok == "+":
                    if out:
                        raise ParseError("two operators in a row", m.start() + 1)
                sign = -sign if tok == "-" else sign
                continue
            out.append((sign, " ".join(t for t, _ in buf), buf[0][1]))
            buf = []
            sign = -1 if tok == "-" else 1
            continue
        col = m.start() + 1
        if not buf and len(tok) > 1 and tok[0] == "-" and not tok[1].isdigit():
            sign, tok, col = -sign, tok[1:], col + 1
        buf.append((tok, col))
    if buf:
        out.append((sign, " ".join(t for t, _ in buf), buf[0][1]))
    elif out or sign != 1:
        raise ParseError("expression ends with an operator", len(text) + 1)
    if not out:
        raise ParseError("empty expression", 1)
    return out


def split_coefficient(term: str) -> tuple[Fraction, str]:
    m = re.match(r"^([+-]?\d+(?:/\d+)?)\*(.*)$", term, re.S)
    if m:
        return Fraction(m.group(1)), m.group(2).strip()
    if re.fullmatch(r"[+-]?\d+(?:/\d+)?", term):
        return Fraction(term), "1"
    return Fraction(1), term


def fields(text: str, allowed: Sequence[str], column: int = 1) -> dict[str, tuple[str, int]]:
    out = {}
    for m in re.finditer(r"\S+", text):
        tok = m.group()
        k, eq, v = tok.partition("=")
        if not eq or k not in allowed:
            raise ParseError(f"unexpected field {tok!r}", column + m.start())
        if k in out:
            raise ParseError(f"field {k!r} given twice", column + m.start())
        out[k] = (v, column + m.start() + len(k) + 1)
    return out


# -- integer polynomials and Habiro elements --------------------------------

def parse_int_poly(text: str, column: int = 1) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return poly.trim(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"polynomial must be comma-separated integers: {text!r}", column) from None


def fmt_int_poly(p: Sequence[int]) -> str:
    p = poly.trim(p)
    return ",".join(str(c) for c in p) if p else "0"


def parse_factorial_series(text: str, column: int = 1) -> tuple[tuple[int, ...], ...]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError("factorial series must look like [p0;p1;...]", column)
    body = text[1:-1]
    if not body.strip():
        return ()
    out, pos = [], 1
    for part in body.split(";"):
        out.append(parse_int_poly(part, column + pos))
        pos += len(part) + 1
    return tuple(out)


def fmt_factorial_series(fs) -> str:
    return "[" + ";".join(fmt_int_poly(p) for p in fs) + "]"


def fmt_habiro(a: HabiroElement) -> str:
    return f"habiro level={a.level} fs=[{fmt_int_poly(a.representative)}]"


def fmt_series(s: OneMinusQSeries) -> str:
    return ",".join(fmt_rational(c) for c in s.coefficients)


# -- closed diagrams ----------------------------------------------------------

_NAMED = {"empty": EMPTY, "theta": THETA}


def parse_diagram(text: str, column: int = 1) -> JacobiDiagram:
    text = text.strip()
    m = re.fullmatch(r"theta\^(\d+)", text)
    if m:
        return theta_power(int(m.group(1)))
    if text in _NAMED:
        return _NAMED[text]
    if not text.startswith("diagram"):
        raise ParseError(f"unknown diagram {text!r}", column)
    f = fields(text[len("diagram"):], ("v", "rot", "edges"), column + len("diagram"))
    for k in ("v", "rot", "edges"):
        if k not in f:
            raise ParseError(f"diagram needs {k}=", column)
    count = parse_int(*f["v"])
    rot_text, rot_col = f["rot"]
    rot = _groups(rot_text, rot_col)
    verts = []
    for g, col in rot:
        try:
            hs = tuple(int(x) for x in g.split(","))
        except ValueError:
            raise ParseError(f"bad rotation {g!r}", col) from None
        if len(hs) != 3:
            raise ParseError(f"vertex rotation needs three half-edges: ({g})", col)
        verts.append(hs)
    if len(verts) != count:
        raise ParseError(f"v={count} but {len(verts)} rotations given", f["v"][1])
    edges = []
    for g, col in _groups(*f["edges"]):
        mm = re.fullmatch(r"(-?\d+)-(-?\d+)", g)
        if not mm:
            raise ParseError(f"bad edge ({g})", col)
        edges.append((int(mm.group(1)), int(mm.group(2))))
    try:
        return JacobiDiagram(tuple(verts), tuple(edges))
    except InvalidArgument as e:
        raise ParseError(f"malformed diagram: {e}", column) from None


def _groups(text: str, column: int) -> list[tuple[str, int]]:
    if not text:
        return []
    if not re.fullmatch(r"(\([^()]*\))+", text):
        raise ParseError(f"expected parenthesized groups: {text!r}", column)
    return [(m.group(1), column + m.start()) for m in re.finditer(r"\(([^()]*)\)", text)]


def fmt_diagram(d: JacobiDiagram) -> str:
    rot = "".join("(" + ",".join(map(str, v)) + ")" for v in d.vertices)
    edges = "".join(f"({a}-{b})" for a, b in d.edges)
    return f"diagram v={len(d.vertices)} rot={rot} edges={edges}"


def _fmt_key(key) -> str:
    if key == ():
        return "1"
    n_theta = sum(1 for c in key if c == THETA.key()[0][0])
    if n_theta == len(key):
        return "theta" if n_theta == 1 else f"theta^{n_theta}"
    return fmt_diagram(JacobiDiagram.from_key(key))


def parse_combination(text: str, level: int, column: int = 1) -> DiagramCombination:
    """``<rational>*<diagram> + ...``; ``exp(<combination>)`` gives the
    truncated exponential."""
    from .jacobi import exp_combination

    text = text.strip()
    m = re.fullmatch(r"exp\((.*)\)", text, re.S)
    if m:
        inner = parse_combination(m.group(1), level, column + 4)
        try:
            return exp_combination(inner)
        except InvalidArgument as e:
            raise ParseError(str(e), column) from None
    pairs = []
    for sign, term, col in split_terms(text):
        c, body = split_coefficient(term)
        d = EMPTY if body == "1" else parse_diagram(body, column + col - 1)
        pairs.append((sign * c, d))
    return DiagramCombination.from_diagrams(pairs, level)


def fmt_combination(c: DiagramCombination) -> str:
    if not c.terms:
        return "0"
    ordered = sorted(c.terms, key=lambda kc: (key_degree(kc[0]), kc[0]))
    return _join_terms((coef, _fmt_key(k)) for k, coef in ordered)


def _join_terms(items) -> str:
    out = ""
    for coef, body in items:
        sign = "-" if coef < 0 else "+"
        a = abs(coef)
        if body == "1":
            text = fmt_rational(a)
        else:
            text = body if a == 1 else f"{fmt_rational(a)}*{body}"
        out = (f"-{text}" if sign == "-" else text) if not out else f"{out} {sign} {text}"
    return out or "0"


# -- trees -----------------------------------------------------------------

def parse_tree(text: str, genus: int, column: int = 1) -> LabeledTree:
    text = text.strip()
    if not text.startswith("tree"):
        raise ParseError(f"expected a tree, got {text[:20]!r}", column)
    f = fields(text[4:], ("leaves", "shape"), column + 4)
    if "leaves" not in f or "shape" not in f:
        raise ParseError("tree needs leaves= and shape=", column)
    ltext, lcol = f["leaves"]
    if not (ltext.startswith("(") and ltext.endswith(")")):
        raise ParseError("leaves must be a parenthesized list", lcol)
    lat = SymplecticLattice(genus)
    labels = []
    for name in ltext[1:-1].split(","):
        try:
            labels.append(parse_class(lat, name))
        except InvalidArgument as e:
            raise ParseError(str(e), lcol) from None
    stext, scol = f["shape"]
    try:
        shape = ast.literal_eval(stext)
    except (ValueError, SyntaxError):
        raise ParseError(f"shape is not a nested tuple: {stext!r}", scol) from None
    try:
        return from_shape(shape, labels, genus)
    except (InvalidArgument, TypeError) as e:
        raise ParseError(f"bad tree: {e}", scol) from None


def parse_tree_combination(text: str, genus: int, column: int = 1) -> TreeCombination:
    total = TreeCombination(genus)
    for sign, term, col in split_terms(text):
        c, body = split_coefficient(term)
        total = total + TreeCombination.of(parse_tree(body, genus, column + col - 1), sign * c)
    return total


def fmt_tree_key(key, genus: int) -> str:
    vertices, edges, legs = graphs.decode(key)
    lat = SymplecticLattice(genus)
    partner = {}
    for a, b in edges:
        partner[a], partner[b] = b, a
    owner = {h: i for i, v in enumerate(vertices) for h in v}
    leg_label = dict(legs)
    names: list[str] = []

    def walk(d):
        # ``d`` is the dart on the far side of an edge from the parent
        if d in leg_label:
            names.append(lat.basis_name(leg_label[d]))
            return str(len(names) - 1)
        v = vertices[owner[d]]
        i = v.index(d)
        return "(" + walk(partner[v[(i + 1) % 3]]) + "," + walk(partner[v[(i + 2) % 3]]) + ")"

    if not vertices:
        a, b = legs
        walk(a[0]), walk(b[0])
        shape = "(0,1)"
    else:
        shape = "(" + ",".join(walk(partner[h]) for h in vertices[0]) + ")"
    return f"tree leaves=({','.join(names)}) shape={shape}"


def fmt_tree_combination(c: TreeCombination) -> str:
    if not c.terms:
        return "0"
    return _join_terms((coef, fmt_tree_key(k, c.genus)) for k, coef in c.terms)


# -- polynomial observables -------------------------------------------------

def parse_observable(text: str, genus: int, order: int, column: int = 1) -> PolynomialObservable:
    text = text.strip()
    if text.startswith("poly"):
        f = fields(text[4:].split("terms=", 1)[0], ("g",), column + 4)
        if "g" in f and parse_int(*f["g"]) != genus:
            raise ParseError("polynomial genus disagrees with g=", f["g"][1])
        if "terms=" not in text:
            raise ParseError("poly needs terms=", column)
        off = text.index("terms=") + len("terms=")
        return parse_observable(text[off:], genus, order, column + off)
    lat = SymplecticLattice(genus)
    acc: dict = {}
    for sign, term, col in split_terms(text):
        coeff = Fraction(sign)
        te = 0
        exps = [0] * (2 * genus)
        for factor in term.replace(" ", "").split("*"):
            m = re.fullmatch(r"x\[([ab]\d+)\](?:\^(\d+))?", factor)
            if m:
                try:
                    exps[lat.basis_index(m.group(1))] += int(m.group(2) or 1)
                except InvalidArgument as e:
                    raise ParseError(str(e), column + col - 1) from None
                continue
            m = re.fullmatch(r"t(?:\^(\d+))?", factor)
            if m:
                te += int(m.group(1) or 1)
                continue
            coeff *= parse_rational(factor, column + col - 1)
        key = (te, tuple(exps))
        acc[key] = acc.get(key, 0) + coeff
    return PolynomialObservable.from_dict(genus, order, acc)


def fmt_observable(p: PolynomialObservable) -> str:
    lat = SymplecticLattice(p.genus)
    items = []
    for (te, exps), c in sorted(p.terms, key=lambda mc: (mc[0][0], [-e for e in mc[0][1]])):
        factors = []
        if te:
            factors.append("t" if te == 1 else f"t^{te}")
        for i, e in enumerate(exps):
            if e:
                factors.append(f"x[{lat.basis_name(i)}]" + (f"^{e}" if e > 1 else ""))
        items.append((c, "*".join(factors) or "1"))
    return _join_terms(items)


# -- cobordisms and mapping classes ------------------------------------------

@dataclass(frozen=True)
class Word:
    """A signed word of twists along integral classes."""

    genus: int
    twists: tuple[str, ...]

    def mapping_class(self) -> MappingClass:
        return word_class(self.genus, self.twists)


def _matrix_literal(text: str, column: int):
    try:
        value = ast.literal_eval(text) if text else []
    except (ValueError, SyntaxError):
        raise ParseError(f"matrix must look like [[1,0],[0,1]]: {text!r}", column) from None
    if not isinstance(value, (list, tuple)) or not all(
            isinstance(r, (list, tuple)) and all(isinstance(x, int) for x in r) for r in value):
        raise ParseError("matrix must be a list of integer rows", column)
    return [list(r) for r in value]


def parse_cobordism_or_word(text: str, column: int = 1):
    text = text.strip()
    if text.startswith("word"):
        f = fields(text[4:], ("g", "twists"), column + 4)
        if "g" not in f:
            raise ParseError("word needs g=", column)
        g = parse_int(*f["g"])
        tw = f.get("twists", ("", column))[0]
        twists = tuple(t for t in tw.split(",") if t)
        w = Word(g, twists)
        try:
            w.mapping_class()
        except InvalidArgument as e:
            raise ParseError(str(e), f.get("twists", ("", column))[1]) from None
        return w
    if text.startswith("cobordism"):
        f = fields(text[9:], ("g", "rel", "mplus", "mminus"), column + 9)
        for k in ("g", "mplus", "mminus"):
            if k not in f:
                raise ParseError(f"cobordism needs {k}=", column)
        g = parse_int(*f["g"])
        rel = _matrix_literal(*f.get("rel", ("[]", column)))
        mp = _matrix_literal(*f["mplus"])
        mm = _matrix_literal(*f["mminus"])
        try:
            return HomologyCobordism.build(g, rel, mp, mm)
        except InvalidArgument as e:
            raise ParseError(f"inconsistent cobordism: {e}", column) from None
    raise ParseError("expected 'word ...' or 'cobordism ...'", column)


def _fmt_rows(rows) -> str:
    return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in rows) + "]"


def fmt_cobordism(c: HomologyCobordism) -> str:
    rel = _fmt_rows(c.presentation) if c.relations else "[]"
    return f"cobordism g={c.genus} rel={rel} mplus={_fmt_rows(c.m_plus)} mminus={_fmt_rows(c.m_minus)}"


def fmt_word(w: Word) -> str:
    return f"word g={w.genus} twists={','.join(w.twists)}"
