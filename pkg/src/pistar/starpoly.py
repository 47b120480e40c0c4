"""*-polynomials in symmetric/skew variables and the text syntax for them.

Grammar (whitespace between tokens is ignored)::

    polynomial := term (("+"|"-") term)*
    term       := [coeff] factor {factor}
    coeff      := ["-"] digits ["/" digits]
    factor     := variable | "[" polynomial ("," polynomial)+ "]"
                | "{" polynomial "," polynomial "}" | "(" polynomial ")"
    variable   := "x" digits ("+"|"-")

Commutators are left-normed, ``[a,b,c] = [[a,b],c]``; ``{a,b} = ab + ba``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .linalg import _norm, format_rational, rational


@dataclass(frozen=True, order=True)
class SignedVar:
    index: int
    sign: str  # "+" or "-"

    def __post_init__(self):
        if self.index < 1 or self.sign not in "+-" or len(self.sign) != 1:
            raise ValueError(f"bad signed variable x{self.index}{self.sign}")

    def __str__(self) -> str:
        return f"x{self.index}{self.sign}"


Monomial = tuple  # tuple[SignedVar, ...]


# -- AST -------------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    var: SignedVar


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Commutator:
    args: tuple

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("a commutator needs at least two arguments")


@dataclass(frozen=True)
class Jordan:
    left: object
    right: object


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (coefficient, node)


PolyAst = Union[Var, Product, Commutator, Jordan, Sum]


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))
        self.position = position


# -- tokenizer and parser -----------------------------------------------------------------

_PUNCT = set("[]{}(),+-/")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "x":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("variable index expected", j, text)
            if j >= n or text[j] not in "+-":
                raise ParseError("variable sign (+ or -) expected", j, text)
            toks.append(("var", text[i:j + 1], i))
            i = j + 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", text[i:j], i))
            i = j
            continue
        if ch in _PUNCT:
            toks.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unknown token {ch!r}", i, text)
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.pos = 0

    def peek(self) -> str:
        return self.toks[self.pos][0]

    def take(self, kind: str):
        tok = self.toks[self.pos]
        if tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, found {got}", tok[2], self.text)
        self.pos += 1
        return tok

    def polynomial(self):
        terms = [self.term(negate=False)]
        while self.peek() in ("+", "-"):
            op = self.take(self.peek())[0]
            terms.append(self.term(negate=(op == "-")))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self, negate: bool):
        coeff = Fraction(1)
        if self.peek() == "-":
            self.take("-")
            coeff = -coeff
        if self.peek() == "num":
            num = Fraction(int(self.take("num")[1]))
            if self.peek() == "/":
                self.take("/")
                den = int(self.take("num")[1])
                if den == 0:
                    raise ParseError("zero denominator", self.toks[self.pos - 1][2], self.text)
                num /= den
            coeff *= num
        factors = [self.factor()]
        while self.peek() in ("var", "[", "{", "("):
            factors.append(self.factor())
        node = factors[0] if len(factors) == 1 else Product(tuple(factors))
        if negate:
            coeff = -coeff
        return (_norm(coeff), node)

    def factor(self):
        kind = self.peek()
        if kind == "var":
            text = self.take("var")[1]
            return Var(SignedVar(int(text[1:-1]), text[-1]))
        if kind == "[":
            self.take("[")
            args = [self.polynomial()]
            while self.peek() == ",":
                self.take(",")
                args.append(self.polynomial())
            if len(args) < 2:
                raise ParseError("commutator needs at least two arguments",
                                 self.toks[self.pos][2], self.text)
            self.take("]")
            return Commutator(tuple(args))
        if kind == "{":
            self.take("{")
            left = self.polynomial()
            self.take(",")
            right = self.polynomial()
            self.take("}")
            return Jordan(left, right)
        if kind == "(":
            self.take("(")
            inner = self.polynomial()
            self.take(")")
            return inner
        tok = self.toks[self.pos]
        got = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"factor expected, found {got}", tok[2], self.text)


def parse(text: str) -> PolyAst:
    if text.strip() == "0":
        return Sum(())  # the zero polynomial, as produced by render
    p = _Parser(text)
    node = p.polynomial()
    p.take("end")
    return node


# -- normal form ----------------------------------------------------------------------------

class StarPolynomial:
    """Rational combination of monomials in signed variables."""

    __slots__ = ("terms", "ast")

    def __init__(self, terms: Mapping | None = None, ast=None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = rational(c)
            if c:
                clean[tuple(mono)] = c
        self.terms: dict = clean
        self.ast = ast

    @classmethod
    def monomial(cls, word: Iterable[SignedVar], coeff=1) -> "StarPolynomial":
        return cls({tuple(word): coeff})

    def __add__(self, other: "StarPolynomial") -> "StarPolynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return StarPolynomial(out)

    def __neg__(self) -> "StarPolynomial":
        return StarPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "StarPolynomial") -> "StarPolynomial":
        return self + (-other)

    def scale(self, c) -> "StarPolynomial":
        c = rational(c)
        return StarPolynomial({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other: "StarPolynomial") -> "StarPolynomial":
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = m1 + m2
                out[key] = out.get(key, 0) + c1 * c2
        return StarPolynomial(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StarPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def slots(self) -> list[SignedVar]:
        return sorted({v for m in self.terms for v in m})

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def rename(self, mapping: Mapping[SignedVar, SignedVar]) -> "StarPolynomial":
        return StarPolynomial({tuple(mapping.get(v, v) for v in m): c
                               for m, c in self.terms.items()})

    def render(self) -> str:
        return render(self)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"StarPolynomial({render(self)!r})"


def expand(node) -> StarPolynomial:
    """Normal form of an AST; the AST is kept as evaluation plan."""
    poly = _expand(node)
    return StarPolynomial(poly.terms, ast=node)


def _expand(node) -> StarPolynomial:
    if isinstance(node, Var):
        return StarPolynomial.monomial((node.var,))
    if isinstance(node, Product):
        out = _expand(node.factors[0])
        for f in node.factors[1:]:
            out = out * _expand(f)
        return out
    if isinstance(node, Commutator):
        out = _expand(node.args[0])
        for arg in node.args[1:]:
            b = _expand(arg)
            out = out * b - b * out
        return out
    if isinstance(node, Jordan):
        a, b = _expand(node.left), _expand(node.right)
        return a * b + b * a
    if isinstance(node, Sum):
        out = StarPolynomial()
        for c, sub in node.terms:
            out = out + _expand(sub).scale(c)
        return out
    raise TypeError(f"not a polynomial node: {node!r}")


def poly(text: str) -> StarPolynomial:
    """Parse and expand in one step."""
    return expand(parse(text))


def check_multilinear(p: StarPolynomial) -> tuple[bool, tuple[SignedVar, ...]]:
    slot_sets = set()
    for mono in p.terms:
        if len(set(mono)) != len(mono):
            return False, tuple(sorted(set(mono)))
        slot_sets.add(frozenset(mono))
    if len(slot_sets) > 1:
        return False, tuple(sorted(set().union(*slot_sets)))
    slots = tuple(sorted(next(iter(slot_sets)))) if slot_sets else ()
    return True, slots


def render(p: StarPolynomial) -> str:
    """Normal-form text: sorted monomials, explicit rational coefficients."""
    if not p.terms:
        return "0"
    parts = []
    for mono, c in p.sorted_terms():
        word = " ".join(str(v) for v in mono)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        coeff = "" if mag == 1 else format_rational(mag) + " "
        parts.append(f"{sign} {coeff}{word}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[1:]


def render_ast(node) -> str:
    """Text for an AST, parseable back to the same tree."""
    if isinstance(node, Var):
        return str(node.var)
    if isinstance(node, Product):
        return " ".join(_render_factor(f) for f in node.factors)
    if isinstance(node, Commutator):
        return "[" + ", ".join(render_ast(a) for a in node.args) + "]"
    if isinstance(node, Jordan):
        return "{" + render_ast(node.left) + ", " + render_ast(node.right) + "}"
    if isinstance(node, Sum):
        if not node.terms:
            return "0"
        out = []
        for i, (c, sub) in enumerate(node.terms):
            body = _render_factor(sub)
            mag = "" if abs(c) == 1 else format_rational(abs(c)) + " "
            if i == 0:
                out.append(("-" if c < 0 else "") + mag + body)
            else:
                out.append(("- " if c < 0 else "+ ") + mag + body)
        return " ".join(out)
    raise TypeError(f"not a polynomial node: {node!r}")


def _render_factor(node) -> str:
    if isinstance(node, Sum):
        return "(" + render_ast(node) + ")"
    return render_ast(node)
