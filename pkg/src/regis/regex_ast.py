"""Core regular-expression syntax trees, text formats, and pattern matching.

The expression language is the six-constructor regex grammar: the empty
language ``0``, the empty string ``1``, single alphabet symbols, alternation
``+``, concatenation (juxtaposition), and Kleene star ``*``.  Patterns extend
the grammar with named variables (``?x`` in rule-file syntax) and are used by
the rewrite machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union

RESERVED_CHARS = frozenset("01()+*.")


class RegexSyntaxError(ValueError):
    """Malformed concrete syntax; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnboundVariableError(KeyError):
    """A pattern variable had no binding at substitution time."""


@dataclass(frozen=True)
class Empty:
    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Epsilon:
    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Char:
    sym: str

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Alt:
    left: "Pattern"
    right: "Pattern"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Cat:
    left: "Pattern"
    right: "Pattern"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Star:
    inner: "Pattern"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return to_text(self)


Regex = Union[Empty, Epsilon, Char, Alt, Cat, Star]
Pattern = Union[Empty, Epsilon, Char, Alt, Cat, Star, Var]
Binding = dict[str, Regex]

EMPTY = Empty()
EPSILON = Epsilon()


def is_alphabet_symbol(c: str) -> bool:
    return len(c) == 1 and c.isprintable() and not c.isspace() and c not in RESERVED_CHARS


# ---------------------------------------------------------------------------
# Parsing
#
# Precedence (loosest to tightest): alternation, concatenation, star.
# Both binary operators parse left-associatively; the printer relies on that.


class _Parser:
    def __init__(self, text: str, allow_vars: bool = False):
        self.text = text
        self.i = 0
        self.allow_vars = allow_vars

    def peek(self) -> Optional[str]:
        return self.text[self.i] if self.i < len(self.text) else None

    def error(self, message: str) -> RegexSyntaxError:
        return RegexSyntaxError(message, self.i)

    def parse(self) -> Pattern:
        node = self.alt()
        if self.i != len(self.text):
            raise self.error(f"unexpected character {self.text[self.i]!r}")
        return node

    def alt(self) -> Pattern:
        node = self.cat()
        while self.peek() == "+":
            self.i += 1
            node = Alt(node, self.cat())
        return node

    def cat(self) -> Pattern:
        node = self.star()
        while True:
            c = self.peek()
            if c == ".":
                self.i += 1
                node = Cat(node, self.star())
            elif c is not None and c not in ")+":
                node = Cat(node, self.star())
            else:
                return node

    def star(self) -> Pattern:
        node = self.atom()
        while self.peek() == "*":
            self.i += 1
            node = Star(node)
        return node

    def atom(self) -> Pattern:
        c = self.peek()
        if c is None:
            raise self.error("unexpected end of input")
        if c == "(":
            self.i += 1
            node = self.alt()
            if self.peek() != ")":
                raise self.error("missing closing parenthesis")
            self.i += 1
            return node
        if c == "0":
            self.i += 1
            return EMPTY
        if c == "1":
            self.i += 1
            return EPSILON
        if c == "?" and self.allow_vars:
            self.i += 1
            start = self.i
            while (ch := self.peek()) is not None and (ch.isalnum() or ch == "_"):
                self.i += 1
            if self.i == start:
                raise self.error("expected variable name after '?'")
            return Var(self.text[start : self.i])
        if is_alphabet_symbol(c):
            self.i += 1
            return Char(c)
        raise self.error(f"unexpected character {c!r}")


def parse(text: str) -> Regex:
    """Parse concrete infix syntax into a Regex tree."""
    node = _Parser(text).parse()
    return node  # no Vars possible without allow_vars


def parse_pattern(text: str) -> Pattern:
    """Parse infix syntax extended with ``?name`` variables."""
    return _Parser(text, allow_vars=True).parse()


# ---------------------------------------------------------------------------
# Printing

_PREC_ALT = 1
_PREC_CAT = 2
_PREC_STAR = 3
_PREC_ATOM = 4


def _prec(r: Pattern) -> int:
    if isinstance(r, Alt):
        return _PREC_ALT
    if isinstance(r, Cat):
        return _PREC_CAT
    if isinstance(r, Star):
        return _PREC_STAR
    return _PREC_ATOM


def _fmt(r: Pattern, min_prec: int, out: list[str]) -> None:
    paren = _prec(r) < min_prec
    if paren:
        out.append("(")
    if isinstance(r, Empty):
        out.append("0")
    elif isinstance(r, Epsilon):
        out.append("1")
    elif isinstance(r, Char):
        out.append(r.sym)
    elif isinstance(r, Var):
        out.append("?" + r.name)
    elif isinstance(r, Alt):
        _fmt(r.left, _PREC_ALT, out)
        out.append("+")
        _fmt(r.right, _PREC_CAT, out)
    elif isinstance(r, Cat):
        _fmt(r.left, _PREC_CAT, out)
        _fmt(r.right, _PREC_STAR, out)
    elif isinstance(r, Star):
        _fmt(r.inner, _PREC_ATOM, out)
        out.append("*")
    else:
        raise TypeError(f"not a regex node: {r!r}")


def to_text(r: Pattern) -> str:
    """Canonical minimally parenthesised text; round-trips through parse()."""
    out: list[str] = []
    _fmt(r, _PREC_ALT, out)
    return "".join(out)


# ---------------------------------------------------------------------------
# S-expression format

def to_sexpr(r: Pattern) -> str:
    if isinstance(r, Empty):
        return "0"
    if isinstance(r, Epsilon):
        return "1"
    if isinstance(r, Char):
        return r.sym
    if isinstance(r, Var):
        return "?" + r.name
    if isinstance(r, Alt):
        return f"(+ {to_sexpr(r.left)} {to_sexpr(r.right)})"
    if isinstance(r, Cat):
        return f"(. {to_sexpr(r.left)} {to_sexpr(r.right)})"
    if isinstance(r, Star):
        return f"(* {to_sexpr(r.inner)})"
    raise TypeError(f"not a regex node: {r!r}")


def parse_sexpr(text: str) -> Regex:
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def next_token() -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise RegexSyntaxError("unexpected end of s-expression", len(text))
        tok = tokens[pos]
        pos += 1
        return tok

    def expr() -> Regex:
        tok = next_token()
        if tok == "(":
            op = next_token()
            if op == "+":
                node: Regex = Alt(expr(), expr())
            elif op == ".":
                node = Cat(expr(), expr())
            elif op == "*":
                node = Star(expr())
            else:
                raise RegexSyntaxError(f"unknown operator {op!r}", pos)
            if next_token() != ")":
                raise RegexSyntaxError("missing ')'", pos)
            return node
        if tok == "0":
            return EMPTY
        if tok == "1":
            return EPSILON
        if is_alphabet_symbol(tok):
            return Char(tok)
        raise RegexSyntaxError(f"unexpected token {tok!r}", pos)

    node = expr()
    if pos != len(tokens):
        raise RegexSyntaxError("trailing input after s-expression", pos)
    return node


def parse_auto(text: str) -> Regex:
    """Parse either infix or s-expression input, sniffing the format."""
    stripped = text.strip()
    if stripped.startswith("(") and len(stripped) > 1 and stripped[1:].lstrip()[:1] in ("+", ".", "*"):
        return parse_sexpr(stripped)
    return parse(stripped)


# ---------------------------------------------------------------------------
# Structural measures and pattern operations

def height(r: Pattern) -> int:
    """Tree height with leaves at 0."""
    if isinstance(r, (Empty, Epsilon, Char, Var)):
        return 0
    if isinstance(r, Star):
        return 1 + height(r.inner)
    return 1 + max(height(r.left), height(r.right))


def subexprs(r: Regex) -> set[Regex]:
    """All subtrees of r, including r itself, deduplicated structurally."""
    seen: set[Regex] = set()

    def walk(node: Regex) -> None:
        if node in seen:
            return
        seen.add(node)
        if isinstance(node, Star):
            walk(node.inner)
        elif isinstance(node, (Alt, Cat)):
            walk(node.left)
            walk(node.right)

    walk(r)
    return seen


def iter_subexprs_postorder(r: Regex) -> Iterator[Regex]:
    """Subtrees of r in deterministic post-order, deduplicated."""
    seen: set[Regex] = set()

    def walk(node: Regex) -> Iterator[Regex]:
        if node in seen:
            return
        if isinstance(node, Star):
            yield from walk(node.inner)
        elif isinstance(node, (Alt, Cat)):
            yield from walk(node.left)
            yield from walk(node.right)
        if node not in seen:
            seen.add(node)
            yield node

    return walk(r)


def alphabet_of(r: Regex) -> list[str]:
    """Sorted list of symbols appearing in r."""
    return sorted({s.sym for s in subexprs(r) if isinstance(s, Char)})


def pattern_vars(p: Pattern) -> set[str]:
    if isinstance(p, Var):
        return {p.name}
    if isinstance(p, Star):
        return pattern_vars(p.inner)
    if isinstance(p, (Alt, Cat)):
        return pattern_vars(p.left) | pattern_vars(p.right)
    return set()


def match_pattern(p: Pattern, r: Regex) -> Optional[Binding]:
    """Match p against the root of r; a repeated variable must bind equal trees."""
    binding: Binding = {}

    def go(pat: Pattern, node: Regex) -> bool:
        if isinstance(pat, Var):
            bound = binding.get(pat.name)
            if bound is None:
                binding[pat.name] = node
                return True
            return bound == node
        if isinstance(pat, (Empty, Epsilon)):
            return type(pat) is type(node)
        if isinstance(pat, Char):
            return isinstance(node, Char) and node.sym == pat.sym
        if isinstance(pat, Star):
            return isinstance(node, Star) and go(pat.inner, node.inner)
        if isinstance(pat, Alt):
            return isinstance(node, Alt) and go(pat.left, node.left) and go(pat.right, node.right)
        if isinstance(pat, Cat):
            return isinstance(node, Cat) and go(pat.left, node.left) and go(pat.right, node.right)
        raise TypeError(f"not a pattern node: {pat!r}")

    return binding if go(p, r) else None


def substitute(p: Pattern, m: Binding) -> Regex:
    """Replace every variable in p by its binding."""
    if isinstance(p, Var):
        try:
            return m[p.name]
        except KeyError:
            raise UnboundVariableError(p.name) from None
    if isinstance(p, (Empty, Epsilon, Char)):
        return p
    if isinstance(p, Star):
        return Star(substitute(p.inner, m))
    if isinstance(p, Alt):
        return Alt(substitute(p.left, m), substitute(p.right, m))
    if isinstance(p, Cat):
        return Cat(substitute(p.left, m), substitute(p.right, m))
    raise TypeError(f"not a pattern node: {p!r}")
