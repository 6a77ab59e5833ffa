"""Text grammar for words, equations, group descriptions and system files.

Words: identifiers for generators, ``^`` with a signed integer exponent,
``*`` or whitespace for products, ``[u, v, ...]`` for left-normed
commutators, ``1`` for the identity, ``?x`` for variables, ``(u, v)`` for
elements of direct and semidirect products, and ``rat(2/3, ...)`` for
rational vectors. Example: ``b^-1*c^-2*b*c^2``.

Group descriptions::

    free(b,c)
    cyclic(a,2)
    symmetric(3)
    rational(1)
    direct(free(b,c), rational(1))
    freeproduct(cyclic(s,2), cyclic(t,3))
    semidirect(free(b,c), cyclic(a,2), action{b->b^-1, c->c})
    surface(orientable, genus=2)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .eqsys import Const, Equation, EquationSystem, MixedWord, Var
from .errors import ParseError
from .freewords import IDENTITY, ReducedWord, gen
from .freewords import commutator as word_commutator
from .groups import (
    CyclicGroup,
    DirectProduct,
    FreeGroup,
    FreeProduct,
    Group,
    RationalVector,
    SemidirectProduct,
    SurfaceGroup,
    SymmetricGroup,
)

_TOKEN = re.compile(
    r"(?P<ws>[ \t]+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<arrow>->)"
    r"|(?P<op>[\^*\[\](),?=\-/{}:])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, line: int = 1) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1, text)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind if kind != "op" else m.group(), m.group(), line, pos + 1))
        pos = m.end()
    out.append(Token("eof", "", line, len(text) + 1))
    return out


# -- AST ------------------------------------------------------------------------

@dataclass(frozen=True)
class Node:
    kind: str  # one, gen, var, mul, pow, comm, tuple, rat
    args: tuple = ()
    tok: Token | None = None


class _Parser:
    def __init__(self, tokens: list[Token], text: str):
        self.toks = tokens
        self.i = 0
        self.text = text

    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.cur
        raise ParseError(msg, tok.line, tok.col, self.text)

    def take(self, kind: str) -> Token:
        if self.cur.kind != kind:
            want = "end of input" if kind == "eof" else repr(kind)
            got = "end of input" if self.cur.kind == "eof" else repr(self.cur.text)
            self.error(f"expected {want}, found {got}")
        tok = self.cur
        self.i += 1
        return tok

    def accept(self, kind: str) -> Token | None:
        if self.cur.kind == kind:
            return self.take(kind)
        return None

    def _starts_factor(self) -> bool:
        return self.cur.kind in ("ident", "int", "?", "[", "(")

    def product(self) -> Node:
        if not self._starts_factor():
            self.error("expected a word")
        parts = [self.factor()]
        while True:
            if self.accept("*"):
                parts.append(self.factor())
            elif self._starts_factor():
                parts.append(self.factor())
            else:
                break
        return parts[0] if len(parts) == 1 else Node("mul", tuple(parts))

    def exponent(self, caret: Token) -> int:
        neg = self.accept("-") is not None
        if self.cur.kind != "int":
            self.error("exponent must be an integer", caret)
        k = int(self.take("int").text)
        return -k if neg else k

    def factor(self) -> Node:
        node = self.atom()
        while self.cur.kind == "^":
            caret = self.take("^")
            node = Node("pow", (node, self.exponent(caret)), caret)
        return node

    def number(self) -> Fraction:
        neg = self.accept("-") is not None
        num = int(self.take("int").text)
        den = 1
        if self.accept("/"):
            den = int(self.take("int").text)
            if den == 0:
                self.error("zero denominator")
        value = Fraction(num, den)
        return -value if neg else value

    def atom(self) -> Node:
        tok = self.cur
        if tok.kind == "int":
            if tok.text != "1":
                self.error("only 1 may appear as a numeral in a word")
            self.i += 1
            return Node("one", (), tok)
        if tok.kind == "?":
            self.i += 1
            name = self.take("ident")
            return Node("var", (name.text,), tok)
        if tok.kind == "ident":
            self.i += 1
            if tok.text == "rat" and self.cur.kind == "(":
                self.take("(")
                vals = [self.number()]
                while self.accept(","):
                    vals.append(self.number())
                self.take(")")
                return Node("rat", tuple(vals), tok)
            return Node("gen", (tok.text,), tok)
        if tok.kind == "[":
            self.i += 1
            parts = [self.product()]
            while self.accept(","):
                parts.append(self.product())
            self.take("]")
            if len(parts) < 2:
                self.error("commutator needs at least two entries", tok)
            return Node("comm", tuple(parts), tok)
        if tok.kind == "(":
            self.i += 1
            parts = [self.product()]
            while self.accept(","):
                parts.append(self.product())
            self.take(")")
            return parts[0] if len(parts) == 1 else Node("tuple", tuple(parts), tok)
        if tok.kind == "eof":
            self.error("unexpected end of input")
        self.error(f"unexpected {tok.text!r}")


def parse_ast(text: str, line: int = 1) -> Node:
    p = _Parser(tokenize(text, line), text)
    node = p.product()
    p.take("eof")
    return node


# -- evaluation -------------------------------------------------------------------

def _err(node: Node, msg: str, text: str | None = None):
    tok = node.tok
    raise ParseError(msg, tok.line if tok else 1, tok.col if tok else 1, text)


def _word_eval(node: Node, names: dict[str, int], grow: bool) -> ReducedWord:
    k = node.kind
    if k == "one":
        return IDENTITY
    if k == "gen":
        name = node.args[0]
        if name not in names:
            if not grow:
                _err(node, f"unknown generator {name!r}")
            names[name] = len(names)
        return gen(names[name])
    if k == "mul":
        acc = IDENTITY
        for a in node.args:
            acc = acc * _word_eval(a, names, grow)
        return acc
    if k == "pow":
        return _word_eval(node.args[0], names, grow) ** node.args[1]
    if k == "comm":
        vals = [_word_eval(a, names, grow) for a in node.args]
        acc = vals[0]
        for v in vals[1:]:
            acc = word_commutator(acc, v)
        return acc
    if k == "var":
        _err(node, "variables are not allowed here")
    _err(node, f"{k} literal is not a free-group word")


def parse_word(text: str, names: Sequence[str] | None = None) -> tuple[ReducedWord, list[str]]:
    """Parse a free-group word.

    With ``names`` the alphabet is fixed; otherwise generators are numbered
    in order of first appearance. Returns the word and the alphabet.
    """
    fixed = names is not None
    table = {n: i for i, n in enumerate(names or ())}
    w = _word_eval(parse_ast(text), table, not fixed)
    alphabet = [None] * len(table)
    for n, i in table.items():
        alphabet[i] = n
    return w, alphabet


def _element_eval(node: Node, group: Group, constants: Mapping[str, Any]):
    k = node.kind
    if k == "one":
        return group.identity()
    if k == "gen":
        name = node.args[0]
        gens = group.generators()
        if name in gens:
            return gens[name]
        if name in constants:
            return constants[name]
        _err(node, f"unknown generator {name!r} for {group.describe()}")
    if k == "mul":
        acc = group.identity()
        for a in node.args:
            acc = group.mul(acc, _element_eval(a, group, constants))
        return acc
    if k == "pow":
        return group.power(_element_eval(node.args[0], group, constants), node.args[1])
    if k == "comm":
        vals = [_element_eval(a, group, constants) for a in node.args]
        acc = vals[0]
        for v in vals[1:]:
            acc = group.mul(group.mul(group.inv(acc), group.inv(v)), group.mul(acc, v))
        return acc
    if k == "tuple":
        comps = getattr(group, "components", None)
        if comps is None:
            _err(node, f"tuple literal not valid in {group.describe()}")
        factors = comps()
        if len(factors) != len(node.args):
            _err(node, f"expected {len(factors)} components")
        return tuple(_element_eval(a, f, constants) for a, f in zip(node.args, factors))
    if k == "rat":
        if not isinstance(group, RationalVector) or len(node.args) != group.dim:
            _err(node, f"rational literal not valid in {group.describe()}")
        return tuple(node.args)
    if k == "var":
        _err(node, "variables are not allowed here")
    _err(node, f"cannot evaluate {k}")


def parse_element(text: str, group: Group, constants: Mapping[str, Any] | None = None):
    return _element_eval(parse_ast(text), group, constants or {})


def _mixed_eval(node: Node, group: Group, constants: Mapping[str, Any]) -> MixedWord:
    k = node.kind
    if k == "var":
        return MixedWord.var(node.args[0])
    if k == "mul":
        acc = MixedWord()
        for a in node.args:
            acc = acc.mul(_mixed_eval(a, group, constants), group)
        return acc
    if k == "pow":
        return _mixed_eval(node.args[0], group, constants).power(node.args[1], group)
    if k == "comm":
        vals = [_mixed_eval(a, group, constants) for a in node.args]
        acc = vals[0]
        for v in vals[1:]:
            acc = acc.inverse(group).mul(v.inverse(group), group).mul(acc, group).mul(v, group)
        return acc
    return MixedWord.of(group, [Const(_element_eval(node, group, constants))])


def parse_mixed(text: str, group: Group, constants: Mapping[str, Any] | None = None) -> MixedWord:
    return _mixed_eval(parse_ast(text), group, constants or {})


def parse_equation(text: str, group: Group, line: int = 1, constants=None) -> Equation:
    p = _Parser(tokenize(text, line), text)
    lhs_node = p.product()
    p.take("=")
    rhs_node = p.product()
    p.take("eof")
    constants = constants or {}
    return Equation(_mixed_eval(lhs_node, group, constants), _element_eval(rhs_node, group, constants))


# -- group descriptions -------------------------------------------------------------

class _GroupParser(_Parser):
    def group(self) -> Group:
        name = self.take("ident")
        kind = name.text
        self.take("(")
        if kind == "free":
            names = [self.take("ident").text]
            while self.accept(","):
                names.append(self.take("ident").text)
            g: Group = FreeGroup(tuple(names))
        elif kind == "cyclic":
            gname = self.take("ident").text
            self.take(",")
            g = CyclicGroup(gname, int(self.take("int").text))
        elif kind == "symmetric":
            g = SymmetricGroup(int(self.take("int").text))
        elif kind == "rational":
            g = RationalVector(int(self.take("int").text))
        elif kind in ("direct", "freeproduct"):
            parts = [self.group()]
            while self.accept(","):
                parts.append(self.group())
            try:
                g = DirectProduct(tuple(parts)) if kind == "direct" else FreeProduct(tuple(parts))
            except ValueError as exc:
                self.error(str(exc), name)
        elif kind == "surface":
            orient = self.take("ident")
            if orient.text not in ("orientable", "nonorientable"):
                self.error("expected orientable or nonorientable", orient)
            self.take(",")
            key = self.take("ident")
            if key.text != "genus":
                self.error("expected genus=", key)
            self.take("=")
            g = SurfaceGroup(int(self.take("int").text), orient.text == "orientable")
        elif kind == "semidirect":
            free = self.group()
            self.take(",")
            acting = self.group()
            if not isinstance(free, FreeGroup) or not isinstance(acting, CyclicGroup):
                self.error("semidirect needs a free group acted on by a cyclic group", name)
            self.take(",")
            kw = self.take("ident")
            if kw.text != "action":
                self.error("expected action{...}", kw)
            self.take("{")
            images = {n: gen(i) for i, n in enumerate(free.names)}
            table = {n: i for i, n in enumerate(free.names)}
            while self.cur.kind != "}":
                src = self.take("ident")
                if src.text not in table:
                    self.error(f"unknown generator {src.text!r}", src)
                self.take("arrow")
                node = self.product()
                images[src.text] = _word_eval(node, table, False)
                if not self.accept(","):
                    break
            self.take("}")
            try:
                g = SemidirectProduct(free, acting, tuple(images[n] for n in free.names))
            except ValueError as exc:
                self.error(str(exc), name)
        else:
            self.error(f"unknown group kind {kind!r}", name)
        self.take(")")
        return g


def parse_group(text: str, line: int = 1) -> Group:
    p = _GroupParser(tokenize(text, line), text)
    g = p.group()
    p.take("eof")
    return g


# -- system files ---------------------------------------------------------------------

def parse_system_text(text: str) -> EquationSystem:
    """Parse a system file: ``group:`` header, optional ``variables:``, one equation per line."""
    group = None
    variables = None
    equations = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("group:"):
            offset = line.index("group:") + len("group:")
            try:
                group = parse_group(line[offset:], lineno)
            except ParseError as exc:
                raise ParseError(exc.message, lineno, exc.column + offset, raw) from None
            continue
        if stripped.startswith("variables:"):
            body = stripped[len("variables:"):]
            variables = [v.strip().lstrip("?") for v in body.split(",") if v.strip()]
            continue
        if group is None:
            raise ParseError("system file must start with a group: header", lineno, 1, raw)
        equations.append(parse_equation(line, group, lineno))
    if group is None:
        raise ParseError("missing group: header", 1, 1, text)
    return EquationSystem.build(group, equations, variables)


def parse_system(path) -> EquationSystem:
    with open(path, encoding="utf-8") as fh:
        return parse_system_text(fh.read())


__all__ = [
    "Token",
    "tokenize",
    "parse_ast",
    "parse_word",
    "parse_element",
    "parse_mixed",
    "parse_equation",
    "parse_group",
    "parse_system",
    "parse_system_text",
    "Var",
]
