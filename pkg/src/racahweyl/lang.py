"""A small expression language over generators and named operators.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' '-'? INT)?
    atom   := INT ('/' INT)? | IDENT | IDENT '(' args ')' | '(' expr ')'
            | '-' factor | 'comm' '(' expr ',' expr ')' | 'acomm' '(' expr ',' expr ')'
    args   := arg (',' arg)*
    arg    := INT | IDENT | '{' INT (',' INT)* '}'

Identifiers are ``x1..xn``, ``d1..dn``, declared parameters and the names in
:data:`racahweyl.realizations.REGISTRY`. Negative powers are accepted only for
invertible Laurent monomials such as ``x1^-2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from . import realizations as R
from .expr import Atom, Op, Prod, Sum, acomm, comm
from .params import ParamPoly
from .weyl import WeylElement

GENERATOR = re.compile(r"([xd])([0-9]+)$")
RESERVED = {"comm", "acomm"}
MAX_POWER = 64
MAX_DIGITS = 1000


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class EvalError(ParseError):
    pass


@dataclass
class SessionConfig:
    n: int = 6
    params: tuple = ()
    fmt: str = "text"

    def __post_init__(self):
        self.params = tuple(self.params)
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if len(set(self.params)) != len(self.params):
            raise ValueError("parameter names must be distinct")
        for p in self.params:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", p):
                raise ValueError(f"bad parameter name {p!r}")
            if GENERATOR.match(p) or p in R.REGISTRY or p in RESERVED:
                raise ValueError(f"parameter {p!r} clashes with a generator or operator name")
        if self.fmt not in ("text", "json"):
            raise ValueError("format must be text or json")


# -- tokens -------------------------------------------------------------------

@dataclass
class Token:
    kind: str  # INT IDENT OP END
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"\s*(?:(?P<INT>[0-9]+)|(?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)|(?P<OP>[-+*^/(),{}]))")


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while True:
        # advance over whitespace, tracking lines
        while pos < len(text) and text[pos].isspace():
            if text[pos] == "\n":
                line += 1
                line_start = pos + 1
            pos += 1
        if pos >= len(text):
            tokens.append(Token("END", "", line, pos - line_start + 1))
            return tokens
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "INT" and len(m.group(kind)) > MAX_DIGITS:
            raise ParseError("integer literal too long", line, m.start(kind) - line_start + 1)
        tokens.append(Token(kind, m.group(kind), line, m.start(kind) - line_start + 1))
        pos = m.end()


# -- AST ------------------------------------------------------------------------

@dataclass
class Node:
    line: int = field(default=0, kw_only=True)
    col: int = field(default=0, kw_only=True)


@dataclass
class Num(Node):
    value: Fraction


@dataclass
class Param(Node):
    name: str


@dataclass
class Gen(Node):
    kind: str  # "x" or "d"
    index: int


@dataclass
class Ref(Node):
    name: str
    args: tuple = ()


@dataclass
class BinOp(Node):
    op: str
    left: "Expr"
    right: "Expr"


@dataclass
class Pow(Node):
    base: "Expr"
    exp: int


@dataclass
class Neg(Node):
    operand: "Expr"


@dataclass
class Comm(Node):
    left: "Expr"
    right: "Expr"
    anti: bool = False


Expr = Union[Num, Param, Gen, Ref, BinOp, Pow, Neg, Comm]


# -- parser -----------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, cfg: SessionConfig):
        self.tokens = tokenize(text)
        self.i = 0
        self.cfg = cfg

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def take(self, text: str | None = None, kind: str | None = None) -> Token:
        tok = self.tok
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            want = repr(text) if text is not None else kind
            got = "end of input" if tok.kind == "END" else repr(tok.text)
            raise self.error(f"expected {want}, found {got}")
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text == text

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "END":
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.at("+") or self.at("-"):
            tok = self.take()
            node = BinOp(tok.text, node, self.term(), line=tok.line, col=tok.col)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.at("*"):
            tok = self.take()
            node = BinOp("*", node, self.factor(), line=tok.line, col=tok.col)
        return node

    def factor(self) -> Expr:
        node = self.atom()
        if self.at("^"):
            tok = self.take()
            sign = 1
            if self.at("-"):
                self.take()
                sign = -1
            exp_tok = self.take(kind="INT")
            if int(exp_tok.text) > MAX_POWER:
                raise self.error(f"exponent larger than {MAX_POWER}", exp_tok)
            node = Pow(node, sign * int(exp_tok.text), line=tok.line, col=tok.col)
        return node

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "INT":
            self.take()
            value = Fraction(int(tok.text))
            if self.at("/"):
                self.take()
                den = self.take(kind="INT")
                if int(den.text) == 0:
                    raise self.error("division by zero", den)
                value = Fraction(int(tok.text), int(den.text))
            return Num(value, line=tok.line, col=tok.col)
        if self.at("("):
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if self.at("-"):
            self.take()
            return Neg(self.factor(), line=tok.line, col=tok.col)
        if tok.kind == "IDENT":
            return self.ident()
        if tok.kind == "END":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {tok.text!r}")

    def ident(self) -> Expr:
        tok = self.take(kind="IDENT")
        name = tok.text
        if name in RESERVED:
            self.take("(")
            left = self.expr()
            self.take(",")
            right = self.expr()
            self.take(")")
            return Comm(left, right, anti=(name == "acomm"), line=tok.line, col=tok.col)
        m = GENERATOR.match(name)
        if m and not self.at("("):
            index = int(m.group(2))
            if not 1 <= index <= self.cfg.n:
                raise ParseError(f"generator {name} out of range for n={self.cfg.n}", tok.line, tok.col)
            return Gen(m.group(1), index, line=tok.line, col=tok.col)
        if name in self.cfg.params and not self.at("("):
            return Param(name, line=tok.line, col=tok.col)
        if name not in R.REGISTRY:
            raise ParseError(f"unknown identifier {name!r}", tok.line, tok.col)
        args = self.args() if self.at("(") else ()
        node = Ref(name, args, line=tok.line, col=tok.col)
        _validate_ref(node, self.cfg)
        return node

    def args(self) -> tuple:
        self.take("(")
        out = [self.arg()]
        while self.at(","):
            self.take()
            out.append(self.arg())
        self.take(")")
        return tuple(out)

    def arg(self):
        tok = self.tok
        if tok.kind == "INT":
            self.take()
            return int(tok.text), tok.text
        if tok.kind == "IDENT":
            self.take()
            return tok.text, tok.text
        if self.at("{"):
            self.take()
            vals = [int(self.take(kind="INT").text)]
            while self.at(","):
                self.take()
                vals.append(int(self.take(kind="INT").text))
            self.take("}")
            return tuple(vals), None
        raise self.error("expected an integer, a name or an index set")


def _coerce_args(node: Ref) -> list:
    entry = R.REGISTRY[node.name]
    kinds = list(entry.args)
    required = [k for k in kinds if not k.endswith("?")]
    if not len(required) <= len(node.args) <= len(kinds):
        raise ParseError(f"{node.name} takes {len(required)}"
                         + (f"-{len(kinds)}" if len(kinds) != len(required) else "")
                         + f" argument(s), got {len(node.args)}", node.line, node.col)
    out = []
    for kind, (value, text) in zip(kinds, node.args):
        kind = kind.rstrip("?")
        if kind == "int":
            if not isinstance(value, int):
                raise ParseError(f"{node.name}: expected an integer argument", node.line, node.col)
            out.append(value)
        elif kind == "set":
            if isinstance(value, int):  # digit shorthand: 1234 -> {1,2,3,4}
                value = tuple(int(ch) for ch in text)
            if not isinstance(value, tuple):
                raise ParseError(f"{node.name}: expected an index set", node.line, node.col)
            out.append(value)
        elif kind == "word":
            if not isinstance(value, str):
                raise ParseError(f"{node.name}: expected a name argument", node.line, node.col)
            out.append(value)
    return out


def _validate_ref(node: Ref, cfg: SessionConfig) -> None:
    entry = R.REGISTRY[node.name]
    if entry.dims and cfg.n not in entry.dims:
        raise ParseError(f"{node.name} needs n in {list(entry.dims)}, session has n={cfg.n}", node.line, node.col)
    missing = [p for p in entry.params if p not in cfg.params]
    if missing:
        raise ParseError(f"{node.name} needs declared parameters {', '.join(missing)}", node.line, node.col)
    _build_ref(node, cfg)


def _build_ref(node: Ref, cfg: SessionConfig) -> Op:
    args = _coerce_args(node)
    try:
        return R.REGISTRY[node.name].build(cfg.n, *args)
    except (ValueError, IndexError, TypeError) as exc:
        raise ParseError(f"{node.name}: {exc}", node.line, node.col) from None


def parse_expr(text: str, cfg: SessionConfig | None = None) -> Expr:
    try:
        return _Parser(text, cfg or SessionConfig()).parse()
    except RecursionError:
        raise ParseError("expression nested too deeply", 1, 1) from None


# -- evaluation ---------------------------------------------------------------------

def build_op(node: Expr, cfg: SessionConfig) -> Op:
    """Expression tree for ``node``; symbolic and oracle evaluation both start here."""
    n = cfg.n
    if isinstance(node, Num):
        return Atom(WeylElement.constant(n, node.value))
    if isinstance(node, Param):
        return Atom(WeylElement.constant(n, ParamPoly.symbol(node.name)), node.name)
    if isinstance(node, Gen):
        if node.kind == "x":
            return Atom(WeylElement.x(n, node.index), f"x{node.index}")
        return Atom(WeylElement.d(n, node.index), f"d{node.index}")
    if isinstance(node, Ref):
        return _build_ref(node, cfg)
    if isinstance(node, Neg):
        return -build_op(node.operand, cfg)
    if isinstance(node, BinOp):
        # walk the left spine iteratively: long rendered sums must not recurse per term
        additive = node.op in ("+", "-")
        chain = []
        while isinstance(node, BinOp) and (node.op in ("+", "-")) == additive:
            chain.append((node.op, node.right))
            node = node.left
        ops = [build_op(node, cfg)]
        for op, right in reversed(chain):
            r = build_op(right, cfg)
            ops.append(-r if op == "-" else r)
        return Sum(ops) if additive else Prod(ops)
    if isinstance(node, Pow):
        base = build_op(node.base, cfg)
        if node.exp < 0:
            try:
                inv = Atom(base.element.inverse())
            except ValueError as exc:
                raise EvalError(str(exc), node.line, node.col) from None
            return inv ** (-node.exp)
        return base ** node.exp
    if isinstance(node, Comm):
        a, b = build_op(node.left, cfg), build_op(node.right, cfg)
        return acomm(a, b) if node.anti else comm(a, b)
    raise TypeError(f"not an expression node: {node!r}")


def eval_expr(node: Expr, cfg: SessionConfig | None = None) -> WeylElement:
    return build_op(node, cfg or SessionConfig()).element


def evaluate(text: str, cfg: SessionConfig | None = None) -> WeylElement:
    cfg = cfg or SessionConfig()
    return eval_expr(parse_expr(text, cfg), cfg)
