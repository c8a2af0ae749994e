"""Group and bound expressions for the command line.

Grammar (whitespace is ignored between tokens)::

    expr  := "gens@" PATH | NAME "(" [arg ("," arg)*] ")"
    arg   := [NAME "="] (expr | NUMBER)
    NUMBER:= INT ["/" INT]

Errors carry the byte offset of the offending token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Union

from . import constructions as C
from .arith import is_prime
from .bounds import f_bound, h_p, i_bound, thmC_bound
from .engine import DEFAULT_CAP, FiniteGroup, closure
from .exact import ExactBound, eb_from_integer
from .serialize import load


class ExprError(ValueError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


Value = Union[int, Fraction, "Call"]


@dataclass
class Call:
    name: str
    offset: int
    args: list[Value] = field(default_factory=list)
    kwargs: dict[str, Value] = field(default_factory=dict)
    path: str | None = None

    def __str__(self) -> str:
        if self.path is not None:
            return f"gens@{self.path}"
        parts = [str(a) for a in self.args] + [f"{k}={v}" for k, v in self.kwargs.items()]
        return f"{self.name}({','.join(parts)})"


_TOKEN = re.compile(r"(?:(?P<gens>gens@(?P<path>[^\s,()]+))|(?P<name>[A-Za-z_]\w*)|(?P<num>\d+)|(?P<punct>[(),=/]))")


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        while True:
            while self.pos < len(text) and text[self.pos].isspace():
                self.pos += 1
            if self.pos == len(text):
                break
            m = _TOKEN.match(text, self.pos)
            offset = len(text[: self.pos].encode())
            if not m:
                raise ExprError(f"unexpected character {text[self.pos]!r}", offset)
            kind = next(k for k in ("gens", "name", "num", "punct") if m.group(k) is not None)
            value = m.group("path") if kind == "gens" else m.group(kind)
            self.tokens.append((kind, value, offset))
            self.pos = m.end()
        self.i = 0
        self.end = len(text.encode())

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", "", self.end)

    def take(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or {"name": "a constructor name", "num": "a number"}.get(kind, kind)
            got = tok[1] or "end of input"
            raise ExprError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Call:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "eof":
            raise ExprError(f"trailing input {tok[1]!r}", tok[2])
        return node

    def expr(self) -> Call:
        tok = self.peek()
        if tok[0] == "gens":
            self.i += 1
            return Call("gens", tok[2], path=tok[1])
        name = self.take("name")
        node = Call(name[1], name[2])
        self.take("punct", "(")
        if self.peek()[1] == ")":
            self.i += 1
            return node
        while True:
            key = None
            if self.peek()[0] == "name" and self.i + 1 < len(self.tokens) and self.tokens[self.i + 1][1] == "=":
                key = self.take("name")
                self.take("punct", "=")
            val = self.value()
            if key is None:
                if node.kwargs:
                    raise ExprError("positional argument after keyword", self.tokens[self.i - 1][2])
                node.args.append(val)
            else:
                if key[1] in node.kwargs:
                    raise ExprError(f"repeated keyword {key[1]!r}", key[2])
                node.kwargs[key[1]] = val
            tok = self.peek()
            self.i += 1
            if tok[1] == ")" and tok[0] == "punct":
                return node
            if tok[1] != "," or tok[0] != "punct":
                raise ExprError(f"expected ',' or ')', found {tok[1] or 'end of input'!r}", tok[2])

    def value(self) -> Value:
        tok = self.peek()
        if tok[0] == "num":
            self.i += 1
            if self.peek()[1] == "/":
                self.i += 1
                den = self.take("num")
                if int(den[1]) == 0:
                    raise ExprError("zero denominator", den[2])
                return Fraction(int(tok[1]), int(den[1]))
            return int(tok[1])
        return self.expr()


def parse(text: str) -> Call:
    return _Parser(text).parse()


# --- evaluation ----------------------------------------------------------------------


def _bind(node: Call, names: tuple[str, ...]) -> list[Value]:
    if len(node.args) > len(names):
        raise ExprError(f"{node.name} takes {len(names)} arguments", node.offset)
    bound: dict[str, Value] = dict(zip(names, node.args))
    for k, v in node.kwargs.items():
        if k not in names:
            raise ExprError(f"{node.name} has no parameter {k!r}", node.offset)
        if k in bound:
            raise ExprError(f"{node.name} got {k!r} twice", node.offset)
        bound[k] = v
    missing = [n for n in names if n not in bound]
    if missing:
        raise ExprError(f"{node.name} is missing {', '.join(missing)}", node.offset)
    return [bound[n] for n in names]


def _ints(node: Call, names: tuple[str, ...], minimum: int = 1) -> list[int]:
    vals = _bind(node, names)
    for n, v in zip(names, vals):
        if not isinstance(v, int) or v < minimum:
            raise ExprError(f"{node.name}: {n} must be an integer >= {minimum}", node.offset)
    return vals  # type: ignore[return-value]


def _groups(node: Call, names: tuple[str, ...], cap: int) -> list[FiniteGroup]:
    vals = _bind(node, names)
    for n, v in zip(names, vals):
        if not isinstance(v, Call):
            raise ExprError(f"{node.name}: {n} must be a group expression", node.offset)
    return [evaluate(v, cap) for v in vals]  # type: ignore[arg-type]


def _prime_power(node: Call, q: int) -> None:
    from .arith import is_prime_power

    if not is_prime_power(q):
        raise ExprError(f"{node.name}: {q} is not a prime power", node.offset)


def _wreath(node: Call, cap: int) -> FiniteGroup:
    R, T = _groups(node, ("R", "T"), cap)
    if node.name == "wreath_perm" or (node.name == "wreath" and isinstance(R.identity, C.Permutation)):
        return C.wreath_perm(R, T, cap)
    return C.wreath_mat(R, T, cap)


def _hall(node: Call, cap: int) -> FiniteGroup:
    inner, p = _bind(node, ("G", "p"))
    if not isinstance(inner, Call) or inner.name != "gammaL1":
        raise ExprError("hall applies to gammaL1(n,q)", node.offset)
    n, q = _ints(inner, ("n", "q"))
    _prime_power(inner, q)
    if not isinstance(p, int) or q % p or not is_prime(p):
        raise ExprError(f"hall: p must be the characteristic of GF({q})", node.offset)
    return C.hall_pprime_gamma_l1(n, q, cap)


def _singer(node: Call, cap: int) -> FiniteGroup:
    n, q = _ints(node, ("n", "q"))
    _prime_power(node, q)
    A = C.singer(n, q)
    return closure([A], cap, identity=A.identity(), label=f"Singer({q}^{n})")


def _normalizer(node: Call, cap: int) -> FiniteGroup:
    G, H = _groups(node, ("G", "H"), cap)
    return C.normalizer_subgroup(G, H, label=f"N({H.label})")


def _pp(fn: Callable[..., FiniteGroup], names: tuple[str, ...], q_at: int | None = None):
    def build(node: Call, cap: int) -> FiniteGroup:
        vals = _ints(node, names, minimum=0 if "k" in names else 1)
        if q_at is not None:
            _prime_power(node, vals[q_at])
        return fn(*vals, cap=cap)

    return build


def _extremal_perm(node: Call, cap: int) -> FiniteGroup:
    p, k = _ints(node, ("p", "k"), minimum=0)
    if not is_prime(p):
        raise ExprError(f"extremal_perm: {p} is not prime", node.offset)
    return C.extremal_perm(p, k, cap)


BUILDERS: dict[str, Callable[[Call, int], FiniteGroup]] = {
    "sym": _pp(C.sym, ("n",)),
    "alt": _pp(C.alt, ("n",)),
    "cyclic": _pp(C.cyclic, ("n",)),
    "dihedral": _pp(C.dihedral, ("n",)),
    "gl": _pp(C.gl, ("n", "q"), 1),
    "sl": _pp(C.sl, ("n", "q"), 1),
    "psl2": _pp(C.psl2_perm, ("q",), 0),
    "gammaL1": _pp(C.gamma_l1, ("n", "q"), 1),
    "q8": _pp(C.q8_in_gl2, ("q",), 0),
    "two_alt5": _pp(C.two_alt5_in_sl2, ("q",), 0),
    "extremal_linear": _pp(C.extremal_linear, ("q", "k"), 0),
    "extremal_perm": _extremal_perm,
    "singer": _singer,
    "hall": _hall,
    "wreath": _wreath,
    "wreath_perm": _wreath,
    "wreath_mat": _wreath,
    "direct": lambda node, cap: C.direct_product(*_groups(node, ("G", "H"), cap), cap),
    "scalars": lambda node, cap: C.with_scalars(*_groups(node, ("G",), cap), cap),
    "normalizer": _normalizer,
}


def evaluate(node: Call, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if node.name == "gens":
        assert node.path is not None
        return load(node.path, cap)
    builder = BUILDERS.get(node.name)
    if builder is None:
        raise ExprError(f"unknown constructor {node.name!r}", node.offset)
    G = builder(node, cap)
    G.label = str(node)
    return G


def group_from_text(text: str, cap: int = DEFAULT_CAP) -> FiniteGroup:
    return evaluate(parse(text), cap)


# --- bound expressions -----------------------------------------------------------------


def bound_from_text(text: str) -> ExactBound:
    """Evaluate f(n,q), i(n,q), h(p,m), thmC(n,q,p) or a bare integer."""
    stripped = text.strip()
    if stripped.isdigit():
        return eb_from_integer(int(stripped))
    node = parse(text)
    if node.name in ("f", "i"):
        n, q = _ints(node, ("n", "q"))
        _prime_power(node, q)
        return (f_bound if node.name == "f" else i_bound)(n, q)
    if node.name in ("h", "h_p"):
        p, m = _bind(node, ("p", "m"))
        if not isinstance(p, int) or not is_prime(p):
            raise ExprError("h: p must be prime", node.offset)
        if not isinstance(m, (int, Fraction)) or m <= 0:
            raise ExprError("h: m must be a positive rational", node.offset)
        return h_p(p, Fraction(m))
    if node.name == "thmC":
        n, q, p = _ints(node, ("n", "q", "p"))
        _prime_power(node, q)
        return eb_from_integer(thmC_bound(n, q, p))
    raise ExprError(f"unknown bound {node.name!r}", node.offset)

