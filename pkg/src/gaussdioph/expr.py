"""Polynomial expressions over Z[i] with named variables.

Expressions are immutable DAGs built from six node kinds.  They are never
expanded implicitly; :func:`expand` is the explicit, size-guarded route to a
sparse normal form.

Text grammar (``#`` starts a line comment)::

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := int | 'i' | ident | '(' expr ')' | '-' atom

Note that ``-x^2`` reads as ``(-x)^2`` under this grammar.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Union

from .errors import PolySyntaxError, ReservedName, TooLarge, UnboundVariable
from .gaussian import ONE, ZERO, GaussianInt

IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class Expr:
    """Base node.

    Equality is structural, with the children of sums and products compared
    as multisets.  The canonical key is cached per node, so comparing large
    shared DAGs costs time linear in the number of distinct nodes.
    """

    __slots__ = ("_key",)

    def canonical_key(self) -> tuple:
        try:
            return self._key
        except AttributeError:
            key = self._make_key()
            object.__setattr__(self, "_key", key)
            return key

    def _make_key(self) -> tuple:
        raise NotImplementedError

    def children(self) -> tuple[Expr, ...]:
        return ()

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Expr):
            return NotImplemented
        return self is other or self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash(self.canonical_key())

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {render(self)}>"

    def __str__(self) -> str:
        return render(self)

    # Operator sugar for building expressions in Python code.
    def __add__(self, other: ExprLike) -> Expr:
        return Sum((self, as_expr(other)))

    def __radd__(self, other: ExprLike) -> Expr:
        return Sum((as_expr(other), self))

    def __sub__(self, other: ExprLike) -> Expr:
        return Sum((self, Negate(as_expr(other))))

    def __rsub__(self, other: ExprLike) -> Expr:
        return Sum((as_expr(other), Negate(self)))

    def __mul__(self, other: ExprLike) -> Expr:
        return Product((self, as_expr(other)))

    def __rmul__(self, other: ExprLike) -> Expr:
        return Product((as_expr(other), self))

    def __neg__(self) -> Expr:
        return Negate(self)

    def __pow__(self, exponent: int) -> Expr:
        return Power(self, exponent)


def _init(node: Expr, **fields: object) -> None:
    for name, value in fields.items():
        object.__setattr__(node, name, value)


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value: GaussianInt | int) -> None:
        _init(self, value=GaussianInt.coerce(value))

    def _make_key(self) -> tuple:
        return ("const", self.value.re, self.value.im)


class Var(Expr):
    __slots__ = ("name",)

    def __init__(self, name: str) -> None:
        if not IDENT.match(name):
            raise ValueError(f"invalid identifier {name!r}")
        if name == "i":
            raise ReservedName("'i' is the imaginary unit and cannot name a variable")
        _init(self, name=name)

    def _make_key(self) -> tuple:
        return ("var", self.name)


class Sum(Expr):
    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Expr]) -> None:
        terms = tuple(terms)
        if not terms:
            raise ValueError("a sum needs at least one term")
        _init(self, terms=terms)

    def children(self) -> tuple[Expr, ...]:
        return self.terms

    def _make_key(self) -> tuple:
        return ("sum", tuple(sorted(t.canonical_key() for t in self.terms)))


class Product(Expr):
    __slots__ = ("factors",)

    def __init__(self, factors: Iterable[Expr]) -> None:
        factors = tuple(factors)
        if not factors:
            raise ValueError("a product needs at least one factor")
        _init(self, factors=factors)

    def children(self) -> tuple[Expr, ...]:
        return self.factors

    def _make_key(self) -> tuple:
        return ("product", tuple(sorted(f.canonical_key() for f in self.factors)))


class Power(Expr):
    __slots__ = ("base", "exponent")

    def __init__(self, base: Expr, exponent: int) -> None:
        if type(exponent) is not int or exponent < 1:
            raise ValueError(f"exponent must be a natural number >= 1, got {exponent!r}")
        _init(self, base=base, exponent=exponent)

    def children(self) -> tuple[Expr, ...]:
        return (self.base,)

    def _make_key(self) -> tuple:
        return ("power", self.base.canonical_key(), self.exponent)


class Negate(Expr):
    __slots__ = ("child",)

    def __init__(self, child: Expr) -> None:
        _init(self, child=child)

    def children(self) -> tuple[Expr, ...]:
        return (self.child,)

    def _make_key(self) -> tuple:
        return ("neg", self.child.canonical_key())


ExprLike = Union[Expr, GaussianInt, int]


def as_expr(value: ExprLike) -> Expr:
    if isinstance(value, Expr):
        return value
    return Const(value)


# ---------------------------------------------------------------------------
# traversal helpers

def _postorder(root: Expr) -> list[Expr]:
    """Distinct nodes of the DAG, children before parents."""
    order: list[Expr] = []
    seen: set[int] = set()
    stack: list[tuple[Expr, bool]] = [(root, False)]
    while stack:
        node, ready = stack.pop()
        if ready:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for child in reversed(node.children()):
            if id(child) not in seen:
                stack.append((child, False))
    return order


def _fold(root: Expr, leaf: Callable[[Expr], object],
          combine: Callable[[Expr, list], object]) -> object:
    memo: dict[int, object] = {}
    for node in _postorder(root):
        kids = node.children()
        if kids:
            memo[id(node)] = combine(node, [memo[id(c)] for c in kids])
        else:
            memo[id(node)] = leaf(node)
    return memo[id(root)]


def dag_size(e: Expr) -> int:
    """Number of distinct nodes."""
    return len(_postorder(e))


def degree_bound(e: Expr) -> int:
    """Upper bound on total degree, ignoring cancellation."""

    def leaf(node: Expr) -> int:
        return 1 if isinstance(node, Var) else 0

    def combine(node: Expr, kids: list[int]) -> int:
        if isinstance(node, Sum):
            return max(kids)
        if isinstance(node, Product):
            return sum(kids)
        if isinstance(node, Power):
            return kids[0] * node.exponent
        return kids[0]

    return _fold(e, leaf, combine)


def _natural_key(name: str) -> tuple:
    m = re.match(r"(.*?)(\d*)\Z", name)
    stem, digits = m.group(1), m.group(2)
    return (stem, int(digits) if digits else -1, name)


def sort_names(names: Iterable[str]) -> list[str]:
    """Sort identifiers with numeric suffixes in numeric order (``z2`` before ``z10``)."""
    return sorted(set(names), key=_natural_key)


def free_vars(e: Expr) -> list[str]:
    return sort_names(node.name for node in _postorder(e) if isinstance(node, Var))


# ---------------------------------------------------------------------------
# evaluation and substitution

def evaluate(e: Expr, assignment: Mapping[str, GaussianInt | int]) -> GaussianInt:
    """Exact value of ``e``; shared nodes are computed once."""

    def leaf(node: Expr) -> GaussianInt:
        if isinstance(node, Const):
            return node.value
        try:
            return GaussianInt.coerce(assignment[node.name])
        except KeyError:
            raise UnboundVariable(node.name) from None

    def combine(node: Expr, kids: list[GaussianInt]) -> GaussianInt:
        if isinstance(node, Sum):
            total = ZERO
            for k in kids:
                total = total + k
            return total
        if isinstance(node, Product):
            total = ONE
            for k in kids:
                total = total * k
            return total
        if isinstance(node, Power):
            return kids[0] ** node.exponent
        return -kids[0]

    return _fold(e, leaf, combine)


def substitute(e: Expr, bindings: Mapping[str, Expr]) -> Expr:
    """Simultaneously replace variables; sharing in ``e`` is preserved."""

    def leaf(node: Expr) -> Expr:
        if isinstance(node, Var):
            return bindings.get(node.name, node)
        return node

    def combine(node: Expr, kids: list[Expr]) -> Expr:
        if all(a is b for a, b in zip(kids, node.children())):
            return node
        if isinstance(node, Sum):
            return Sum(kids)
        if isinstance(node, Product):
            return Product(kids)
        if isinstance(node, Power):
            return Power(kids[0], node.exponent)
        return Negate(kids[0])

    return _fold(e, leaf, combine)


# ---------------------------------------------------------------------------
# rendering

def _render_const(value: GaussianInt) -> str:
    if value.im == 0:
        return str(value.re)
    if value.re == 0:
        return {1: "i", -1: "(-i)"}.get(value.im, f"({value.im}*i)")
    return f"({value.re}{value.im:+d}*i)"


def render(e: Expr) -> str:
    """Text that :func:`parse` reads back to an equivalent expression."""

    def atom(node: Expr, text: str) -> str:
        # only Negate nodes, negative constants and products led by one of
        # those may start with '-'; a '^' base must never do so
        if isinstance(node, (Var, Const)) and not text.startswith("-"):
            return text
        return f"({text})"

    def leaf(node: Expr) -> str:
        return _render_const(node.value) if isinstance(node, Const) else node.name

    def combine(node: Expr, kids: list[str]) -> str:
        if isinstance(node, Sum):
            out = kids[0]
            for k in kids[1:]:
                out += k if k.startswith("-") else "+" + k
            return out
        if isinstance(node, Product):
            parts = [f"({k})" if isinstance(c, Sum) else k for c, k in zip(node.factors, kids)]
            return "*".join(parts)
        if isinstance(node, Power):
            return f"{atom(node.base, kids[0])}^{node.exponent}"
        return "-" + atom(node.child, kids[0])

    return _fold(e, leaf, combine)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(#[^\n]*)|(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


@dataclass
class _Token:
    kind: str  # 'int', 'ident', 'op', 'end'
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        # advance line bookkeeping over the whitespace and the token itself
        for idx in range(pos, start):
            if text[idx] == "\n":
                line, line_start = line + 1, idx + 1
        column = start - line_start + 1
        pos = m.end()
        kind = m.lastindex
        if kind == 1:
            continue
        value = m.group(kind)
        if kind == 2:
            tokens.append(_Token("int", value, line, column))
        elif kind == 3:
            tokens.append(_Token("ident", value, line, column))
        elif value in "+-*^()":
            tokens.append(_Token("op", value, line, column))
        else:
            raise PolySyntaxError(f"unexpected character {value!r}", line, column)
    for idx in range(pos, len(text)):
        if text[idx] == "\n":
            line, line_start = line + 1, idx + 1
    tokens.append(_Token("end", "", line, len(text) - line_start + 1))
    return tokens


@dataclass
class _Parser:
    tokens: list[_Token]
    pos: int = field(default=0)

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, tok: _Token | None = None) -> PolySyntaxError:
        tok = tok or self.peek()
        return PolySyntaxError(message, tok.line, tok.column)

    def at(self, op: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text == op

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.at("+") or self.at("-"):
            op = self.take().text
            t = self.term()
            terms.append(t if op == "+" else Negate(t))
        return terms[0] if len(terms) == 1 else Sum(terms)

    def term(self) -> Expr:
        factors = [self.factor()]
        while self.at("*"):
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(factors)

    def factor(self) -> Expr:
        base = self.atom()
        if self.at("^"):
            self.take()
            tok = self.take()
            if tok.kind != "int":
                raise self.fail("expected a natural-number exponent", tok)
            exponent = int(tok.text)
            if exponent < 1:
                raise self.fail("exponent must be at least 1", tok)
            return Power(base, exponent)
        return base

    def atom(self) -> Expr:
        tok = self.take()
        if tok.kind == "int":
            return Const(int(tok.text))
        if tok.kind == "ident":
            if tok.text == "i":
                return Const(GaussianInt(0, 1))
            return Var(tok.text)
        if tok.kind == "op" and tok.text == "(":
            inner = self.expr()
            if not self.at(")"):
                raise self.fail("expected ')'")
            self.take()
            return inner
        if tok.kind == "op" and tok.text == "-":
            inner = self.atom()
            if isinstance(inner, Const) and inner.value.im == 0 and self.tokens[self.pos - 1].kind == "int":
                return Const(-inner.value.re)
            return Negate(inner)
        if tok.kind == "end":
            raise self.fail("unexpected end of input", tok)
        raise self.fail(f"unexpected {tok.text!r}", tok)


def parse(text: str) -> Expr:
    parser = _Parser(_tokenize(text))
    result = parser.expr()
    if parser.peek().kind != "end":
        raise parser.fail(f"unexpected {parser.peek().text!r}")
    return result


# ---------------------------------------------------------------------------
# expansion

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class SparsePoly:
    """Expanded polynomial: exponent vectors over ``variables`` to nonzero coefficients."""

    variables: tuple[str, ...]
    terms: Mapping[Monomial, GaussianInt]

    def evaluate(self, assignment: Mapping[str, GaussianInt | int]) -> GaussianInt:
        values = []
        for name in self.variables:
            if name not in assignment:
                raise UnboundVariable(name)
            values.append(GaussianInt.coerce(assignment[name]))
        total = ZERO
        for mono, coeff in self.terms.items():
            term = coeff
            for value, power in zip(values, mono):
                if power:
                    term = term * value**power
            total = total + term
        return total

    def as_dict(self) -> dict[tuple[tuple[str, int], ...], GaussianInt]:
        """Terms keyed by ``((name, exponent), ...)`` with zero exponents dropped."""
        return {
            tuple((n, p) for n, p in zip(self.variables, mono) if p): c
            for mono, c in self.terms.items()
        }

    def to_json(self) -> dict:
        rows = []
        for mono in sorted(self.terms, reverse=True):
            rows.append({
                "monomial": {n: p for n, p in zip(self.variables, mono) if p},
                "coeff": self.terms[mono].to_json(),
            })
        return {"variables": list(self.variables), "terms": rows}


def expand(e: Expr, term_limit: int) -> SparsePoly:
    """Full expansion with like terms collected.

    Raises :class:`TooLarge` as soon as any intermediate polynomial holds
    more than ``term_limit`` terms.
    """
    variables = tuple(free_vars(e))
    index = {name: k for k, name in enumerate(variables)}
    width = len(variables)
    unit: Monomial = (0,) * width

    def check(poly: dict) -> dict:
        if len(poly) > term_limit:
            raise TooLarge(term_limit)
        return poly

    def add_into(acc: dict, poly: dict, sign: int = 1) -> None:
        for mono, c in poly.items():
            new = acc.get(mono, ZERO) + (c if sign > 0 else -c)
            if new.is_zero:
                acc.pop(mono, None)
            else:
                acc[mono] = new
                if len(acc) > term_limit:
                    raise TooLarge(term_limit)

    def mul(a: dict, b: dict) -> dict:
        out: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                mono = tuple(x + y for x, y in zip(ma, mb))
                new = out.get(mono, ZERO) + ca * cb
                if new.is_zero:
                    out.pop(mono, None)
                else:
                    out[mono] = new
                    if len(out) > term_limit:
                        raise TooLarge(term_limit)
        return out

    def leaf(node: Expr) -> dict:
        if isinstance(node, Const):
            return check({unit: node.value}) if not node.value.is_zero else {}
        mono = [0] * width
        mono[index[node.name]] = 1
        return check({tuple(mono): ONE})

    def combine(node: Expr, kids: list[dict]) -> dict:
        if isinstance(node, Sum):
            acc: dict = {}
            for k in kids:
                add_into(acc, k)
            return acc
        if isinstance(node, Product):
            acc = {unit: ONE}
            for k in kids:
                acc = mul(acc, k)
            return acc
        if isinstance(node, Power):
            result, base, n = {unit: ONE}, kids[0], node.exponent
            while n:
                if n & 1:
                    result = mul(result, base)
                n >>= 1
                if n:
                    base = mul(base, base)
            return result
        return {m: -c for m, c in kids[0].items()}

    return SparsePoly(variables, _fold(e, leaf, combine))
