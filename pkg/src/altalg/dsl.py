"""Text form for expressions.

Grammar (whitespace insensitive):

    expr    := ['-'] oterm (('+'|'-') oterm)*
    oterm   := product ('o' product)*
    product := [rational '*'] factor (['*'] factor)*
    factor  := primary ('^' int)*
    primary := ident
             | 'J' '(' expr ',' expr ',' expr ')'
             | 'D' '(' expr ',' expr ',' expr ')'
             | NAME '(' int (',' expr)* ')'      -- indexed family
             | '(' expr ')'                      -- grouping
             | '(' expr ',' expr ',' expr ')'    -- associator
             | '[' expr (',' expr)+ ']'          -- left-normed commutator

'o' is the Jordan product, '^' the left-normed power, '[...]' the iterated
(super-)commutator.  Parities are declared out of band: parse takes a map
name -> parity, everything not listed is even.

Indexed families expand to their catalog builders: S(n,a,b,x), T(n,a,b,x),
St(n,e,z,t,x), Tp(n,e,a,z,x), Tpp(n,e,a,z,t,x), u(n,a,x1,...,xn),
us(n,a,x), zn(n,x).  The two derivative slots of Tpp take bare generators.
All these names plus 'J', 'D' and 'o' are reserved words.

The printer emits one canonical form per Expr and parse(format(e)) == e.
"""

from __future__ import annotations

from . import catalog
from .scalars import ONE, rat, rat_num, rat_den
from .terms import (
    Expr,
    GenSym,
    Monomial,
    associator,
    commutator,
    dfun,
    jacobian,
    jordan,
    left_pow,
    mul,
    scale,
)

def _as_sym(e: Expr) -> GenSym:
    if len(e.coeffs) == 1:
        ((m, c),) = e.coeffs.items()
        if m.is_leaf() and c == ONE:
            return m.node
    raise TypeError("derivative slots take bare generators")


FAMILIES = {
    "S": (3, lambda n, a: catalog.S_n(n, *a)),
    "T": (3, lambda n, a: catalog.T_n(n, *a)),
    "St": (4, lambda n, a: catalog.tilde_S(n, *a)),
    "Tp": (4, lambda n, a: catalog.T_prime(n, *a)),
    "Tpp": (
        5,
        lambda n, a: catalog.T_double_prime(
            n, a[0], a[1], a[2], _as_sym(a[3]), _as_sym(a[4])
        ),
    ),
    "u": (None, lambda n, a: catalog.u_n(n, a[0], a[1:])),
    "us": (2, lambda n, a: catalog.u_n_super(n, *a)),
    "zn": (1, lambda n, a: catalog.z_n(n, *a)),
}

RESERVED = {"o", "J", "D"} | set(FAMILIES)


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} (at position {pos})")
        self.pos = pos


def _tokenize(text: str):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("ident", text[i:j], i))
            i = j
            continue
        if ch in "+-*/^(),[]":
            toks.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, parities: dict):
        self.toks = _tokenize(text)
        self.k = 0
        self.parities = parities or {}

    def peek(self):
        return self.toks[self.k]

    def next(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, kind: str):
        t = self.next()
        if t[0] != kind:
            raise ParseError(f"expected {kind!r}, got {t[1]!r}", t[2])
        return t

    def parse(self) -> Expr:
        e = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"trailing input {t[1]!r}", t[2])
        return e

    def expr(self) -> Expr:
        neg = False
        if self.peek()[0] == "-":
            self.next()
            neg = True
        e = self.oterm()
        if neg:
            e = -e
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            f = self.oterm()
            e = e + f if op == "+" else e - f
        return e

    def oterm(self) -> Expr:
        e = self.product()
        while self.peek()[0] == "ident" and self.peek()[1] == "o":
            self.next()
            e = jordan(e, self.product())
        return e

    def product(self) -> Expr:
        coeff = ONE
        t = self.peek()
        if t[0] == "num":
            coeff = self.rational()
            if self.peek()[0] == "*":
                self.next()
            elif self._starts_factor():
                raise ParseError("missing '*' after coefficient", self.peek()[2])
            else:
                if coeff == 0:
                    return Expr()
                raise ParseError(
                    "bare number is not a term (the algebra has no unit)", t[2]
                )
        e = self.factor()
        while True:
            if self.peek()[0] == "*":
                self.next()
                e = mul(e, self.factor())
            elif self._starts_factor():
                e = mul(e, self.factor())
            else:
                break
        return scale(e, coeff) if coeff != ONE else e

    def _starts_factor(self) -> bool:
        t = self.peek()
        if t[0] in ("(", "["):
            return True
        return t[0] == "ident" and t[1] != "o"

    def rational(self):
        t = self.expect("num")
        num = int(t[1])
        if self.peek()[0] == "/":
            self.next()
            den = int(self.expect("num")[1])
            if den == 0:
                raise ParseError("zero denominator", t[2])
            return rat(num, den)
        return rat(num)

    def factor(self) -> Expr:
        e = self.primary()
        while self.peek()[0] == "^":
            self.next()
            t = self.expect("num")
            k = int(t[1])
            if k < 1:
                raise ParseError("power must be >= 1", t[2])
            e = left_pow(e, k)
        return e

    def primary(self) -> Expr:
        t = self.next()
        if t[0] == "ident":
            name = t[1]
            if name in ("J", "D") and self.peek()[0] == "(":
                self.next()
                a = self.expr()
                self.expect(",")
                b = self.expr()
                self.expect(",")
                c = self.expr()
                self.expect(")")
                return jacobian(a, b, c) if name == "J" else dfun(a, b, c)
            if name in FAMILIES and self.peek()[0] == "(":
                arity, build = FAMILIES[name]
                self.next()
                order = int(self.expect("num")[1])
                args = []
                while self.peek()[0] == ",":
                    self.next()
                    args.append(self.expr())
                self.expect(")")
                if arity is not None and len(args) != arity:
                    raise ParseError(
                        f"{name} takes {arity} arguments after the order, got {len(args)}",
                        t[2],
                    )
                try:
                    return build(order, args)
                except ParseError:
                    raise
                except (TypeError, ValueError) as exc:
                    raise ParseError(str(exc), t[2])
            if name in RESERVED:
                raise ParseError(f"{name!r} is a reserved word", t[2])
            sym = GenSym(name, self.parities.get(name, 0))
            return Expr({Monomial(sym): ONE})
        if t[0] == "(":
            a = self.expr()
            if self.peek()[0] == ")":
                self.next()
                return a
            self.expect(",")
            b = self.expr()
            self.expect(",")
            c = self.expr()
            self.expect(")")
            return associator(a, b, c)
        if t[0] == "[":
            args = [self.expr()]
            while self.peek()[0] == ",":
                self.next()
                args.append(self.expr())
            self.expect("]")
            if len(args) < 2:
                raise ParseError("commutator needs at least two arguments", t[2])
            e = args[0]
            for f in args[1:]:
                e = commutator(e, f)
            return e
        raise ParseError(f"unexpected token {t[1]!r}", t[2])


def parse(text: str, parities: dict | None = None) -> Expr:
    return _Parser(text, parities or {}).parse()


def _mono_text(m: Monomial) -> str:
    spine = []
    cur = m
    while not cur.is_leaf():
        spine.append(cur.node[1])
        cur = cur.node[0]
    spine.append(cur)
    parts = []
    for f in reversed(spine):
        if f.is_leaf():
            parts.append(f.node.name)
        else:
            parts.append("(" + _mono_text(f) + ")")
    return "*".join(parts)


def _coeff_text(c) -> str:
    num, den = rat_num(c), rat_den(c)
    return str(num) if den == 1 else f"{num}/{den}"


def format(e: Expr) -> str:
    """Canonical text; parse(format(e)) == e."""
    if e.is_zero():
        return "0"
    pieces = []
    for i, (m, c) in enumerate(e.terms_sorted()):
        neg = c < 0
        ac = -c if neg else c
        body = _mono_text(m) if ac == 1 else f"{_coeff_text(ac)}*{_mono_text(m)}"
        if i == 0:
            pieces.append("-" + body if neg else body)
        else:
            pieces.append(("- " if neg else "+ ") + body)
    return " ".join(pieces)
