"""Nonassociative terms with exact rational coefficients.

A Monomial is a binary tree over parity-tagged generators; an Expr is a
finite rational combination of monomials.  Multiplication is formal tree
grafting and never associates, so every bracketing survives verbatim.

Super-operations (commutator, Jordan product) insert Koszul signs from the
parities of the actual monomials involved, so they are well defined on
arbitrary Exprs, one monomial pair at a time.
"""

from __future__ import annotations

from itertools import permutations

from .scalars import ZERO, ONE, rat


class ParityError(ValueError):
    pass


class DegreeError(ValueError):
    pass


class GenSym:
    """A named generator with a fixed parity (0 even, 1 odd)."""

    __slots__ = ("name", "parity", "_hash")

    def __init__(self, name: str, parity: int = 0):
        if parity not in (0, 1):
            raise ParityError(f"parity must be 0 or 1, got {parity!r}")
        self.name = name
        self.parity = parity
        self._hash = hash((name, parity))

    def __repr__(self):
        return f"GenSym({self.name!r}, {self.parity})"

    def __eq__(self, other):
        return (
            isinstance(other, GenSym)
            and self.name == other.name
            and self.parity == other.parity
        )

    def __hash__(self):
        return self._hash


def gen(name: str, parity: int = 0) -> "Expr":
    """Single-generator expression."""
    return Expr({Monomial(GenSym(name, parity)): ONE})


class Monomial:
    """Binary tree; node is a GenSym leaf or a (Monomial, Monomial) pair."""

    __slots__ = ("node", "degree", "parity", "_hash", "_key")

    def __init__(self, node):
        self.node = node
        if isinstance(node, GenSym):
            self.degree = 1
            self.parity = node.parity
            self._hash = hash((17, node))
        else:
            l, r = node
            self.degree = l.degree + r.degree
            self.parity = (l.parity + r.parity) & 1
            self._hash = hash((l._hash, r._hash))
        self._key = None

    def is_leaf(self):
        return isinstance(self.node, GenSym)

    def key(self):
        # total order: leaves by name, trees by (degree, left degree, subkeys)
        if self._key is None:
            if isinstance(self.node, GenSym):
                self._key = (1, 0, self.node.name)
            else:
                l, r = self.node
                self._key = (self.degree, l.degree, l.key(), r.key())
        return self._key

    def leaves(self):
        if isinstance(self.node, GenSym):
            yield self.node
        else:
            yield from self.node[0].leaves()
            yield from self.node[1].leaves()

    def multidegree(self) -> dict:
        d: dict = {}
        for leaf in self.leaves():
            d[leaf.name] = d.get(leaf.name, 0) + 1
        return d

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Monomial) or self._hash != other._hash:
            return False
        return self.node == other.node

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Monomial<{_mono_str(self)}>"


def _mono_str(m: Monomial) -> str:
    # left-assoc chains print without parens: ((a b) c) -> "a*b*c"
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
            parts.append("(" + _mono_str(f) + ")")
    return "*".join(parts)


class Expr:
    """Sparse map Monomial -> Scalar; zero coefficients are never stored."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = coeffs if coeffs is not None else {}

    def is_zero(self):
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Expr) and self.coeffs == other.coeffs

    def __hash__(self):
        raise TypeError("Expr is not hashable")

    def __add__(self, other):
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Expr(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Expr({m: -c for m, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Expr):
            return mul(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    def parity(self):
        """Common parity of all monomials, or None if mixed (0 for zero Expr)."""
        ps = {m.parity for m in self.coeffs}
        if not ps:
            return 0
        if len(ps) > 1:
            return None
        return ps.pop()

    def multidegree(self) -> dict:
        """Common multidegree of all monomials; DegreeError if inhomogeneous."""
        md = None
        for m in self.coeffs:
            d = m.multidegree()
            if md is None:
                md = d
            elif md != d:
                raise DegreeError("expression is not multihomogeneous")
        return md if md is not None else {}

    def degree_in(self, sym: GenSym) -> int:
        """Degree in sym, required uniform across monomials."""
        deg = None
        for m in self.coeffs:
            d = sum(1 for leaf in m.leaves() if leaf == sym)
            if deg is None:
                deg = d
            elif deg != d:
                raise DegreeError(f"mixed degrees in {sym.name}")
        return deg if deg is not None else 0

    def gens(self) -> set:
        out = set()
        for m in self.coeffs:
            out.update(m.leaves())
        return out

    def terms_sorted(self):
        return sorted(self.coeffs.items(), key=lambda mc: mc[0].key())

    def __repr__(self):
        from .dsl import format as _format

        return f"Expr({_format(self)})"


ZERO_EXPR = Expr()


def add(e: Expr, f: Expr) -> Expr:
    return e + f


def scale(e: Expr, c) -> Expr:
    c = rat(c) if not isinstance(c, type(ONE)) else c
    if not c:
        return Expr()
    return Expr({m: c * v for m, v in e.coeffs.items()})


def mul(e: Expr, f: Expr) -> Expr:
    out: dict = {}
    for m1, c1 in e.coeffs.items():
        for m2, c2 in f.coeffs.items():
            m = Monomial((m1, m2))
            v = out.get(m, ZERO) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return Expr(out)


def commutator(e: Expr, f: Expr) -> Expr:
    """[e,f] = ef - (-1)^{|e||f|} fe, Koszul sign taken per monomial pair."""
    out: dict = {}
    for m1, c1 in e.coeffs.items():
        for m2, c2 in f.coeffs.items():
            c = c1 * c2
            m = Monomial((m1, m2))
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
            n = Monomial((m2, m1))
            cc = -c if not (m1.parity and m2.parity) else c
            v = out.get(n, ZERO) + cc
            if v:
                out[n] = v
            else:
                out.pop(n, None)
    return Expr(out)


def jordan(e: Expr, f: Expr) -> Expr:
    """e o f = ef + (-1)^{|e||f|} fe, Koszul sign per monomial pair."""
    out: dict = {}
    for m1, c1 in e.coeffs.items():
        for m2, c2 in f.coeffs.items():
            c = c1 * c2
            m = Monomial((m1, m2))
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
            n = Monomial((m2, m1))
            cc = c if not (m1.parity and m2.parity) else -c
            v = out.get(n, ZERO) + cc
            if v:
                out[n] = v
            else:
                out.pop(n, None)
    return Expr(out)


def associator(e: Expr, f: Expr, g: Expr) -> Expr:
    return mul(mul(e, f), g) - mul(e, mul(f, g))


def dfun(a: Expr, b: Expr, c: Expr) -> Expr:
    return jordan(jordan(a, b), c) - jordan(jordan(a, c), b)


def jacobian(a: Expr, b: Expr, c: Expr) -> Expr:
    return (
        commutator(commutator(a, b), c)
        + commutator(commutator(b, c), a)
        + commutator(commutator(c, a), b)
    )


def left_normed_comm(a: Expr, fs) -> Expr:
    """[a, f_1, ..., f_k] = [...[[a,f_1],f_2]...,f_k]."""
    out = a
    for f in fs:
        out = commutator(out, f)
    return out


def left_pow(e: Expr, k: int) -> Expr:
    """Left-normed power ((e*e)*e)*... with k factors."""
    if k < 1:
        raise ValueError("power must be >= 1")
    out = e
    for _ in range(k - 1):
        out = mul(out, e)
    return out


def _replace_leaf(m: Monomial, path: tuple, new: GenSym) -> Monomial:
    if not path:
        return Monomial(new)
    l, r = m.node
    if path[0] == 0:
        return Monomial((_replace_leaf(l, path[1:], new), r))
    return Monomial((l, _replace_leaf(r, path[1:], new)))


def _occurrences(m: Monomial, sym: GenSym, prefix=()):
    if isinstance(m.node, GenSym):
        if m.node == sym:
            yield prefix
        return
    l, r = m.node
    yield from _occurrences(l, sym, prefix + (0,))
    yield from _occurrences(r, sym, prefix + (1,))


def partial_linearize(e: Expr, x: GenSym, t: GenSym) -> Expr:
    """Sum over single replacements of one occurrence of x by t.

    The replacement is sign-free: it is the coefficient of the first power
    of t in e(x -> x + t), i.e. a substitution derivative, which satisfies
    lin(e*f) = lin(e)*f + e*lin(f) with no extra sign even for odd t.
    """
    out: dict = {}
    for m, c in e.coeffs.items():
        for path in _occurrences(m, x):
            n = _replace_leaf(m, path, t)
            v = out.get(n, ZERO) + c
            if v:
                out[n] = v
            else:
                out.pop(n, None)
    return Expr(out)


def multilinearize(e: Expr, x: GenSym, fresh) -> Expr:
    """Full polarization: all ways to hand the occurrences of x to the
    fresh symbols bijectively.  Requires deg_x = len(fresh) on every
    monomial; no division by k! is performed."""
    fresh = list(fresh)
    k = len(fresh)
    out: dict = {}
    for m, c in e.coeffs.items():
        paths = list(_occurrences(m, x))
        if len(paths) != k:
            raise DegreeError(
                f"monomial has degree {len(paths)} in {x.name}, expected {k}"
            )
        for perm in permutations(range(k)):
            n = m
            for i, path in enumerate(paths):
                n = _replace_leaf(n, path, fresh[perm[i]])
            v = out.get(n, ZERO) + c
            if v:
                out[n] = v
            else:
                out.pop(n, None)
    return Expr(out)


def rename(e: Expr, mapping: dict) -> Expr:
    """Simultaneous leaf renaming GenSym -> GenSym (parities must match)."""
    for old, new in mapping.items():
        if old.parity != new.parity:
            raise ParityError(f"cannot rename {old.name} to {new.name}: parity differs")

    cache: dict = {}

    def walk(m):
        got = cache.get(m)
        if got is not None:
            return got
        if isinstance(m.node, GenSym):
            out = Monomial(mapping.get(m.node, m.node))
        else:
            out = Monomial((walk(m.node[0]), walk(m.node[1])))
        cache[m] = out
        return out

    out: dict = {}
    for m, c in e.coeffs.items():
        n = walk(m)
        v = out.get(n, ZERO) + c
        if v:
            out[n] = v
        else:
            out.pop(n, None)
    return Expr(out)


def substitute(e: Expr, mapping: dict) -> Expr:
    """Homomorphic substitution GenSym -> Expr.

    Parity-strict: every monomial of the image must carry the parity of the
    symbol it replaces, otherwise the result would not be a superalgebra
    homomorphism."""
    for sym, image in mapping.items():
        for m in image.coeffs:
            if m.parity != sym.parity:
                raise ParityError(
                    f"image of {sym.name} contains a monomial of wrong parity"
                )
    cache: dict = {}

    def walk(m: Monomial) -> Expr:
        got = cache.get(m)
        if got is not None:
            return got
        if isinstance(m.node, GenSym):
            out = mapping.get(m.node)
            if out is None:
                out = Expr({m: ONE})
        else:
            out = mul(walk(m.node[0]), walk(m.node[1]))
        cache[m] = out
        return out

    acc = Expr()
    for m, c in e.coeffs.items():
        acc = acc + scale(walk(m), c)
    return acc


def delta_swap(e: Expr, p: GenSym, q: GenSym) -> Expr:
    """e minus e with p and q exchanged (written term minus the swap).

    Every monomial must have degree exactly 1 in p and in q."""
    for m in e.coeffs:
        md = m.multidegree()
        if md.get(p.name, 0) != 1 or md.get(q.name, 0) != 1:
            raise DegreeError(
                f"delta_swap needs degree 1 in {p.name} and {q.name} on every monomial"
            )
    return e - rename(e, {p: q, q: p})


def _check_multilinear(e: Expr, vars_) -> None:
    for m in e.coeffs:
        md = m.multidegree()
        for v in vars_:
            if md.get(v.name, 0) != 1:
                raise DegreeError(f"expression is not multilinear in {v.name}")


def alt_op(e: Expr, vars_) -> Expr:
    """Signed sum over permutations of vars (which must each occur once)."""
    vars_ = list(vars_)
    _check_multilinear(e, vars_)
    acc = Expr()
    for perm in permutations(vars_):
        sign = _perm_sign(vars_, perm)
        mapping = {v: w for v, w in zip(vars_, perm) if v != w}
        term = rename(e, mapping) if mapping else e
        acc = acc + (term if sign > 0 else -term)
    return acc


def sym_op(e: Expr, vars_) -> Expr:
    vars_ = list(vars_)
    _check_multilinear(e, vars_)
    acc = Expr()
    for perm in permutations(vars_):
        mapping = {v: w for v, w in zip(vars_, perm) if v != w}
        acc = acc + (rename(e, mapping) if mapping else e)
    return acc


def _perm_sign(base, perm) -> int:
    idx = {v: i for i, v in enumerate(base)}
    arr = [idx[v] for v in perm]
    sign = 1
    for i in range(len(arr)):
        for j in range(i + 1, len(arr)):
            if arr[i] > arr[j]:
                sign = -sign
    return sign
