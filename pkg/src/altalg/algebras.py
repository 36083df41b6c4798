"""Finite-dimensional algebras given by structure constants.

A StructAlgebra is a basis with a sparse multiplication table over exact
rationals, optionally Z2-graded and optionally unital.  Elements are dense
coordinate vectors.  Expressions evaluate homomorphically; all the
super-operation signs were already expanded at the Expr level, so
evaluation itself is sign-free tree multiplication.
"""

from __future__ import annotations

import random

from .scalars import ZERO, ONE, rat, rat_str
from .terms import Expr, GenSym, Monomial, ParityError


class UnitError(ValueError):
    pass


class StructAlgebra:
    def __init__(self, name, labels, parity, table, unit=None):
        self.name = name
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.parity = list(parity)
        # table: (i, j) -> tuple of (k, coeff); missing pair means zero
        self.table = {ij: tuple(ent) for ij, ent in table.items() if ent}
        self.unit = unit
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self._validate()

    def _validate(self):
        if len(self.parity) != self.dim:
            raise ValueError("parity vector length mismatch")
        for (i, j), entries in self.table.items():
            pij = (self.parity[i] + self.parity[j]) & 1
            for k, c in entries:
                if self.parity[k] != pij:
                    raise ParityError(
                        f"{self.name}: product {self.labels[i]}*{self.labels[j]} "
                        f"hits {self.labels[k]} of wrong parity"
                    )
        if self.unit is not None:
            u = self.basis_element(self.unit)
            for i in range(self.dim):
                b = self.basis_element(i)
                if u * b != b or b * u != b:
                    raise ValueError(f"{self.name}: unit axiom fails at {self.labels[i]}")

    def is_graded(self):
        return any(self.parity)

    def zero(self):
        return Element(self, [ZERO] * self.dim)

    def basis_element(self, i):
        coords = [ZERO] * self.dim
        coords[i] = ONE
        return Element(self, coords)

    def element(self, coords):
        coords = [rat(c) for c in coords]
        if len(coords) != self.dim:
            raise ValueError("coordinate length mismatch")
        return Element(self, coords)

    def from_labels(self, pairs):
        """Element from {label: coeff}."""
        coords = [ZERO] * self.dim
        for lab, c in pairs.items():
            coords[self.index[lab]] = rat(c)
        return Element(self, coords)

    def even_indices(self):
        return [i for i in range(self.dim) if self.parity[i] == 0]

    def odd_indices(self):
        return [i for i in range(self.dim) if self.parity[i] == 1]

    def __repr__(self):
        return f"StructAlgebra({self.name}, dim={self.dim})"


class Element:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: StructAlgebra, coords):
        self.algebra = algebra
        self.coords = coords

    def is_zero(self):
        return not any(self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.algebra is other.algebra
            and self.coords == other.coords
        )

    def __add__(self, other):
        return Element(
            self.algebra, [a + b for a, b in zip(self.coords, other.coords)]
        )

    def __sub__(self, other):
        return Element(
            self.algebra, [a - b for a, b in zip(self.coords, other.coords)]
        )

    def __neg__(self):
        return Element(self.algebra, [-a for a in self.coords])

    def scale(self, c):
        c = rat(c)
        return Element(self.algebra, [c * a for a in self.coords])

    def __mul__(self, other):
        A = self.algebra
        out = [ZERO] * A.dim
        table = A.table
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if not b:
                    continue
                entries = table.get((i, j))
                if entries:
                    ab = a * b
                    for k, c in entries:
                        out[k] = out[k] + ab * c
        return Element(A, out)

    def support_parities(self):
        return {self.algebra.parity[i] for i, c in enumerate(self.coords) if c}

    def __str__(self):
        A = self.algebra
        parts = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            cs = rat_str(c)
            if cs == "1":
                parts.append(A.labels[i])
            elif cs == "-1":
                parts.append(f"-{A.labels[i]}")
            else:
                parts.append(f"{cs}*{A.labels[i]}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self):
        return f"<{self}>"


class UnassignedError(KeyError):
    pass


def evaluate(e: Expr, assignment: dict, A: StructAlgebra) -> Element:
    """Homomorphic image of e under GenSym -> Element.

    Odd symbols must map into the odd component and even into the even one.
    """
    for sym, el in assignment.items():
        if el.algebra is not A:
            raise ValueError("assignment element from a different algebra")
        if el.support_parities() - {sym.parity}:
            raise ParityError(f"{sym.name} assigned an element of wrong parity")
    memo: dict = {}

    def walk(m: Monomial) -> Element:
        got = memo.get(m)
        if got is not None:
            return got
        if isinstance(m.node, GenSym):
            el = assignment.get(m.node)
            if el is None:
                raise UnassignedError(m.node.name)
        else:
            el = walk(m.node[0]) * walk(m.node[1])
        memo[m] = el
        return el

    acc = A.zero()
    for m, c in e.coeffs.items():
        acc = acc + walk(m).scale(c)
    return acc


def _associator(p: Element, q: Element, r: Element) -> Element:
    return (p * q) * r - p * (q * r)


def alternativity_violations(A: StructAlgebra):
    """Yield (law, i, j, k, residual) for basis triples breaking the
    super-linearized alternative laws:

        (p,q,r) + (-1)^{|p||q|} (q,p,r) = 0
        (p,q,r) + (-1)^{|q||r|} (p,r,q) = 0
    """
    basis = [A.basis_element(i) for i in range(A.dim)]
    par = A.parity
    for i in range(A.dim):
        for j in range(A.dim):
            aij = _associator(basis[i], basis[j], basis[i])  # reused below
            for k in range(A.dim):
                a1 = _associator(basis[i], basis[j], basis[k])
                a2 = _associator(basis[j], basis[i], basis[k])
                res = a1 - a2 if (par[i] and par[j]) else a1 + a2
                if not res.is_zero():
                    yield ("left", i, j, k, res)
                a3 = _associator(basis[i], basis[k], basis[j])
                res = a1 - a3 if (par[j] and par[k]) else a1 + a3
                if not res.is_zero():
                    yield ("right", i, j, k, res)
            del aij


def check_super_alternative(A: StructAlgebra) -> bool:
    """True iff the associator is super-skew in adjacent argument pairs on
    all basis triples (for an all-even algebra this is plain alternativity)."""
    for _ in alternativity_violations(A):
        return False
    return True


def random_assignment(seed: int, syms, A: StructAlgebra, coeff_bound: int = 7) -> dict:
    """Deterministic-from-seed assignment with integer coordinates in
    [-bound, bound], supported on the parity component of each symbol."""
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be >= 1")
    rng = random.Random(seed)
    out = {}
    for sym in sorted(syms, key=lambda s: (s.name, s.parity)):
        coords = [ZERO] * A.dim
        for i in range(A.dim):
            if A.parity[i] == sym.parity:
                coords[i] = rat(rng.randint(-coeff_bound, coeff_bound))
        out[sym] = Element(A, coords)
    return out


def is_scalar(el: Element, A: StructAlgebra) -> bool:
    if A.unit is None:
        raise UnitError(f"{A.name} has no unit; scalar test undefined")
    return all(not c for i, c in enumerate(el.coords) if i != A.unit)


def _row_reduce_insert(rows: dict, coords):
    """rows: pivot -> normalized coord list.  Insert; return True if rank grew."""
    v = list(coords)
    n = len(v)
    while True:
        piv = next((i for i in range(n) if v[i]), None)
        if piv is None:
            return False
        if piv not in rows:
            inv = ONE / v[piv]
            rows[piv] = [c * inv for c in v]
            return True
        r = rows[piv]
        c = v[piv]
        v = [a - c * b for a, b in zip(v, r)]


def generates_whole(assignment: dict, A: StructAlgebra) -> bool:
    """True iff the unit together with iterated products of the assigned
    elements spans the whole algebra."""
    rows: dict = {}
    pool = []

    def feed(el: Element):
        if _row_reduce_insert(rows, el.coords):
            pool.append(el)
            return True
        return False

    if A.unit is not None:
        feed(A.basis_element(A.unit))
    for el in assignment.values():
        feed(el)
    grew = True
    while grew and len(rows) < A.dim:
        grew = False
        snapshot = list(pool)
        for p in snapshot:
            for q in snapshot:
                if feed(p * q):
                    grew = True
    return len(rows) == A.dim


def split_octonions() -> StructAlgebra:
    """The 8-dimensional split octonions as Zorn vector matrices
    ((a, v), (w, b)) with a, b scalars and v, w 3-vectors:

        product: a' = a1*a2 + v1.w2,  v' = a1*v2 + b2*v1 - w1 x w2,
                 w' = a2*w1 + b1*w2 + v1 x v2,  b' = b1*b2 + w1.v2

    Basis: 1, h = diag(1,-1), e1..e3 (upper vectors), f1..f3 (lower).
    Alternative, unital, center = scalars.
    """

    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    def cross(u, v):
        return (
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        )

    zero3 = (0, 0, 0)

    def unit3(i):
        return tuple(1 if k == i else 0 for k in range(3))

    zorn = [(1, zero3, zero3, 1), (1, zero3, zero3, -1)]
    zorn += [(0, unit3(i), zero3, 0) for i in range(3)]
    zorn += [(0, zero3, unit3(i), 0) for i in range(3)]
    labels = ["1", "h", "e1", "e2", "e3", "f1", "f2", "f3"]

    def mult(z1, z2):
        a1, v1, w1, b1 = z1
        a2, v2, w2, b2 = z2
        a = a1 * a2 + dot(v1, w2)
        v = tuple(a1 * v2[i] + b2 * v1[i] - cross(w1, w2)[i] for i in range(3))
        w = tuple(a2 * w1[i] + b1 * w2[i] + cross(v1, v2)[i] for i in range(3))
        b = b1 * b2 + dot(w1, v2)
        return a, v, w, b

    def decompose(z):
        a, v, w, b = z
        coords = [rat(a + b, 2), rat(a - b, 2)]
        coords += [rat(c) for c in v]
        coords += [rat(c) for c in w]
        return coords

    table = {}
    for i in range(8):
        for j in range(8):
            coords = decompose(mult(zorn[i], zorn[j]))
            entries = tuple((k, c) for k, c in enumerate(coords) if c)
            if entries:
                table[(i, j)] = entries
    return StructAlgebra("octonion", labels, [0] * 8, table, unit=0)


def _mask_sign(a: int, b: int) -> int:
    # (-1)^{#inversions} when merging the sorted generator lists of a and b
    sign = 1
    for j in range(b.bit_length()):
        if b >> j & 1:
            higher = a >> (j + 1)
            if bin(higher).count("1") & 1:
                sign = -sign
    return sign


def grassmann(r: int) -> StructAlgebra:
    """Exterior algebra on r anticommuting generators; dim 2^r, unital,
    graded by generator count mod 2."""
    if r < 1:
        raise ValueError("rank must be >= 1")
    dim = 1 << r

    def label(mask):
        if not mask:
            return "1"
        return "".join(f"x{i + 1}" for i in range(r) if mask >> i & 1)

    labels = [label(m) for m in range(dim)]
    parity = [bin(m).count("1") & 1 for m in range(dim)]
    table = {}
    for a in range(dim):
        for b in range(dim):
            if a & b:
                continue
            s = _mask_sign(a, b)
            table[(a, b)] = ((a | b, rat(s)),)
    return StructAlgebra(f"grassmann:{r}", labels, parity, table, unit=0)


def grassmann_envelope(r: int, A: StructAlgebra) -> StructAlgebra:
    """G(r) tensor A with the Koszul sign, graded by total parity.

    For an all-even A this is the plain tensor product graded by Grassmann
    degree; with A alternative it is an alternative superalgebra (its own
    envelope by a second Grassmann factor is a scalar extension of A by a
    commutative associative algebra).
    """
    G = grassmann(r)
    dim = G.dim * A.dim

    def idx(m, i):
        return m * A.dim + i

    labels = [
        f"{G.labels[m]}|{A.labels[i]}" for m in range(G.dim) for i in range(A.dim)
    ]
    parity = [
        (G.parity[m] + A.parity[i]) & 1 for m in range(G.dim) for i in range(A.dim)
    ]
    table = {}
    for (m, l), gent in G.table.items():
        gk, gc = gent[0]
        for (i, j), aent in A.table.items():
            sign = -ONE if (A.parity[i] and G.parity[l]) else ONE
            c0 = gc * sign
            entries = tuple((idx(gk, k), c0 * c) for k, c in aent)
            table[(idx(m, i), idx(l, j))] = entries
    unit = None
    if A.unit is not None:
        unit = idx(0, A.unit)
    return StructAlgebra(f"grassmann:{r}|{A.name}", labels, parity, table, unit=unit)


def medvedev_shestakov(k: int) -> StructAlgebra:
    """The exceptional alternative superalgebra A_n, n = 4k+2, dim 4n+5.

    Basis x (odd), v_0..v_n, v'_1..v'_n, u_0..u_n, u'_1..u'_n (parity i mod 2)
    and two even socle elements U, V that annihilate everything.  Writing
    e = v_0 (so e*e = u_0), the products are: right multiplication by x shifts
    every family up by one; left multiplication by x mixes a family with its
    primed partner, with the mixing matrix alternating with i; e-products land
    in the u-families; and the weight-n pairings between u- and v-families hit
    U and V with alternating signs.  Everything else is zero.  No unit.

    The grading by weight (x: 1, families: index, U and V: n) makes every
    product weight-additive, with weight > n truncated to zero; that cutoff is
    what makes the superalgebra alternative but not associative in a way no
    smaller quotient detects.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 4 * k + 2
    fams = [("v", 0), ("vp", 1), ("u", 0), ("up", 1)]
    names = [("x", 0)]
    names += [("v", i) for i in range(n + 1)]
    names += [("vp", i) for i in range(1, n + 1)]
    names += [("u", i) for i in range(n + 1)]
    names += [("up", i) for i in range(1, n + 1)]
    names += [("U", 0), ("V", 0)]
    idx = {nm: i for i, nm in enumerate(names)}

    def label(nm):
        f, i = nm
        if f in ("x", "U", "V"):
            return f
        return ("v" if f[0] == "v" else "u") + ("'" if f.endswith("p") else "") + str(i)

    def parity(nm):
        f, i = nm
        if f in ("U", "V"):
            return 0
        if f == "x":
            return 1
        return i % 2

    table: dict[tuple[int, int], tuple] = {}

    def setp(a, b, vec):
        entries = tuple(sorted((idx[nm], rat(c)) for nm, c in vec.items() if c))
        if entries:
            table[(idx[a], idx[b])] = entries

    for f, lo in (("v", 0), ("u", 0), ("vp", 1), ("up", 1)):
        for i in range(lo, n):
            setp((f, i), ("x", 0), {(f, i + 1): 1})
    setp(("v", 0), ("v", 0), {("u", 0): 1})

    for i in range(0, n):
        if i % 2 == 0:
            setp(("x", 0), ("v", i), {("vp", i + 1): 1})
            setp(("x", 0), ("u", i), {("up", i + 1): 1})
            if i >= 1:
                setp(("x", 0), ("vp", i), {("v", i + 1): -1, ("vp", i + 1): -1})
                setp(("x", 0), ("up", i), {("u", i + 1): -1, ("up", i + 1): -1})
        else:
            setp(("x", 0), ("v", i), {("v", i + 1): 1, ("vp", i + 1): 1})
            setp(("x", 0), ("u", i), {("u", i + 1): 1, ("up", i + 1): 1})
            setp(("x", 0), ("vp", i), {("v", i + 1): -1})
            setp(("x", 0), ("up", i), {("u", i + 1): -1})

    for i in range(1, n + 1):
        s = (-1) ** i
        setp(("vp", i), ("v", 0), {("up", i): -s})
        setp(("v", i), ("v", 0), {("u", i): s, ("up", i): s})
        if i % 2 == 0:
            setp(("v", 0), ("vp", i), {("u", i): -1})
            setp(("v", 0), ("v", i), {("up", i): -1})
        else:
            setp(("v", 0), ("vp", i), {("u", i): -1, ("up", i): -1})
            setp(("v", 0), ("v", i), {("u", i): 1})

    def valid(nm):
        f, i = nm
        return 0 <= i <= n and not (f in ("vp", "up") and i < 1)

    for m in range(n // 2 + 1):
        s = rat(-1) ** m
        hits_U = [
            (("u", n - 2 * m), ("v", 2 * m), 1),
            (("v", 2 * m + 1), ("u", n - 2 * m - 1), 1),
            (("v", 2 * m), ("up", n - 2 * m), 1),
            (("up", n - 2 * m - 1), ("v", 2 * m + 1), -1),
            (("up", n - 2 * m), ("vp", 2 * m), 1),
            (("vp", 2 * m + 1), ("up", n - 2 * m - 1), 1),
        ]
        hits_V = [
            (("v", 2 * m), ("u", n - 2 * m), 1),
            (("u", n - 2 * m - 1), ("v", 2 * m + 1), -1),
            (("vp", 2 * m + 1), ("u", n - 2 * m - 1), 1),
            (("u", n - 2 * m), ("vp", 2 * m), 1),
            (("vp", 2 * m), ("up", n - 2 * m), 1),
            (("up", n - 2 * m - 1), ("vp", 2 * m + 1), -1),
        ]
        hits_UV = [
            (("up", n - 2 * m), ("v", 2 * m), 1),
            (("u", n - 2 * m - 1), ("vp", 2 * m + 1), -1),
            (("v", 2 * m + 1), ("up", n - 2 * m - 1), 1),
            (("vp", 2 * m), ("u", n - 2 * m), 1),
        ]
        for a, b, sg in hits_U:
            if valid(a) and valid(b):
                setp(a, b, {("U", 0): sg * s})
        for a, b, sg in hits_V:
            if valid(a) and valid(b):
                setp(a, b, {("V", 0): sg * s})
        for a, b, sg in hits_UV:
            if valid(a) and valid(b):
                setp(a, b, {("U", 0): -sg * s, ("V", 0): -sg * s})

    return StructAlgebra(
        f"medvedev:{k}",
        [label(nm) for nm in names],
        [parity(nm) for nm in names],
        table,
        unit=None,
    )


def table_to_text(A: StructAlgebra) -> str:
    lines = [
        f"dim {A.dim}",
        f"graded {1 if A.is_graded() else 0}",
        f"unit {A.unit if A.unit is not None else -1}",
        "labels " + " ".join(A.labels),
        "parity " + " ".join(str(p) for p in A.parity),
    ]
    for (i, j) in sorted(A.table):
        ent = " + ".join(f"{rat_str(c)}*{k}" for k, c in A.table[(i, j)])
        lines.append(f"{i} {j} -> {ent}")
    return "\n".join(lines) + "\n"


def table_from_text(text: str, name: str = "imported") -> StructAlgebra:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    header = {}
    rows = []
    for ln in lines:
        if "->" in ln:
            rows.append(ln)
        else:
            key, _, rest = ln.partition(" ")
            header[key] = rest
    dim = int(header["dim"])
    unit = int(header["unit"])
    labels = header["labels"].split()
    parity = [int(p) for p in header["parity"].split()]
    if len(labels) != dim or len(parity) != dim:
        raise ValueError("header is inconsistent")
    table = {}
    for ln in rows:
        left, _, right = ln.partition("->")
        i, j = (int(s) for s in left.split())
        entries = []
        for piece in right.split("+"):
            cs, _, ks = piece.strip().partition("*")
            num, _, den = cs.partition("/")
            c = rat(int(num), int(den)) if den else rat(int(num))
            entries.append((int(ks), c))
        table[(i, j)] = tuple(entries)
    return StructAlgebra(name, labels, parity, table, unit=None if unit < 0 else unit)
