"""Constructors for the named elements of the theory.

Three families live here: the left-normed commutator chains g_m and the
skew central candidates u_n built from them, the nested associator chains
S_n / T_n together with their delta-linearizations, and the catalog of
degree-7 (and classical degree-12/16) central candidates.  Builders return
exact Expr values over caller-supplied symbols; parity constraints are
enforced where a construction only makes sense with odd inputs.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from .terms import (
    Expr,
    GenSym,
    ParityError,
    alt_op,
    associator,
    commutator,
    gen,
    jordan,
    left_normed_comm,
    left_pow,
    mul,
    partial_linearize,
)


def _expr(v) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, GenSym):
        return gen(v.name, v.parity)
    raise TypeError(f"expected Expr or GenSym, got {type(v).__name__}")


def _require_parity(name: str, e: Expr, want: int) -> None:
    p = e.parity()
    if p != want:
        raise ParityError(f"{name} must be {'odd' if want else 'even'}")


def delta_op(build: Callable[[Expr, Expr], Expr], a) -> Expr:
    """build(a^2, a) - build(a, a^2): the written-minus-swapped convention
    for a function linear in its two designated slots."""
    a = _expr(a)
    sq = mul(a, a)
    return build(sq, a) - build(a, sq)


def g_m(a, xs: Sequence) -> Expr:
    """Left-normed iterated commutator [a, x_1, ..., x_m] (m may be 0)."""
    return left_normed_comm(_expr(a), [_expr(x) for x in xs])


def u_n(n: int, a, xs: Sequence) -> Expr:
    """([a,x_1,...,x_{n-1}], a^2, x_n) - ([a^2,x_1,...,x_{n-1}], a, x_n).

    Multidegree 3 in a and 1 in each x_i; skew central candidate for
    n = 4m, 4m+1 and an identity for n = 4m+2, 4m+3."""
    if n < 2:
        raise ValueError("u_n needs n >= 2")
    xs = [_expr(x) for x in xs]
    if len(xs) != n:
        raise ValueError(f"u_{n} takes exactly {n} arguments, got {len(xs)}")
    a = _expr(a)
    sq = mul(a, a)
    head, last = xs[:-1], xs[-1]
    return associator(left_normed_comm(a, head), sq, last) - associator(
        left_normed_comm(sq, head), a, last
    )


def _chain(b: Expr, x: Expr, k: int) -> Expr:
    # b_0 = b, b_{i+1} = [b_i, x]; the super sign rides on commutator()
    out = b
    for _ in range(k):
        out = commutator(out, x)
    return out


def u_n_super(n: int, a, x) -> Expr:
    """Two-generator chain form ((a^2)_{n-1}, a, x) - (a_{n-1}, a^2, x)
    with b_{i+1} = [b_i, x]; a even, x odd."""
    if n < 2:
        raise ValueError("u_n needs n >= 2")
    a, x = _expr(a), _expr(x)
    _require_parity("a", a, 0)
    _require_parity("x", x, 1)
    sq = mul(a, a)
    return associator(_chain(sq, x, n - 1), a, x) - associator(
        _chain(a, x, n - 1), sq, x
    )


def _assoc_chain(head: Expr, x: Expr, steps: int) -> Expr:
    # A_{j+1} = (A_j, x, x), nested j = steps times
    out = head
    for _ in range(steps):
        out = associator(out, x, x)
    return out


def S_n(n: int, a, b, x) -> Expr:
    """([(...(a,x,x),...,x,x), x], x, b) with n-2 chain copies of x;
    n even, n >= 4; total degree n in x."""
    if n < 4 or n % 2:
        raise ValueError("S_n needs even n >= 4")
    a, b, x = _expr(a), _expr(b), _expr(x)
    inner = _assoc_chain(a, x, (n - 2) // 2)
    return associator(commutator(inner, x), x, b)


def T_n(n: int, a, b, x) -> Expr:
    """((...(a,x,x),...,x,x), x, b) with n-1 chain copies of x;
    n odd, n >= 3; total degree n in x."""
    if n < 3 or n % 2 == 0:
        raise ValueError("T_n needs odd n >= 3")
    a, b, x = _expr(a), _expr(b), _expr(x)
    inner = _assoc_chain(a, x, (n - 1) // 2)
    return associator(inner, x, b)


def tilde_S(n: int, e, z, t, x) -> Expr:
    """Six-term linearization of delta(S_n(e^2, e, x)) in e, with odd z, t:

        S_n(zt-tz, e, x) + S_n(e o z, t, x) - S_n(e o t, z, x)
      - S_n(e, zt-tz, x) + S_n(t, e o z, x) - S_n(z, e o t, x)
    """
    e, z, t, x = _expr(e), _expr(z), _expr(t), _expr(x)
    _require_parity("z", z, 1)
    _require_parity("t", t, 1)
    zt = mul(z, t) - mul(t, z)
    return (
        S_n(n, zt, e, x)
        + S_n(n, jordan(e, z), t, x)
        - S_n(n, jordan(e, t), z, x)
        - S_n(n, e, zt, x)
        + S_n(n, t, jordan(e, z), x)
        - S_n(n, z, jordan(e, t), x)
    )


def T_prime(n: int, e, a, z, x) -> Expr:
    """Six-term linearization of delta(T_n(e^2, e, x)) in e, with even a
    and odd z:

        T_n(e o a, z, x) - T_n(e o z, a, x) - T_n(a o z, e, x)
      + T_n(z, e o a, x) - T_n(a, e o z, x) - T_n(e, a o z, x)
    """
    e, a, z, x = _expr(e), _expr(a), _expr(z), _expr(x)
    return (
        T_n(n, jordan(e, a), z, x)
        - T_n(n, jordan(e, z), a, x)
        - T_n(n, jordan(a, z), e, x)
        + T_n(n, z, jordan(e, a), x)
        - T_n(n, a, jordan(e, z), x)
        - T_n(n, e, jordan(a, z), x)
    )


def T_double_prime(n: int, e, a, z, t: GenSym, x: GenSym) -> Expr:
    """t d/dx of T_prime: replace one occurrence of x by t in all ways.

    x and t must be symbols of equal parity.  Passing z = x (the same
    symbol) is allowed and gives the substitute-first reading, where the
    derivative also hits the occurrences contributed through the z slot."""
    if not isinstance(x, GenSym) or not isinstance(t, GenSym):
        raise TypeError("the derivative slots x and t must be symbols")
    if x.parity != t.parity:
        raise ParityError("t must have the parity of x")
    return partial_linearize(T_prime(n, e, a, z, gen(x.name, x.parity)), x, t)


def fil_super(a, x) -> Expr:
    """The degree-7 central candidate on an even a and odd x:

        ([x,[xx,x]] o a - [x, [xx,x] o a], a, x)
      - ((x o [xx,a]) o a - x o ([xx,a] o a), x, x)
    """
    a, x = _expr(a), _expr(x)
    _require_parity("a", a, 0)
    _require_parity("x", x, 1)
    xx = mul(x, x)
    t1 = jordan(commutator(x, commutator(xx, x)), a) - commutator(
        x, jordan(commutator(xx, x), a)
    )
    t2 = jordan(jordan(x, commutator(xx, a)), a) - jordan(
        x, jordan(commutator(xx, a), a)
    )
    return associator(t1, a, x) - associator(t2, x, x)


def fil_skew(a, xs: Sequence) -> Expr:
    """Ordinary skew-symmetrized form over even x_1..x_5:

        (([x1,[x2 x3, x4]] o a - [x1, [x2 x3, x4] o a], a, x5)
       - ((x1 o [x2 x3, a]) o a - x1 ([x2 x3, a] o a), x4, x5))_alt

    The second line's final product x1(...) is a plain product, not o.
    Careful: this form is not scalar-valued over the octonions, and no
    resigning or regrouping of its pieces is; the center checks in the
    reproduce pipeline report the computed non-scalar image as found."""
    a = _expr(a)
    xs = [_expr(x) for x in xs]
    if len(xs) != 5:
        raise ValueError("fil_skew takes five x arguments")
    x1, x2, x3, x4, x5 = xs
    w = commutator(mul(x2, x3), x4)
    t1 = jordan(commutator(x1, w), a) - commutator(x1, jordan(w, a))
    v = commutator(mul(x2, x3), a)
    t2 = jordan(jordan(x1, v), a) - mul(x1, jordan(v, a))
    body = associator(t1, a, x5) - associator(t2, x4, x5)
    syms = []
    for x in xs:
        (m,) = x.coeffs
        if not m.is_leaf():
            raise TypeError("fil_skew alternates plain symbols only")
        syms.append(m.node)
    return alt_op(body, syms)


def bracket_power(x, i: int) -> Expr:
    """x^[1] = x, x^[i+1] = [x^[i], x] for an odd x."""
    if i < 1:
        raise ValueError("bracket power needs i >= 1")
    x = _expr(x)
    _require_parity("x", x, 1)
    out = x
    for _ in range(i - 1):
        out = commutator(out, x)
    return out


def z_n(n: int, x) -> Expr:
    """[x^[n], xx] for odd x; central candidate for n >= 5."""
    x = _expr(x)
    return commutator(bracket_power(x, n), mul(x, x))


def prop6_relation(m: int) -> Expr:
    """2 u_{4m+1} + u_{4m}(a, a_1, x) with a_1 = [a, x], built over an even
    a and odd x; expected to vanish identically.

    u_{4m}(a, y, x) is the chain-form linearization
        ((a^2)_{4m-1}, y, x) - ((a o y)_{4m-1}, a, x)
      - (a_{4m-1}, a o y, x) + (y_{4m-1}, a^2, x)
    and a_1 is substituted for y as a chain element, which makes the whole
    relation multihomogeneous of degree 3 in a and 4m+1 in x."""
    if m < 1:
        raise ValueError("m must be >= 1")
    a, x = gen("a"), gen("x", 1)
    sq = mul(a, a)
    a1 = commutator(a, x)
    k = 4 * m - 1
    lin = (
        associator(_chain(sq, x, k), a1, x)
        - associator(_chain(jordan(a, a1), x, k), a, x)
        - associator(_chain(a, x, k), jordan(a, a1), x)
        + associator(_chain(a1, x, k), sq, x)
    )
    return 2 * u_n_super(4 * m + 1, a, x) + lin


# ---------------------------------------------------------------------------
# the central-element catalog


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: Tuple[str, ...]
    parity: Dict[str, int]
    multidegree: Dict[str, int]
    status: str  # identity | central-candidate | nonzero-witness-target
    claim: str
    builder: Callable[[], Expr]

    def build(self) -> Expr:
        e = self.builder()
        if e.multidegree() != self.multidegree:
            raise AssertionError(f"{self.name}: multidegree drifted")
        return e


def central_catalog() -> List[CatalogEntry]:
    x, y, z, t, a = gen("x"), gen("y"), gen("z"), gen("t"), gen("a")
    xo = gen("x", 1)
    xs = [gen(f"x{i}") for i in range(1, 6)]
    return [
        CatalogEntry(
            name="comm-assoc-pow4",
            params=("x", "y", "z", "t"),
            parity={"x": 0, "y": 0, "z": 0, "t": 0},
            multidegree={"x": 4, "y": 4, "z": 4, "t": 4},
            status="central-candidate",
            claim="left-normed fourth power of [(x,y,z),t]; scalar image in"
            " a generated unital simple alternative algebra",
            builder=lambda: left_pow(commutator(associator(x, y, z), t), 4),
        ),
        CatalogEntry(
            name="assoc-pow4",
            params=("x", "y", "z"),
            parity={"x": 0, "y": 0, "z": 0},
            multidegree={"x": 4, "y": 4, "z": 4},
            status="central-candidate",
            claim="left-normed fourth power of the associator; nonzero"
            " scalar image at generic assignments",
            builder=lambda: left_pow(associator(x, y, z), 4),
        ),
        CatalogEntry(
            name="fil-super",
            params=("a", "x"),
            parity={"a": 0, "x": 1},
            multidegree={"a": 2, "x": 5},
            status="central-candidate",
            claim="degree-7 candidate on one even and one odd generator",
            builder=lambda: fil_super(a, xo),
        ),
        CatalogEntry(
            name="fil-skew",
            params=("a", "x1", "x2", "x3", "x4", "x5"),
            parity={"a": 0, "x1": 0, "x2": 0, "x3": 0, "x4": 0, "x5": 0},
            multidegree={"a": 2, "x1": 1, "x2": 1, "x3": 1, "x4": 1, "x5": 1},
            status="central-candidate",
            claim="skew-symmetrization over x1..x5 of the degree-7 candidate",
            builder=lambda: fil_skew(a, xs),
        ),
        CatalogEntry(
            name="z5",
            params=("x",),
            parity={"x": 1},
            multidegree={"x": 7},
            status="central-candidate",
            claim="[x^[5], xx]: first member of the iterated-bracket series",
            builder=lambda: z_n(5, xo),
        ),
        CatalogEntry(
            name="u4-super",
            params=("a", "x"),
            parity={"a": 0, "x": 1},
            multidegree={"a": 3, "x": 4},
            status="central-candidate",
            claim="chain form ((a^2)_3, a, x) - (a_3, a^2, x) of the"
            " degree-7 skew central candidate",
            builder=lambda: u_n_super(4, a, xo),
        ),
    ]


def catalog_json() -> List[dict]:
    """JSON-ready listing: name, parameters, multidegree, parities, claim."""
    out = []
    for entry in central_catalog():
        out.append(
            {
                "name": entry.name,
                "params": list(entry.params),
                "parity": dict(entry.parity),
                "multidegree": dict(entry.multidegree),
                "status": entry.status,
                "claim": entry.claim,
                "terms": len(entry.build()),
            }
        )
    return out
