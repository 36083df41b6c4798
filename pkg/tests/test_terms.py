"""Tests for the free-expression layer: monomials, operations, linearization."""

import pytest
from hypothesis import given, settings, strategies as st

from altalg.scalars import ONE, ZERO, rat
from altalg.terms import (
    DegreeError,
    Expr,
    GenSym,
    Monomial,
    ParityError,
    alt_op,
    associator,
    commutator,
    delta_swap,
    dfun,
    gen,
    jacobian,
    jordan,
    left_normed_comm,
    left_pow,
    mul,
    multilinearize,
    partial_linearize,
    rename,
    substitute,
    sym_op,
)

a, b, c = gen("a"), gen("b"), gen("c")
x, y, z = gen("x", 1), gen("y", 1), gen("z", 1)
A, B, C = GenSym("a"), GenSym("b"), GenSym("c")
X, Y = GenSym("x", 1), GenSym("y", 1)


def test_gensym_identity_includes_parity():
    assert GenSym("a") == GenSym("a")
    assert GenSym("a") != GenSym("a", 1)
    assert GenSym("a") != GenSym("b")
    assert len({GenSym("a"), GenSym("a"), GenSym("a", 1)}) == 2


def test_monomial_degree_and_parity():
    m = Monomial((Monomial(A), Monomial((Monomial(X), Monomial(Y)))))
    assert m.degree == 3
    assert m.parity == 0  # two odd leaves
    assert m.multidegree() == {"a": 1, "x": 1, "y": 1}
    assert [s.name for s in m.leaves()] == ["a", "x", "y"]


def test_expr_arithmetic_cancels():
    e = a + b - a
    assert e == b
    assert (e - b).is_zero()
    assert 2 * a - a - a == Expr()
    assert rat(1, 2) * (2 * a) == a


def test_mul_is_nonassociative():
    assert mul(mul(a, b), c) != mul(a, mul(b, c))
    assert associator(a, b, c) == mul(mul(a, b), c) - mul(a, mul(b, c))


def test_commutator_even_and_odd():
    # even-even and even-odd anticommute the reversed word
    assert commutator(a, b) == mul(a, b) - mul(b, a)
    assert commutator(a, x) == mul(a, x) - mul(x, a)
    # odd-odd picks up the Koszul sign
    assert commutator(x, y) == mul(x, y) + mul(y, x)
    assert commutator(x, x) == 2 * mul(x, x)


def test_jordan_even_and_odd():
    assert jordan(a, b) == mul(a, b) + mul(b, a)
    assert jordan(a, a) == 2 * mul(a, a)
    assert jordan(x, y) == mul(x, y) - mul(y, x)
    assert jordan(x, x).is_zero()


def test_jacobian_term_count():
    assert len(jacobian(a, b, c)) == 12


def test_dfun_vanishes_on_repeated_argument():
    assert dfun(a, b, b).is_zero()
    assert dfun(a, b, c) == -dfun(a, c, b)


def test_left_normed_comm_and_pow():
    assert left_normed_comm(a, [b, c]) == commutator(commutator(a, b), c)
    assert left_pow(a, 1) == a
    assert left_pow(a, 3) == mul(mul(a, a), a)
    with pytest.raises(ValueError):
        left_pow(a, 0)


def test_parity_of_expr():
    assert mul(a, b).parity() == 0
    assert mul(a, x).parity() == 1
    assert mul(x, y).parity() == 0
    assert (a + x).parity() is None  # mixed parity has no common value
    assert Expr().parity() == 0


def test_partial_linearize_basic():
    t = GenSym("t")
    e = mul(a, a)
    assert partial_linearize(e, A, t) == mul(a, gen("t")) + mul(gen("t"), a)
    # degree 0 in the variable gives 0
    assert partial_linearize(b, A, t).is_zero()


def test_partial_linearize_leibniz_even_and_odd():
    # lin(e*f) = lin(e)*f + e*lin(f), sign-free by construction
    t = GenSym("t", 1)
    e = mul(x, a)
    f = mul(b, x)
    lhs = partial_linearize(mul(e, f), X, t)
    rhs = mul(partial_linearize(e, X, t), f) + mul(e, partial_linearize(f, X, t))
    assert lhs == rhs


def test_multilinearize_associator():
    x1, x2 = GenSym("x1", 1), GenSym("x2", 1)
    e = associator(x, x, y)
    out = multilinearize(e, X, [x1, x2])
    assert len(out) == 4
    assert out.multidegree() == {"x1": 1, "x2": 1, "y": 1}
    # no division: substituting back x for both copies gives 2! * e
    back = rename(out, {x1: X, x2: X})
    assert back == 2 * e


def test_multilinearize_requires_uniform_degree():
    with pytest.raises(DegreeError):
        multilinearize(a + mul(a, a), A, [GenSym("a1"), GenSym("a2")])


def test_rename_parity_strict():
    with pytest.raises(ParityError):
        rename(x, {X: GenSym("w")})
    out = rename(mul(a, x), {A: B, X: Y})
    assert out == mul(b, y)


def test_substitute_homomorphic():
    out = substitute(mul(a, b), {A: a + c})
    assert out == mul(a, b) + mul(c, b)
    # parity of the replacement must match the symbol
    with pytest.raises(ParityError):
        substitute(x, {X: a})


def test_substitute_expands_products():
    out = substitute(mul(a, a), {A: b + c})
    assert out == mul(b, b) + mul(b, c) + mul(c, b) + mul(c, c)


def test_delta_swap():
    e = mul(mul(a, a), b)
    with pytest.raises(DegreeError):
        delta_swap(e, A, B)
    f = mul(a, b)
    assert delta_swap(f, A, B) == mul(a, b) - mul(b, a)


def test_alt_op_signs():
    e = mul(mul(a, b), c)
    out = alt_op(e, [A, B, C])
    assert len(out) == 6
    # swapping two arguments negates
    assert rename(out, {A: B, B: A}) == -out


def test_sym_op_invariance():
    e = mul(mul(a, b), c)
    out = sym_op(e, [A, B, C])
    assert rename(out, {A: B, B: A}) == out
    assert len(out) == 6


def test_alt_op_requires_multilinear():
    with pytest.raises(DegreeError):
        alt_op(mul(a, a), [A, B])


names = st.sampled_from(["p", "q", "r"])


@st.composite
def small_exprs(draw, depth=2):
    if depth == 0 or draw(st.booleans()):
        return gen(draw(names))
    l = draw(small_exprs(depth=depth - 1))
    r = draw(small_exprs(depth=depth - 1))
    op = draw(st.sampled_from(["mul", "add", "comm"]))
    if op == "mul":
        return mul(l, r)
    if op == "add":
        return l + r
    return commutator(l, r)


@given(small_exprs(), small_exprs())
@settings(max_examples=60, deadline=None)
def test_mul_distributes(e, f):
    g = gen("p")
    assert mul(e + g, f) == mul(e, f) + mul(g, f)
    assert mul(e, f + g) == mul(e, f) + mul(e, g)


@given(small_exprs())
@settings(max_examples=60, deadline=None)
def test_scalar_action(e):
    assert 0 * e == Expr()
    assert 1 * e == e
    assert rat(2, 3) * (3 * e) == 2 * e
    assert -(-e) == e


@given(small_exprs(), small_exprs())
@settings(max_examples=60, deadline=None)
def test_commutator_jordan_decompose_product(e, f):
    # ef = ([e,f] + e o f) / 2 for even arguments
    assert commutator(e, f) + jordan(e, f) == 2 * mul(e, f)
