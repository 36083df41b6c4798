"""Tests for the structure-constant algebras and evaluation."""

import random

import pytest

from altalg.algebras import (
    Element,
    StructAlgebra,
    UnassignedError,
    UnitError,
    _row_reduce_insert,
    alternativity_violations,
    check_super_alternative,
    evaluate,
    generates_whole,
    grassmann,
    grassmann_envelope,
    is_scalar,
    medvedev_shestakov,
    random_assignment,
    split_octonions,
    table_from_text,
    table_to_text,
)
from altalg.scalars import rat
from altalg.terms import GenSym, ParityError, associator, commutator, gen, jordan, mul

O = split_octonions()


def closure_rank(A, elements):
    """Dimension of the unital subalgebra generated by the given elements."""
    rows: dict = {}
    pool = []

    def feed(el):
        if _row_reduce_insert(rows, el.coords):
            pool.append(el)

    if A.unit is not None:
        feed(A.basis_element(A.unit))
    for el in elements:
        feed(el)
    grew = True
    while grew:
        grew = False
        before = len(rows)
        for p in list(pool):
            for q in list(pool):
                feed(p * q)
        grew = len(rows) > before
    return len(rows)


# -- split octonions --------------------------------------------------------


def test_octonion_basics():
    assert O.dim == 8
    assert O.labels == ["1", "h", "e1", "e2", "e3", "f1", "f2", "f3"]
    assert O.unit == 0
    one = O.basis_element(0)
    for i in range(8):
        b = O.basis_element(i)
        assert one * b == b == b * one


def test_octonion_zorn_products():
    h = O.basis_element(1)
    e1, e2 = O.basis_element(2), O.basis_element(3)
    f1, f3 = O.basis_element(5), O.basis_element(7)
    one = O.basis_element(0)
    assert h * h == one
    assert e1 * e2 == f3
    assert e1 * f1 == (one + h).scale(rat(1, 2))
    assert f1 * e1 == (one - h).scale(rat(1, 2))
    assert (e1 * e1).is_zero()


def test_octonions_are_alternative_not_associative():
    assert check_super_alternative(O)
    a_, b_, c_ = (O.basis_element(i) for i in (2, 3, 5))
    assert not ((a_ * b_) * c_ - a_ * (b_ * c_)).is_zero()


def test_octonion_moufang():
    syms = [GenSym("p"), GenSym("q"), GenSym("r")]
    for seed in range(1, 21):
        asn = random_assignment(seed, syms, O)
        p, q, r = (asn[s] for s in syms)
        assert p * (q * (p * r)) == ((p * q) * p) * r
        assert ((r * p) * q) * p == r * (p * (q * p))
        assert (p * q) * (r * p) == (p * (q * r)) * p


def test_two_generic_octonions_span_a_quaternion_subalgebra():
    syms = [GenSym("p"), GenSym("q")]
    for seed in range(1, 6):
        asn = random_assignment(seed, syms, O)
        assert closure_rank(O, list(asn.values())) == 4
        assert not generates_whole(asn, O)


def test_three_generic_octonions_generate():
    syms = [GenSym("p"), GenSym("q"), GenSym("r")]
    for seed in range(1, 6):
        assert generates_whole(random_assignment(seed, syms, O), O)


def test_is_scalar():
    one = O.basis_element(0)
    assert is_scalar(one.scale(rat(7, 2)), O)
    assert is_scalar(O.zero(), O)
    assert not is_scalar(O.basis_element(1), O)
    with pytest.raises(UnitError):
        is_scalar(medvedev_shestakov(1).zero(), medvedev_shestakov(1))


# -- grassmann algebras -----------------------------------------------------


def test_grassmann_basics():
    G = grassmann(3)
    assert G.dim == 8
    assert G.unit == 0
    assert G.is_graded()
    x1, x2 = G.basis_element(1), G.basis_element(2)
    assert (x1 * x1).is_zero()
    assert x1 * x2 == -(x2 * x1)
    assert check_super_alternative(G)  # associative, hence surely passes


def test_grassmann_top_product():
    G = grassmann(3)
    x1, x2, x3 = (G.basis_element(1 << i) for i in range(3))
    top = (x1 * x2) * x3
    assert top == G.basis_element(7)
    assert (top * x1).is_zero()
    assert ((x1 * x2) * x3) == (x1 * (x2 * x3))


def test_grassmann_envelope_of_octonions():
    E = grassmann_envelope(2, O)
    assert E.dim == 32
    assert E.unit is not None
    assert check_super_alternative(E)


def test_grassmann_envelope_koszul_sign():
    A = medvedev_shestakov(1)
    E = grassmann_envelope(1, A)
    assert E.dim == 2 * A.dim
    # spot-check the super laws on random basis triples (full scan is slow)
    rng = random.Random(3)
    basis = [E.basis_element(i) for i in range(E.dim)]

    def assoc(p, q, r):
        return (p * q) * r - p * (q * r)

    for _ in range(400):
        i, j, k = (rng.randrange(E.dim) for _ in range(3))
        a1 = assoc(basis[i], basis[j], basis[k])
        a2 = assoc(basis[j], basis[i], basis[k])
        a3 = assoc(basis[i], basis[k], basis[j])
        s12 = -1 if (E.parity[i] and E.parity[j]) else 1
        s23 = -1 if (E.parity[j] and E.parity[k]) else 1
        assert (a1 + a2.scale(rat(s12))).is_zero()
        assert (a1 + a3.scale(rat(s23))).is_zero()


# -- the exceptional superalgebras ------------------------------------------


def test_dimensions():
    assert medvedev_shestakov(1).dim == 29
    assert medvedev_shestakov(2).dim == 45
    with pytest.raises(ValueError):
        medvedev_shestakov(0)


def test_super_alternativity_k1():
    assert check_super_alternative(medvedev_shestakov(1))


def test_frozen_products_k1():
    A = medvedev_shestakov(1)
    lbl = {name: i for i, name in enumerate(A.labels)}
    e = A.basis_element(lbl["v0"])
    x = A.basis_element(lbl["x"])
    assert e * e == A.basis_element(lbl["u0"])
    assert (x * x).is_zero()
    # [e,x] with e even: e*x - x*e
    assert e * x - x * e == A.basis_element(lbl["v1"]) - A.basis_element(lbl["v'1"])
    v1, v0 = A.basis_element(lbl["v1"]), A.basis_element(lbl["v0"])
    assert v1 * v0 == -(A.basis_element(lbl["u1"]) + A.basis_element(lbl["u'1"]))
    # top pairings land in the socle
    assert A.basis_element(lbl["u6"]) * v0 == A.basis_element(lbl["U"])
    assert v0 * A.basis_element(lbl["u6"]) == A.basis_element(lbl["V"])


def test_socle_annihilates():
    A = medvedev_shestakov(1)
    lbl = {name: i for i, name in enumerate(A.labels)}
    for socle in ("U", "V"):
        s = A.basis_element(lbl[socle])
        for i in range(A.dim):
            assert (s * A.basis_element(i)).is_zero()
            assert (A.basis_element(i) * s).is_zero()


def test_weight_grading():
    # products add the weights (x: 1, indexed families: their index, U, V: 7+)
    A = medvedev_shestakov(1)

    def weight(name):
        if name == "x":
            return 1
        if name in ("U", "V"):
            return 6
        return int(name.lstrip("uv'"))

    for (i, j), entries in A.table.items():
        w = weight(A.labels[i]) + weight(A.labels[j])
        for k, _ in entries:
            assert weight(A.labels[k]) == w or A.labels[k] in ("U", "V")


def test_parity_breaking_table_is_rejected():
    A = medvedev_shestakov(1)
    lbl = {name: i for i, name in enumerate(A.labels)}
    table = dict(A.table)
    table[(lbl["v0"], lbl["v0"])] = ((lbl["u1"], rat(1)),)  # even*even -> odd
    with pytest.raises(ParityError):
        StructAlgebra("mutant", A.labels, A.parity, table, unit=None)


def test_perturbed_table_fails_alternativity():
    A = medvedev_shestakov(1)
    lbl = {name: i for i, name in enumerate(A.labels)}
    table = dict(A.table)
    table[(lbl["v0"], lbl["v0"])] = ((lbl["u2"], rat(1)),)  # parity fine, law broken
    mutant = StructAlgebra("mutant", A.labels, A.parity, table, unit=None)
    assert not check_super_alternative(mutant)
    bad = next(iter(alternativity_violations(mutant)))
    assert bad[0] in ("left", "right")


# -- evaluation -------------------------------------------------------------


def test_evaluate_commutator_in_superalgebra():
    A = medvedev_shestakov(1)
    lbl = {name: i for i, name in enumerate(A.labels)}
    e_s, x_s = GenSym("e"), GenSym("x", 1)
    asn = {e_s: A.basis_element(lbl["v0"]), x_s: A.basis_element(lbl["x"])}
    out = evaluate(commutator(gen("e"), gen("x", 1)), asn, A)
    assert out == A.basis_element(lbl["v1"]) - A.basis_element(lbl["v'1"])
    out2 = evaluate(mul(gen("e"), gen("e")), asn, A)
    assert out2 == A.basis_element(lbl["u0"])


def test_evaluate_respects_parity_and_coverage():
    A = medvedev_shestakov(1)
    lbl = {name: i for i, name in enumerate(A.labels)}
    x_s = GenSym("x", 1)
    with pytest.raises(ParityError):
        evaluate(gen("x", 1), {x_s: A.basis_element(lbl["v0"])}, A)
    with pytest.raises(UnassignedError):
        evaluate(mul(gen("x", 1), gen("y", 1)), {x_s: A.basis_element(lbl["x"])}, A)
    with pytest.raises(ValueError):
        evaluate(gen("p"), {GenSym("p"): O.basis_element(0)}, A)


def test_evaluate_linearity_and_memo():
    syms = [GenSym("p"), GenSym("q"), GenSym("r")]
    asn = random_assignment(9, syms, O)
    e = associator(gen("p"), gen("q"), gen("r")) - jordan(gen("p"), gen("r"))
    p, q, r = (asn[s] for s in syms)
    expect = (p * q) * r - p * (q * r) - (p * r + r * p)
    assert evaluate(e, asn, O) == expect


def test_random_assignment_contract():
    syms = [GenSym("p"), GenSym("x", 1)]
    A = medvedev_shestakov(1)
    a1 = random_assignment(42, syms, A, coeff_bound=5)
    a2 = random_assignment(42, syms, A, coeff_bound=5)
    for s in syms:
        assert a1[s] == a2[s]
        assert a1[s].support_parities() <= {s.parity}
        assert all(abs(c) <= 5 for c in a1[s].coords)
    assert random_assignment(43, syms, A) != a1
    with pytest.raises(ValueError):
        random_assignment(1, syms, A, coeff_bound=0)


# -- table serialization ----------------------------------------------------


def test_table_text_round_trip():
    for A in (O, grassmann(2), medvedev_shestakov(1)):
        text = table_to_text(A)
        B = table_from_text(text, name=A.name)
        assert B.dim == A.dim
        assert B.labels == A.labels
        assert B.parity == A.parity
        assert B.unit == A.unit
        assert B.table == A.table


def test_table_text_is_stable():
    assert table_to_text(O) == table_to_text(split_octonions())
