import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import FIELDS, polys, scalars
from unexpected.field import QQ, QQ_SQRT5
from unexpected.golden import B3_QUARTIC
from unexpected.poly import PolyMismatchError, SparsePoly, monomials

many = settings(max_examples=500)


def a(i, n=2, spec=QQ):
    return SparsePoly.var("a", i, n, spec)


def x(i, n=2, spec=QQ):
    return SparsePoly.var("x", i, n, spec)


def test_difference_of_squares():
    assert (x(0) + x(1)) * (x(0) - x(1)) == x(0) ** 2 - x(1) ** 2


def test_multiplying_by_one():
    f = a(0) * x(1) + 3 * x(2)
    assert f * 1 == f


def test_square_of_bilinear_form():
    f = a(0) * x(1) - a(1) * x(0)
    expected = a(0) ** 2 * x(1) ** 2 - 2 * a(0) * a(1) * x(0) * x(1) + a(1) ** 2 * x(0) ** 2
    assert f ** 2 == expected


def test_partial_derivatives():
    f = x(0, 3) ** 3 * x(1, 3) ** 2 * x(3, 3)
    assert f.partial_derivative("x", 0) == 3 * x(0, 3) ** 2 * x(1, 3) ** 2 * x(3, 3)
    assert (x(0) ** 2).partial_derivative("a", 0) == 0


def test_differential_operator_action():
    n = 3
    op = 2 * x(0, n) ** 2 * x(1, n) + x(3, n)
    f = x(0, n) ** 3 * x(1, n) ** 2 * x(3, n)
    assert f.apply_operator(op) == 24 * x(0, n) * x(1, n) * x(3, n) + x(0, n) ** 3 * x(1, n) ** 2


def test_evaluation_examples():
    f = a(0) * x(1) - a(1) * x(0)
    assert f.evaluate({("a", 0): 1, ("a", 1): 2}) == x(1) - 2 * x(0)
    g = x(0) ** 2 + x(1) ** 2
    assert g.value_at(x=(3, 4, 0)) == 25


def test_content_examples():
    f = a(0) ** 2 * x(0) + a(0) * a(1) * x(1)
    assert f.content_in_a() == a(0)
    assert (x(0) + x(1)).content_in_a() == 1
    assert (a(0) * a(1) * x(0) ** 2).content_in_a() == a(0) * a(1)


def test_content_of_zero_rejected():
    with pytest.raises(ValueError):
        SparsePoly.zero(2).content_in_a()


def test_star_examples():
    f = a(0) * (a(0) * x(1) - a(1) * x(0))
    assert f.star().equal_up_to_scalar(a(0) * x(1) - a(1) * x(0))
    g = a(0) * x(1) - a(1) * x(0)
    assert g.star() == g.normalized()


def test_diagonal_shift_of_bilinear_form():
    f = a(0) * x(1) - a(1) * x(0)
    shifted = f.diagonal_shift()
    # e lives in the a-slot
    assert shifted == a(0) * x(1) - a(1) * x(0)
    assert shifted.min_a_degree() == 1
    assert (x(0) ** 2).diagonal_shift().min_a_degree() == 0


def test_swap_examples():
    assert (a(0) * x(1)).swap_blocks() == a(1) * x(0)


def test_quartic_text_and_identities():
    F = SparsePoly.from_text(B3_QUARTIC, 2)
    assert F.bidegree() == (3, 4)
    assert F.diagonal_shift().min_a_degree() == 3
    base = F.evaluate({("a", 0): 1, ("x", 0): 1})
    assert base.substitute({("x", 1): a(1)}) == a(1) * (a(1) ** 2 - 1) * (x(2) - a(2)) ** 3
    assert base.substitute({("a", 1): x(1)}) == x(1) * (x(1) ** 2 - 1) * (x(2) - a(2)) ** 3


def test_text_serialization_round_trip():
    f = SparsePoly.from_text("3/2*a0*x1 + (1)+(2)t*x2^2", 2, QQ_SQRT5)
    assert SparsePoly.from_text(f.to_text(), 2, QQ_SQRT5) == f
    assert SparsePoly.from_text("0", 2) == SparsePoly.zero(2)


def test_mismatched_dimensions():
    with pytest.raises(PolyMismatchError):
        x(0, 2) + x(0, 3)


def test_monomial_order_is_graded():
    ms = monomials(3, 2)
    assert len(ms) == 6 and ms[0] == (2, 0, 0) and ms[-1] == (0, 0, 2)


@st.composite
def poly_triples(draw):
    spec = draw(st.sampled_from(FIELDS))
    p = polys(1, spec)
    return draw(p), draw(p), draw(p)


@many
@given(poly_triples())
def test_ring_axioms(fgh):
    f, g, h = fgh
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f - f == 0


@many
@given(poly_triples())
def test_bidegree_additivity(fgh):
    f, g, _ = fgh
    if f and g and f.is_bihomogeneous() and g.is_bihomogeneous():
        df, dg = f.bidegree(), g.bidegree()
        prod = f * g
        assert prod.bidegree() == (df[0] + dg[0], df[1] + dg[1])


@st.composite
def homogeneous_pair(draw):
    spec = draw(st.sampled_from(FIELDS))
    t, d = draw(st.integers(0, 2)), draw(st.integers(0, 2))
    terms = draw(st.lists(st.tuples(st.sampled_from(monomials(2, t)), st.sampled_from(monomials(2, d)), scalars(spec)), max_size=4))
    f = SparsePoly.zero(1, spec)
    for ae, xe, c in terms:
        f = f + SparsePoly.monomial(ae, xe, c, spec)
    return f


@many
@given(homogeneous_pair())
def test_star_is_idempotent_and_primitive(f):
    if not f:
        return
    s = f.star()
    assert s.content_in_a() == 1
    assert s.star() == s
    assert f.equal_up_to_scalar(s * f.content_in_a())


@many
@given(homogeneous_pair())
def test_diagonal_shift_preserves_degree(f):
    g = f.diagonal_shift()
    if f:
        assert g.is_homogeneous() and g.degree() == f.degree()


@many
@given(homogeneous_pair(), st.integers(1, 3))
def test_diagonal_shift_detects_forced_vanishing(f, m):
    # multiplying by (a0 x1 - a1 x0)^m forces order-m vanishing along a = x
    if not f:
        return
    a0, a1 = (SparsePoly.var("a", i, 1, f.field) for i in (0, 1))
    x0, x1 = (SparsePoly.var("x", i, 1, f.field) for i in (0, 1))
    w = a0 * x1 - a1 * x0
    g = f * w ** m
    assert g.diagonal_shift().min_a_degree() >= m


@many
@given(polys(1), st.integers(0, 1), scalars(QQ))
def test_evaluate_commutes_with_other_partials(f, i, v):
    j = 1 - i
    lhs = f.partial_derivative("x", i).evaluate({("a", j): v})
    rhs = f.evaluate({("a", j): v}).partial_derivative("x", i)
    assert lhs == rhs


@many
@given(polys(1))
def test_swap_is_involution(f):
    assert f.swap_blocks().swap_blocks() == f


@many
@given(polys(1, QQ_SQRT5))
def test_text_round_trip(f):
    assert SparsePoly.from_text(f.to_text(), 1, QQ_SQRT5) == f
