import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import dpolys
from unexpected.field import QQ, QQ_GOLDEN, FieldScalar
from unexpected.gcd import (
    InexactDivisionError,
    d_exact_div,
    d_gcd,
    d_is_const,
    d_monic,
    d_mul,
    gcd_list,
    monomial_content,
)


def poly(*pairs, spec=QQ):
    return {e: FieldScalar(c, 0, spec) for e, c in pairs}


def test_gcd_of_shared_linear_factor():
    # (a0 + a1)(a0 - a1) and (a0 + a1)^2
    f = poly(((2, 0), 1), ((0, 2), -1))
    g = poly(((2, 0), 1), ((1, 1), 2), ((0, 2), 1))
    assert d_gcd(f, g) == poly(((1, 0), 1), ((0, 1), 1))


def test_monomial_content():
    f = poly(((2, 1, 0), 3), ((1, 2, 0), 1))
    assert monomial_content(f) == (1, 1, 0)
    assert d_gcd(f, poly(((1, 0, 0), 5))) == poly(((1, 0, 0), 1))


def test_coprime():
    f = poly(((1, 0), 1), ((0, 1), 1))
    g = poly(((1, 0), 1), ((0, 1), -1))
    assert d_is_const(d_gcd(f, g))


def test_exact_division_rejects_remainder():
    f = poly(((2, 0), 1), ((0, 2), 1))
    g = poly(((1, 0), 1), ((0, 1), 1))
    with pytest.raises(InexactDivisionError):
        d_exact_div(f, g)


def test_gcd_over_golden_field():
    t = QQ_GOLDEN.gen
    lin = {(1, 0): QQ_GOLDEN.one, (0, 1): t}
    f = d_mul(lin, {(1, 0): QQ_GOLDEN.one, (0, 1): QQ_GOLDEN.one})
    g = d_mul(lin, {(1, 0): t, (0, 1): QQ_GOLDEN.one})
    assert d_gcd(f, g) == d_monic(lin)


@settings(max_examples=200)
@given(dpolys(3), dpolys(3), dpolys(3))
def test_common_factor_is_recovered(h, f, g):
    hf, hg = d_mul(h, f), d_mul(h, g)
    G = d_gcd(hf, hg)
    if not hf and not hg:
        assert G == {}
        return
    # the gcd divides both and is divisible by h
    d_exact_div(hf, G)
    d_exact_div(hg, G)
    if h:
        d_exact_div(G, h)


@settings(max_examples=200)
@given(st.lists(dpolys(2), min_size=1, max_size=4), dpolys(2))
def test_gcd_list_divides_all(polys, h):
    polys = [d_mul(p, h) for p in polys]
    G = gcd_list(polys)
    for p in polys:
        if p:
            d_exact_div(p, G)
