"""Multivariate gcd over an exact field via recursive subresultant PRS.

Polynomials here are plain dicts mapping exponent tuples (all of one length)
to nonzero :class:`FieldScalar` coefficients.  This is the coefficient ring
K[a_0..a_n] of the bi-graded polynomials, kept separate so the gcd code can
stay free of block bookkeeping.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Tuple

from .field import FieldScalar, FieldSpec

Exp = Tuple[int, ...]
DPoly = Dict[Exp, FieldScalar]


class InexactDivisionError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


# basic arithmetic on dict polynomials


def d_add(f: DPoly, g: DPoly) -> DPoly:
    out = dict(f)
    for e, c in g.items():
        v = out.get(e)
        if v is None:
            out[e] = c
        else:
            v = v + c
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def d_sub(f: DPoly, g: DPoly) -> DPoly:
    out = dict(f)
    for e, c in g.items():
        v = out.get(e)
        if v is None:
            out[e] = -c
        else:
            v = v - c
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def d_scale(f: DPoly, c: FieldScalar) -> DPoly:
    if not c:
        return {}
    return {e: v * c for e, v in f.items()}


def d_mul_term(f: DPoly, exp: Exp, c: FieldScalar) -> DPoly:
    return {tuple(x + y for x, y in zip(e, exp)): v * c for e, v in f.items()}


def d_mul(f: DPoly, g: DPoly) -> DPoly:
    if len(f) > len(g):
        f, g = g, f
    out: DPoly = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = out.get(e)
            out[e] = c1 * c2 if v is None else v + c1 * c2
    return {e: c for e, c in out.items() if c}


def d_pow(f: DPoly, k: int, nvars: int, spec: FieldSpec) -> DPoly:
    result = d_const(spec.one, nvars)
    base = f
    while k:
        if k & 1:
            result = d_mul(result, base)
        base = d_mul(base, base)
        k >>= 1
    return result


def d_const(c: FieldScalar, nvars: int) -> DPoly:
    return {(0,) * nvars: c} if c else {}


def d_is_const(f: DPoly) -> bool:
    return len(f) == 1 and not any(next(iter(f)))


def d_lead(f: DPoly) -> Tuple[Exp, FieldScalar]:
    """Leading term for graded lex order with variable 0 largest."""
    e = max(f, key=lambda k: (sum(k), k))
    return e, f[e]


def d_monic(f: DPoly) -> DPoly:
    if not f:
        return f
    _, c = d_lead(f)
    if c == 1:
        return f
    return d_scale(f, c.inv())


def d_exact_div(f: DPoly, g: DPoly) -> DPoly:
    """Quotient f/g, raising :class:`InexactDivisionError` on a remainder."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    if not f:
        return {}
    if len(g) == 1:
        (ge, gc), = g.items()
        inv = gc.inv()
        out = {}
        for e, c in f.items():
            q = tuple(x - y for x, y in zip(e, ge))
            if min(q) < 0:
                raise InexactDivisionError("monomial does not divide")
            out[q] = c * inv
        return out
    ge, gc = d_lead(g)
    ginv = gc.inv()
    rem = dict(f)
    quot: DPoly = {}
    key = lambda k: (sum(k), k)
    while rem:
        fe = max(rem, key=key)
        q = tuple(x - y for x, y in zip(fe, ge))
        if min(q) < 0:
            raise InexactDivisionError("leading term not divisible")
        qc = rem[fe] * ginv
        quot[q] = qc
        for e, c in g.items():
            t = tuple(x + y for x, y in zip(e, q))
            v = rem.get(t)
            v = -(c * qc) if v is None else v - c * qc
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return quot


# univariate views


def degree_in(f: DPoly, var: int) -> int:
    return max((e[var] for e in f), default=-1)


def coeffs_in(f: DPoly, var: int) -> Dict[int, DPoly]:
    """Split f = sum_k c_k * v^k with each c_k free of v."""
    out: Dict[int, DPoly] = {}
    for e, c in f.items():
        k = e[var]
        rest = e[:var] + (0,) + e[var + 1:]
        out.setdefault(k, {})[rest] = c
    return out


def from_coeffs(cs: Dict[int, DPoly], var: int) -> DPoly:
    out: DPoly = {}
    for k, c in cs.items():
        for e, v in c.items():
            out[e[:var] + (k,) + e[var + 1:]] = v
    return out


def _lc(f: DPoly, var: int) -> DPoly:
    k = degree_in(f, var)
    return {e[:var] + (0,) + e[var + 1:]: c for e, c in f.items() if e[var] == k}


def _shift(f: DPoly, var: int, k: int) -> DPoly:
    return {e[:var] + (e[var] + k,) + e[var + 1:]: c for e, c in f.items()}


def prem(f: DPoly, g: DPoly, var: int) -> DPoly:
    """Pseudo-remainder of f by g in the variable ``var``."""
    df, dg = degree_in(f, var), degree_in(g, var)
    if dg < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    if df < dg:
        return dict(f)
    lcg = _lc(g, var)
    r = dict(f)
    steps = df - dg + 1
    while r and degree_in(r, var) >= dg:
        dr = degree_in(r, var)
        lcr = _lc(r, var)
        r = d_sub(d_mul(r, lcg), _shift(d_mul(g, lcr), var, dr - dg))
        steps -= 1
    if steps > 0 and r:
        r = d_mul(r, _pow_plain(lcg, steps))
    return r


def _pow_plain(f: DPoly, k: int) -> DPoly:
    result = None
    for _ in range(k):
        result = f if result is None else d_mul(result, f)
    return result if result is not None else {}


# gcd


def monomial_content(f: DPoly) -> Exp:
    it = iter(f)
    m = list(next(it))
    for e in it:
        for i, x in enumerate(e):
            if x < m[i]:
                m[i] = x
    return tuple(m)


def _active(f: DPoly) -> List[int]:
    if not f:
        return []
    nv = len(next(iter(f)))
    return [i for i in range(nv) if any(e[i] for e in f)]


def d_gcd(f: DPoly, g: DPoly) -> DPoly:
    """Monic gcd of two polynomials (gcd(0, 0) = 0)."""
    if not f:
        return d_monic(g)
    if not g:
        return d_monic(f)
    mf, mg = monomial_content(f), monomial_content(g)
    mono = tuple(min(x, y) for x, y in zip(mf, mg))
    fp = {tuple(x - y for x, y in zip(e, mf)): c for e, c in f.items()}
    gp = {tuple(x - y for x, y in zip(e, mg)): c for e, c in g.items()}
    h = _gcd_nomono(fp, gp)
    one = next(iter(f.values())).spec.one
    return d_mul_term(h, mono, one) if any(mono) else h


def _gcd_nomono(f: DPoly, g: DPoly) -> DPoly:
    spec = next(iter(f.values())).spec
    nv = len(next(iter(f)))
    if d_is_const(f) or d_is_const(g):
        return d_const(spec.one, nv)
    af, ag = _active(f), _active(g)
    common = [v for v in af if v in ag]
    if not common:
        return d_const(spec.one, nv)
    var = max(af + ag)
    if var not in af:
        f, g = g, f
    if var not in _active(g):
        # g is free of var, so it must divide every coefficient of f
        return _gcd_many([g] + list(coeffs_in(f, var).values()))
    return _gcd_recursive(f, g, var)


def _content_prim(f: DPoly, var: int) -> Tuple[DPoly, DPoly]:
    cont = _gcd_many(list(coeffs_in(f, var).values()))
    if d_is_const(cont):
        return cont, f
    return cont, d_exact_div(f, cont)


def _gcd_recursive(f: DPoly, g: DPoly, var: int) -> DPoly:
    cf, pf = _content_prim(f, var)
    cg, pg = _content_prim(g, var)
    c = d_gcd(cf, cg)
    if degree_in(pf, var) < degree_in(pg, var):
        pf, pg = pg, pf
    h = _subresultant_last(pf, pg, var)
    if degree_in(h, var) <= 0:
        return d_monic(c)
    _, hp = _content_prim(h, var)
    return d_monic(d_mul(c, hp))


def _subresultant_last(a: DPoly, b: DPoly, var: int) -> DPoly:
    """Last nonzero element of the subresultant PRS of a, b (deg a >= deg b)."""
    nv = len(next(iter(a)))
    spec = next(iter(a.values())).spec
    one = d_const(spec.one, nv)
    g, h = one, one
    while True:
        delta = degree_in(a, var) - degree_in(b, var)
        r = prem(a, b, var)
        if not r:
            return b
        if degree_in(r, var) == 0:
            return one
        a = b
        b = d_exact_div(r, d_mul(g, _pow_plain(h, delta) if delta else one))
        g = _lc(a, var)
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = d_exact_div(_pow_plain(g, delta), _pow_plain(h, delta - 1))


def _gcd_many(polys: Iterable[DPoly]) -> DPoly:
    ps = sorted((p for p in polys if p), key=len)
    if not ps:
        return {}
    result = d_monic(ps[0])
    for p in ps[1:]:
        if d_is_const(result):
            break
        result = d_gcd(result, p)
    return result


def gcd_list(polys: Iterable[DPoly]) -> DPoly:
    """Monic gcd of a family of polynomials, stopping early once it is 1."""
    return _gcd_many(polys)
