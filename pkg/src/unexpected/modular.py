"""Reduction of exact scalars modulo word-size primes.

A field element c0 + c1*t is sent to c0 + c1*r (mod p) where r is a root of
t^2 - P t - Q modulo p.  This is a ring map on p-integral elements, so a minor
that is nonzero mod p is nonzero over the field: ranks mod p are lower bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional

import flint

from .field import FieldScalar, FieldSpec

PRIME_START = 2**62


class BadPrimeError(ArithmeticError):
    """The prime divides a denominator or the field does not split."""


def primes_below(start: int = PRIME_START) -> Iterator[int]:
    p = start - 1
    while p > 2:
        if flint.fmpz(p).is_prime():
            yield p
        p -= 2 if p % 2 else 1


def _rat_mod(r: Fraction, p: int) -> int:
    den = r.denominator % p
    if den == 0:
        raise BadPrimeError(f"{p} divides a denominator")
    if r.denominator == 1:
        return r.numerator % p
    return r.numerator * pow(den, -1, p) % p


@dataclass(frozen=True)
class Embedding:
    """A ring map from the field's p-integral elements onto Z/p."""

    p: int
    spec: FieldSpec
    root: int = 0

    def __call__(self, x: FieldScalar) -> int:
        v = _rat_mod(x.c0, self.p)
        if x.c1:
            v = (v + _rat_mod(x.c1, self.p) * self.root) % self.p
        return v

    def rational(self, r) -> int:
        return _rat_mod(Fraction(r), self.p)

    def conjugate(self) -> "Embedding":
        if not self.spec.is_quadratic:
            return self
        return Embedding(self.p, self.spec, (self.rational(self.spec.p) - self.root) % self.p)


def embeddings(spec: FieldSpec, p: int) -> List[Embedding]:
    """Every embedding of ``spec`` into Z/p (empty if p is unusable)."""
    if not spec.is_quadratic:
        return [Embedding(p, spec, 0)]
    try:
        P = _rat_mod(spec.p, p)
        Q = _rat_mod(spec.q, p)
    except BadPrimeError:
        return []
    disc = (P * P + 4 * Q) % p
    if disc == 0:
        return []
    try:
        s = int(flint.nmod(disc, p).sqrt())
    except Exception:
        return []
    inv2 = pow(2, -1, p)
    r1 = (P + s) * inv2 % p
    r2 = (P - s) * inv2 % p
    return [Embedding(p, spec, r1), Embedding(p, spec, r2)]


def first_embedding(spec: FieldSpec, skip: int = 0, start: int = PRIME_START) -> Embedding:
    """The ``skip``-th usable embedding, one per prime, deterministically."""
    seen = 0
    for p in primes_below(start):
        embs = embeddings(spec, p)
        if not embs:
            continue
        if seen == skip:
            return embs[0]
        seen += 1
    raise RuntimeError("no usable prime found")


def nmod_matrix(rows: List[List[int]], nrows: int, ncols: int, p: int) -> "flint.nmod_mat":
    if nrows == 0 or ncols == 0:
        return flint.nmod_mat(nrows, ncols, p)
    flat = [v for row in rows for v in row]
    return flint.nmod_mat(nrows, ncols, flat, p)


def nmod_rank(rows: List[List[int]], nrows: int, ncols: int, p: int) -> int:
    if nrows == 0 or ncols == 0:
        return 0
    return nmod_matrix(rows, nrows, ncols, p).rank()


def rref_pivots(mat: "flint.nmod_mat") -> tuple:
    """Reduced echelon form together with its pivot columns."""
    R, rank = mat.rref()
    pivots = []
    col = 0
    for i in range(rank):
        while int(R[i, col]) == 0:
            col += 1
        pivots.append(col)
        col += 1
    return R, rank, pivots


def rational_reconstruct(a: int, m: int) -> Optional[Fraction]:
    """Smallest-height fraction congruent to ``a`` mod ``m``, if one exists."""
    a %= m
    bound = int((m // 2) ** 0.5) if m < 2**1000 else flint.fmpz(m // 2).isqrt()
    bound = int(bound)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)
