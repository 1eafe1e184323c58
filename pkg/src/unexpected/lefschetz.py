"""Lefschetz properties of ideals generated by powers of linear forms.

For I = (L_1^d, ..., L_r^d) and a general linear form L we compute the rank of
multiplication by L^e from [R/I]_i to [R/I]_{i+e}.  With the L_s dual to a
point set Z, failure of maximal rank in degree m-1 with range d-m+1 is
equivalent to Z admitting an unexpected hypersurface of degree d with a general
point of multiplicity m; equivalence_test checks this against the detector.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb, factorial, prod
from typing import Dict, List, Optional, Sequence, Tuple

import flint

from .detector import DetectConfig, DetectionCell, build_condition_matrix, detect
from .field import QQ, FieldScalar, FieldSpec, split_rng
from .linalg import _restrict, rank_scalar
from .pointsets import PointSet
from .poly import monomials

Exp = Tuple[int, ...]
Form = Tuple[FieldScalar, ...]

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


class EquivalenceViolation(AssertionError):
    """The Lefschetz verdict and the detector disagree; this indicates a bug."""


class UnreliableSampleError(RuntimeError):
    """Two choices of the general linear form gave different verdicts."""


@dataclass(frozen=True)
class PowerIdealSpec:
    forms: Tuple[Form, ...]
    exponent: int
    field: FieldSpec = QQ

    def __post_init__(self):
        if not self.forms:
            raise ValueError("a power ideal needs at least one form")
        nv = len(self.forms[0])
        if any(len(f) != nv for f in self.forms):
            raise ValueError("forms live in different polynomial rings")
        seen = set()
        for f in self.forms:
            lead = next((c for c in f if c), None)
            if lead is None:
                raise ValueError("the zero form is not allowed")
            key = tuple(c / lead for c in f)
            if key in seen:
                raise ValueError("forms must be pairwise non-proportional")
            seen.add(key)

    @property
    def n(self) -> int:
        return len(self.forms[0]) - 1

    @classmethod
    def from_points(cls, Z: PointSet, exponent: int) -> "PowerIdealSpec":
        return cls(tuple(tuple(p.coords) for p in Z.points), exponent, Z.field)


@dataclass
class LefschetzVerdict:
    degree: int
    range: int
    dim_source: int
    dim_target: int
    map_rank: int
    fails: bool

    def to_json(self) -> dict:
        return asdict(self)


def _power(form: Sequence[FieldScalar], e: int, field: FieldSpec) -> Dict[Exp, FieldScalar]:
    """Expansion of (c_0 x_0 + ... + c_n x_n)^e by the multinomial theorem."""
    out = {}
    fe = factorial(e)
    for alpha in monomials(len(form), e):
        c = field.one
        for ci, k in zip(form, alpha):
            if k:
                c = c * ci ** k
        if c:
            out[alpha] = c * (fe // prod(factorial(k) for k in alpha))
    return out


def _shift(poly: Dict[Exp, FieldScalar], mu: Exp) -> Dict[Exp, FieldScalar]:
    return {tuple(a + b for a, b in zip(e, mu)): c for e, c in poly.items()}


def _span_rank(rows: List[Dict[Exp, FieldScalar]], basis: List[Exp], field: FieldSpec) -> int:
    """Dimension of the span of sparse polynomials over the field."""
    if not rows:
        return 0
    index = {e: j for j, e in enumerate(basis)}
    quadratic = any(c.c1 for r in rows for c in r.values())
    s = 2 if quadratic else 1
    mat = flint.fmpq_mat(s * len(rows), s * len(basis))
    for i, r in enumerate(rows):
        for e, c in r.items():
            j = index[e]
            if quadratic:
                for (di, dj), v in _restrict(c, field).items():
                    mat[2 * i + di, 2 * j + dj] = flint.fmpq(v.numerator, v.denominator)
            else:
                mat[i, j] = flint.fmpq(c.c0.numerator, c.c0.denominator)
    return mat.rank() // s


def _ideal_generators(spec: PowerIdealSpec, j: int) -> List[Dict[Exp, FieldScalar]]:
    d = spec.exponent
    if j < d:
        return []
    powers = [_power(f, d, spec.field) for f in spec.forms]
    return [_shift(p, mu) for mu in monomials(spec.n + 1, j - d) for p in powers]


def power_ideal_dim(spec: PowerIdealSpec, j: int) -> int:
    """dim of the degree-j part of (L_1^d, ..., L_r^d)."""
    if j < 0:
        raise ValueError("degree must be nonnegative")
    return _span_rank(_ideal_generators(spec, j), monomials(spec.n + 1, j), spec.field)


def quotient_dim(spec: PowerIdealSpec, j: int) -> int:
    return comb(spec.n + j, spec.n) - power_ideal_dim(spec, j)


def multiplication_map_rank(spec: PowerIdealSpec, L: Sequence, e: int, i: int) -> LefschetzVerdict:
    """Rank of x L^e : [R/I]_i -> [R/I]_{i+e}, as dim (L^e R_i + I_{i+e}) / I_{i+e}."""
    if e < 1 or i < 0:
        raise ValueError("need e >= 1 and i >= 0")
    field = spec.field
    Lc = [FieldScalar.parse(c, field) for c in L]
    if len(Lc) != spec.n + 1:
        raise ValueError("linear form has the wrong number of variables")
    nv = spec.n + 1
    target_basis = monomials(nv, i + e)
    gens = _ideal_generators(spec, i + e)
    dim_ideal_target = _span_rank(gens, target_basis, field)
    Le = _power(Lc, e, field)
    images = [_shift(Le, mu) for mu in monomials(nv, i)]
    rank = _span_rank(gens + images, target_basis, field) - dim_ideal_target
    source = comb(spec.n + i, spec.n) - power_ideal_dim(spec, i)
    target = comb(spec.n + i + e, spec.n) - dim_ideal_target
    return LefschetzVerdict(i, e, source, target, rank, rank < min(source, target))


def general_form(nvars: int, seed: int) -> Tuple[int, ...]:
    """Seed-derived linear form with distinct small prime coefficients."""
    if nvars > len(SMALL_PRIMES):
        raise ValueError("too many variables for the prime table")
    rng = split_rng(seed, "general-linear-form")
    return tuple(rng.sample(SMALL_PRIMES, nvars))


def _checked(spec: PowerIdealSpec, e: int, i: int, L_seed: int) -> LefschetzVerdict:
    v1 = multiplication_map_rank(spec, general_form(spec.n + 1, L_seed), e, i)
    v2 = multiplication_map_rank(spec, general_form(spec.n + 1, L_seed + 1), e, i)
    if v1.fails != v2.fails:
        raise UnreliableSampleError(
            f"forms from seeds {L_seed} and {L_seed + 1} disagree in degree {i}, range {e}")
    # the larger rank is the better lower bound for the generic one
    return v1 if v1.map_rank >= v2.map_rank else v2


def slp_check(Z: PointSet, d: int, m: int, L_seed: int = 0) -> LefschetzVerdict:
    """x L^(d-m+1) from degree m-1 to degree d for the powers of the dual forms."""
    if not d >= m >= 2:
        raise ValueError("need d >= m >= 2")
    spec = PowerIdealSpec.from_points(Z, d)
    return _checked(spec, d - m + 1, m - 1, L_seed)


def wlp_check(Z: PointSet, k: int, i: Optional[int] = None, L_seed: int = 0) -> LefschetzVerdict:
    """x L from degree i (default k-1) to i+1 for (L_1^k, ..., L_r^k)."""
    spec = PowerIdealSpec.from_points(Z, k)
    return _checked(spec, 1, k - 1 if i is None else i, L_seed)


def wlp_scan(Z: PointSet, k: int, L_seed: int = 0) -> List[LefschetzVerdict]:
    """x L in every degree until the quotient vanishes."""
    spec = PowerIdealSpec.from_points(Z, k)
    out = []
    i = 0
    while True:
        v = _checked(spec, 1, i, L_seed)
        out.append(v)
        if v.dim_target == 0:
            return out
        i += 1


def macaulay_consistent(Z: PointSet, d: int) -> bool:
    """dim [R/(L_s^d)]_d equals dim [I_Z]_d."""
    spec = PowerIdealSpec.from_points(Z, d)
    C = build_condition_matrix(Z, d, 1)
    return power_ideal_dim(spec, d) == rank_scalar(C.Q1)


def equivalence_test(
    Z: PointSet, d: int, m: int, seeds: Sequence[int] = (0,),
    config: Optional[DetectConfig] = None, cell: Optional[DetectionCell] = None,
) -> bool:
    """Lefschetz failure must coincide with unexpectedness; returns the shared verdict.

    A cell already detected for (Z, d, m) may be passed to skip detection.
    """
    if cell is None:
        cell = detect(Z, d, m, config or DetectConfig())
    elif (cell.d, cell.m) != (d, m):
        raise ValueError("the given cell belongs to another (d, m)")
    for s in seeds:
        v = slp_check(Z, d, m, s)
        if v.fails != cell.unexpected:
            raise EquivalenceViolation(
                f"{Z.label} ({d},{m}): Lefschetz fails={v.fails} but unexpected={cell.unexpected}")
    return cell.unexpected


def expected_count_f(n: int, k: int) -> int:
    """The point count f(n, k) above which WLP failures are guaranteed."""
    if n < 4 or k < 3:
        raise ValueError("f(n, k) is defined for n >= 4 and k >= 3")
    if k % 2 == 0:
        h = k // 2
        return comb(n + k, n) - comb(n + k - 2, n) - comb(n + h, n) + comb(n - 2 + h, n)
    return comb(n + k, n) - comb(n + k - 2, n) - 2 * comb(n + (k - 1) // 2, n) + 2 * comb(n + (k - 3) // 2, n - 1)
