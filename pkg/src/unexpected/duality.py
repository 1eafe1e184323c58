"""Structure of extracted unexpected forms.

For a form F(a, x) we measure its bi-degree and its multiplicity along the
diagonal a = x in each block, classify F against swap_blocks(F), compute
tangent cones of the specialized curve F(P, x) at x = P, and compare them with
the swapped form F(x, P) as predicted by BMSS duality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, prod
from typing import Dict, List, Optional, Sequence, Tuple

from .detector import DetectConfig, UnexpectedForm, detect, extract_form
from .field import FieldScalar, split_rng
from .pointsets import PointSet, ProjectivePoint
from .poly import SparsePoly, monomials

SYMMETRIC = "symmetric"
ANTISYMMETRIC = "antisymmetric"
NEITHER = "neither"

# the point pictured for the B3 quartic
B3_SAMPLE = (-6, -5, 4)


class MultiplicityError(ValueError):
    """The point does not have the claimed multiplicity on the hypersurface."""


class NonUniqueFormError(ValueError):
    """Duality checks need a unique unexpected form (adim = 1)."""


def _poly(F) -> SparsePoly:
    return F.poly if isinstance(F, UnexpectedForm) else F


def diagonal_multiplicity(F, block: str = "a") -> int:
    """Order of vanishing along a = x, measured in the chosen block."""
    f = _poly(F)
    if block not in ("a", "x"):
        raise ValueError(f"unknown block {block!r}")
    if block == "x":
        f = f.swap_blocks()
    return f.diagonal_shift().min_a_degree()


def swap_relation(F) -> str:
    """Compare F(a, x) with F(x, a) up to one global scalar."""
    f = _poly(F)
    g = f.swap_blocks()
    if g == f:
        return SYMMETRIC
    if g == -f:
        return ANTISYMMETRIC
    return NEITHER


def _coords(P, spec) -> List[FieldScalar]:
    coords = P.coords if isinstance(P, ProjectivePoint) else P
    return [FieldScalar.parse(c, spec) for c in coords]


def _x_only(H: SparsePoly) -> None:
    if any(any(a) for a, _ in H.terms):
        raise ValueError("expected a polynomial in the x-block only")


def tangent_cone(H: SparsePoly, P, m: int) -> SparsePoly:
    """The degree-m form sum over |alpha| = m of (d^alpha H)(P) x^alpha / alpha!."""
    _x_only(H)
    if m < 0:
        raise ValueError("multiplicity must be nonnegative")
    if H and not H.is_homogeneous():
        raise ValueError("H must be homogeneous")
    p = _coords(P, H.field)
    if len(p) != H.n + 1:
        raise ValueError("point has the wrong number of coordinates")
    nv = H.n + 1
    derivs: Dict[Tuple[int, ...], SparsePoly] = {(0,) * nv: H}

    def deriv(alpha):
        r = derivs.get(alpha)
        if r is None:
            i = next(j for j, k in enumerate(alpha) if k)
            lower = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]
            r = deriv(lower).partial_derivative("x", i)
            derivs[alpha] = r
        return r

    # by Euler's relation, vanishing of the order-(m-1) partials at P forces all lower orders
    if m >= 1:
        for alpha in monomials(nv, m - 1):
            if deriv(alpha).value_at(x=p):
                raise MultiplicityError(f"an order-{m - 1} partial is nonzero at the point")
    terms = {}
    zero_a = (0,) * nv
    for alpha in monomials(nv, m):
        v = deriv(alpha).value_at(x=p)
        if v:
            terms[(zero_a, alpha)] = v / prod(factorial(k) for k in alpha)
    if not terms:
        raise MultiplicityError(f"all order-{m} partials vanish at the point")
    return SparsePoly(H.n, H.field, terms)


def taylor_tangent_cone(H: SparsePoly, P) -> Tuple[SparsePoly, int]:
    """Lowest-order part of H(P + e) and its degree, via diagonal_shift."""
    _x_only(H)
    p = _coords(P, H.field)
    shifted = H.swap_blocks().diagonal_shift().evaluate_block("x", p)
    if not shifted:
        raise MultiplicityError("H vanishes identically")
    low = shifted.lowest_a_part()
    return low.swap_blocks(), low.min_a_degree()


def _ratio(f: SparsePoly, g: SparsePoly) -> Optional[FieldScalar]:
    """The scalar c with f = c g, if any."""
    if not f or not g or set(f.terms) != set(g.terms):
        return None
    key = next(iter(f.terms))
    c = f.terms[key] / g.terms[key]
    return c if g.scale(c) == f else None


@dataclass
class SampleCheck:
    point: Tuple[str, ...]
    match: bool
    ratio: Optional[str]
    multiplicity_ok: bool
    note: str = ""


@dataclass
class DualityReport:
    bidegree: Tuple[int, int]
    diag_mult_in_a: int
    diag_mult_in_x: int
    swap_relation: str
    tangent_cone_match: Optional[bool] = None
    m: Optional[int] = None
    expected_sign: Optional[int] = None
    samples: List[SampleCheck] = field(default_factory=list)
    form: str = ""

    def to_json(self) -> dict:
        return {
            "bidegree": list(self.bidegree),
            "diag_mult_in_a": self.diag_mult_in_a,
            "diag_mult_in_x": self.diag_mult_in_x,
            "swap_relation": self.swap_relation,
            "tangent_cone_match": self.tangent_cone_match,
            "m": self.m,
            "expected_sign": self.expected_sign,
            "samples": [vars(s) for s in self.samples],
            "form": self.form,
        }


def analyze_form(F, m: Optional[int] = None) -> DualityReport:
    f = _poly(F)
    return DualityReport(
        bidegree=f.bidegree(),
        diag_mult_in_a=diagonal_multiplicity(f, "a"),
        diag_mult_in_x=diagonal_multiplicity(f, "x"),
        swap_relation=swap_relation(f),
        m=m,
        form=f.to_text(),
    )


def sample_points(n: int, count: int, seed: int, bound: int = 1000) -> List[Tuple[int, ...]]:
    """Seed-derived integer points with every coordinate nonzero."""
    rng = split_rng(seed, "bmss-samples")
    out = []
    while len(out) < count:
        p = tuple(rng.choice((-1, 1)) * rng.randint(1, bound) for _ in range(n + 1))
        if p not in out:
            out.append(p)
    return out


def check_sample(F: SparsePoly, P, m: int) -> SampleCheck:
    """Tangent cone of F(P, x) at x = P against (-1)^m F(x, P)."""
    p = _coords(P, F.field)
    label = tuple(str(c) for c in p)
    H = F.evaluate_block("a", p)
    try:
        cone = tangent_cone(H, p, m)
    except MultiplicityError as exc:
        return SampleCheck(label, False, None, False, str(exc))
    predicted = F.swap_blocks().evaluate_block("a", p)
    if m % 2:
        predicted = -predicted
    c = _ratio(cone, predicted)
    return SampleCheck(label, c is not None, None if c is None else str(c), True)


def bmss_check(
    Z: PointSet,
    d: int,
    m: int,
    sample_points_: Optional[Sequence] = None,
    samples: int = 3,
    seed: int = 0,
    config: Optional[DetectConfig] = None,
    form: Optional[SparsePoly] = None,
) -> DualityReport:
    """Extract the unique unexpected form and test BMSS duality at sample points.

    ``sample_points_`` are used first; seed-derived points fill up to ``samples``.
    """
    cfg = config or DetectConfig(seed=seed)
    if form is None:
        cell = detect(Z, d, m, cfg)
        if cell.unexpected and cell.adim != 1:
            raise NonUniqueFormError(f"adim is {cell.adim}; the unexpected form is not unique")
        form = extract_form(Z, d, m, 1, cfg)[0].poly
    report = analyze_form(form, m)
    report.expected_sign = -1 if m % 2 else 1
    pts = list(sample_points_ or [])
    if len(pts) < samples:
        extra = [p for p in sample_points(Z.n, samples, seed) if p not in pts]
        pts += extra[: samples - len(pts)]
    report.samples = [check_sample(form, P, m) for P in pts]
    report.tangent_cone_match = all(s.match for s in report.samples)
    return report


def base_locus_check(F, candidates: PointSet) -> PointSet:
    """Candidates at which every a-coefficient C_alpha(x) of F vanishes."""
    f = _poly(F)
    coeffs = [SparsePoly.from_x_dict(c, f.n, f.field) for c in f.coefficients_in_a().values()]
    keep = [P for P in candidates.points if all(not C.value_at(x=P.coords) for C in coeffs)]
    return PointSet(candidates.n, candidates.field, keep, f"{candidates.label}:base")
