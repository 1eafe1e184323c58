"""Exact ranks and kernels for scalar matrices and matrices over K[a].

Generic ranks are certified from two sides.  A specialization a = P gives a
lower bound (a nonzero minor at P is a nonzero polynomial minor).  Explicit
polynomial kernel vectors, verified by exact multiplication, give an upper
bound.  Kernel vectors are found in two ways.  Small kernels are interpolated
from modular kernels at sample points and lifted by CRT and rational
reconstruction.  Otherwise a graded ansatz is used: a vector of degree-delta
forms lies in the kernel iff its coefficients solve a scalar linear system,
which is searched modulo a prime and then solved exactly.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import flint

from .field import DEFAULT_BOUND, QQ, FieldScalar, FieldSpec, split_rng
from .gcd import DPoly, d_add, d_exact_div, d_is_const, d_mul, d_sub, gcd_list
from .modular import Embedding, first_embedding, nmod_matrix, rational_reconstruct, rref_pivots
from .poly import SparsePoly, monomials, monomials_upto

log = logging.getLogger(__name__)

Exp = Tuple[int, ...]
Vector = List[DPoly]


class KernelDeficientError(ValueError):
    """Fewer independent kernel vectors exist than were requested."""


class BudgetExceededError(RuntimeError):
    """The kernel search needs a larger linear system than allowed."""


# scalar matrices


@dataclass
class ScalarMatrix:
    rows: int
    cols: int
    entries: List[List[FieldScalar]]
    field: FieldSpec = QQ

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: FieldSpec = QQ, cols: Optional[int] = None) -> "ScalarMatrix":
        ent = [[FieldScalar.parse(v, field) for v in r] for r in rows]
        ncols = len(ent[0]) if ent else (cols or 0)
        if any(len(r) != ncols for r in ent):
            raise ValueError("ragged matrix")
        return cls(len(ent), ncols, ent, field)

    @classmethod
    def identity(cls, k: int, field: FieldSpec = QQ) -> "ScalarMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(k)] for i in range(k)], field)

    @classmethod
    def zeros(cls, r: int, c: int, field: FieldSpec = QQ) -> "ScalarMatrix":
        return cls(r, c, [[field.zero] * c for _ in range(r)], field)

    def transpose(self) -> "ScalarMatrix":
        return ScalarMatrix(self.cols, self.rows, [list(c) for c in zip(*self.entries)] if self.rows else [], self.field)


def _is_rational_matrix(entries: Sequence[Sequence[FieldScalar]]) -> bool:
    return all(not v.c1 for row in entries for v in row)


def gauss_jordan(entries: Sequence[Sequence[FieldScalar]], field: FieldSpec = QQ):
    """Reduced row echelon form over the field; returns (rows, pivot columns)."""
    if not entries:
        return [], []
    if _is_rational_matrix(entries):
        rows = [[v.c0 for v in r] for r in entries]
        R, piv = _gauss_jordan_fractions(rows)
        return [[FieldScalar(v, 0, field) for v in r] for r in R], piv
    rows = [list(r) for r in entries]
    ncols = len(rows[0])
    piv = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], piv


def _gauss_jordan_fractions(rows: List[List[Fraction]]):
    rows = [list(r) for r in rows]
    ncols = len(rows[0])
    piv = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], piv


def to_fmpq_mat(entries: Sequence[Sequence[FieldScalar]], ncols: int) -> "flint.fmpq_mat":
    """Rational matrix, restricting scalars (2x2 blocks) for quadratic entries."""
    nrows = len(entries)
    if _is_rational_matrix(entries):
        m = flint.fmpq_mat(nrows, ncols)
        for i, row in enumerate(entries):
            for j, v in enumerate(row):
                if v:
                    m[i, j] = flint.fmpq(v.c0.numerator, v.c0.denominator)
        return m
    spec = next(v.spec for row in entries for v in row)
    m = flint.fmpq_mat(2 * nrows, 2 * ncols)
    for i, row in enumerate(entries):
        for j, v in enumerate(row):
            if v:
                for (di, dj), val in _restrict(v, spec).items():
                    m[2 * i + di, 2 * j + dj] = flint.fmpq(val.numerator, val.denominator)
    return m


def _restrict(v: FieldScalar, spec: FieldSpec) -> Dict[Tuple[int, int], Fraction]:
    """Multiplication by v on the basis (1, t), as a 2x2 rational block."""
    c0, c1 = v.c0, v.c1
    blk = {(0, 0): c0, (0, 1): spec.q * c1, (1, 0): c1, (1, 1): c0 + spec.p * c1}
    return {k: x for k, x in blk.items() if x}


FLINT_THRESHOLD = 400


def rank_scalar(M: ScalarMatrix, method: str = "auto") -> int:
    """Exact rank.  ``method`` is ``"gauss"``, ``"flint"`` or ``"auto"``."""
    if M.rows == 0 or M.cols == 0:
        return 0
    if method == "auto":
        method = "flint" if M.rows * M.cols > FLINT_THRESHOLD else "gauss"
    if method == "gauss":
        return len(gauss_jordan(M.entries, M.field)[1])
    r = to_fmpq_mat(M.entries, M.cols).rank()
    return r // 2 if not _is_rational_matrix(M.entries) else r


def rref_scalar(M: ScalarMatrix) -> Tuple[List[List[FieldScalar]], List[int]]:
    """Exact reduced echelon form and pivot columns."""
    if M.rows == 0:
        return [], []
    if _is_rational_matrix(M.entries) and M.rows * M.cols > FLINT_THRESHOLD:
        R, rank = to_fmpq_mat(M.entries, M.cols).rref()
        rows = []
        piv = []
        for i in range(rank):
            row = [FieldScalar(Fraction(int(v.p), int(v.q)), 0, M.field) for v in (R[i, j] for j in range(M.cols))]
            piv.append(next(j for j, v in enumerate(row) if v))
            rows.append(row)
        return rows, piv
    return gauss_jordan(M.entries, M.field)


def kernel_basis_scalar(M: ScalarMatrix) -> List[List[FieldScalar]]:
    """Basis of the right kernel, one vector per free column."""
    R, piv = rref_scalar(M)
    pivset = set(piv)
    one, zero = M.field.one, M.field.zero
    basis = []
    for f in range(M.cols):
        if f in pivset:
            continue
        v = [zero] * M.cols
        v[f] = one
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
        basis.append(v)
    return basis


# polynomial matrices


def _eval_dpoly(f: DPoly, cache: Dict[Exp, FieldScalar], point: Sequence[FieldScalar], zero: FieldScalar) -> FieldScalar:
    s = zero
    for e, c in f.items():
        m = cache.get(e)
        if m is None:
            m = zero + 1
            for v, k in zip(point, e):
                if k:
                    m = m * v ** k
            cache[e] = m
        s = s + c * m
    return s


@dataclass
class PolyMatrix:
    """Matrix whose entries are polynomials in a_0..a_n (dict form)."""

    rows: int
    cols: int
    n: int
    entries: List[List[DPoly]]
    field: FieldSpec = QQ

    @classmethod
    def from_polys(cls, polys: Sequence[Sequence[SparsePoly]], n: Optional[int] = None, field: Optional[FieldSpec] = None) -> "PolyMatrix":
        if n is None:
            n = polys[0][0].n
        if field is None:
            field = polys[0][0].field
        ent = [[p.a_part() for p in row] for row in polys]
        ncols = len(ent[0]) if ent else 0
        return cls(len(ent), ncols, n, ent, field)

    def entry(self, i: int, j: int) -> SparsePoly:
        return SparsePoly.from_a_dict(self.entries[i][j], self.n, self.field)

    def transpose(self) -> "PolyMatrix":
        ent = [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return PolyMatrix(self.cols, self.rows, self.n, ent, self.field)

    def max_degree(self) -> int:
        return max((sum(e) for row in self.entries for f in row for e in f), default=0)

    def uniform_degree(self) -> Optional[int]:
        """The common degree if every nonzero entry is homogeneous of one degree."""
        degs = {sum(e) for row in self.entries for f in row for e in f}
        return degs.pop() if len(degs) == 1 else (0 if not degs else None)

    def evaluate(self, point: Sequence) -> ScalarMatrix:
        pt = [FieldScalar.parse(v, self.field) for v in point]
        zero = self.field.zero
        cache: Dict[Exp, FieldScalar] = {}
        ent = [[_eval_dpoly(f, cache, pt, zero) for f in row] for row in self.entries]
        return ScalarMatrix(self.rows, self.cols, ent, self.field)

    def evaluate_mod(self, point: Sequence[int], emb: Embedding) -> "flint.nmod_mat":
        p = emb.p
        cache: Dict[Exp, int] = {}
        rows = []
        for row in self.entries:
            out = []
            for f in row:
                s = 0
                for e, c in f.items():
                    m = cache.get(e)
                    if m is None:
                        m = 1
                        for v, k in zip(point, e):
                            if k:
                                m = m * pow(v, k, p) % p
                        cache[e] = m
                    s += emb(c) * m
                out.append(s % p)
            rows.append(out)
        return nmod_matrix(rows, self.rows, self.cols, p)

    def mul_vector(self, v: Sequence[DPoly]) -> List[DPoly]:
        out = []
        for row in self.entries:
            acc: DPoly = {}
            for f, g in zip(row, v):
                if f and g:
                    acc = d_add(acc, d_mul(f, g))
            out.append(acc)
        return out


@dataclass
class RankCertificate:
    rank: int
    mode: str
    trials: int = 0
    seed: Optional[int] = None
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"rank": self.rank, "mode": self.mode, "trials": self.trials, "seed": self.seed, "witness": self.witness}


def random_point(seed: int, key, nvars: int, bound: int = DEFAULT_BOUND) -> List[int]:
    rng = split_rng(seed, "point", key)
    return [rng.randint(1, bound) for _ in range(nvars)]


def rank_at_point(M: PolyMatrix, point: Sequence, method: str = "exact", emb: Optional[Embedding] = None) -> int:
    """Rank after substituting ``point`` for the a-block.

    ``method="modular"`` reduces the specialized matrix modulo a prime, which
    can only lower the rank and is therefore still a valid lower bound.
    """
    if M.rows == 0 or M.cols == 0:
        return 0
    if method == "modular":
        emb = emb or first_embedding(M.field)
        return M.evaluate_mod([emb.rational(v) for v in point], emb).rank()
    return rank_scalar(M.evaluate(point))


def generic_rank_probabilistic(
    M: PolyMatrix,
    seed: int = 0,
    trials: int = 3,
    bound: int = DEFAULT_BOUND,
    method: str = "modular",
) -> RankCertificate:
    """Maximum rank over random specializations, a certified lower bound."""
    if trials < 1:
        raise ValueError("trials must be positive")
    emb = first_embedding(M.field) if method == "modular" else None
    best = -1
    points = []
    for t in range(trials):
        pt = random_point(seed, t, M.n + 1, bound)
        r = rank_at_point(M, pt, method, emb)
        points.append(pt)
        best = max(best, r)
    deg = best * M.max_degree()
    fail = min(1.0, deg / bound) ** trials if best > 0 else 0.0
    witness = {"points": [[str(v) for v in p] for p in points], "bound": bound, "method": method,
               "failure_bound": fail}
    if emb is not None:
        witness["prime"] = emb.p
    return RankCertificate(max(best, 0), "probabilistic", trials, seed, witness)


# fraction-free elimination over K[a]


def _row_content(row: List[DPoly]) -> DPoly:
    return gcd_list(f for f in row if f)


def _divide_row(row: List[DPoly], g: DPoly) -> List[DPoly]:
    if not g or d_is_const(g):
        if g and d_is_const(g):
            c = next(iter(g.values())).inv()
            return [{e: v * c for e, v in f.items()} for f in row]
        return row
    return [d_exact_div(f, g) if f else f for f in row]


def _bareiss(M: PolyMatrix, reduce_above: bool):
    rows = [list(r) for r in M.entries]
    pivots: List[Tuple[int, int]] = []
    r = 0
    for c in range(M.cols):
        cands = [(len(rows[i][c]), i) for i in range(r, len(rows)) if rows[i][c]]
        if not cands:
            continue
        _, pr = min(cands)
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        targets = range(len(rows)) if reduce_above else range(r + 1, len(rows))
        for i in targets:
            if i == r or not rows[i][c]:
                continue
            f = rows[i][c]
            new = []
            for x, y in zip(rows[i], rows[r]):
                a = d_mul(piv, x) if x else {}
                b = d_mul(f, y) if y else {}
                new.append(d_sub(a, b))
            rows[i] = _divide_row(new, _row_content(new))
        pivots.append((r, c))
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def generic_rank_bareiss(M: PolyMatrix) -> RankCertificate:
    """Exact rank over K(a) by fraction-free elimination."""
    _, pivots = _bareiss(M, reduce_above=False)
    return RankCertificate(len(pivots), "exact-symbolic", 0, None, {"pivots": [list(p) for p in pivots]})


def bareiss_kernel(M: PolyMatrix) -> List[Vector]:
    """Kernel basis over K(a) with polynomial entries, one vector per free column."""
    rows, pivots = _bareiss(M, reduce_above=True)
    nv = M.n + 1
    one = {(0,) * nv: M.field.one}
    pivcols = {c: r for r, c in pivots}
    basis = []
    for f in range(M.cols):
        if f in pivcols:
            continue
        v: Vector = [{} for _ in range(M.cols)]
        prod_all = one
        for r, c in pivots:
            prod_all = d_mul(prod_all, rows[r][c])
        v[f] = prod_all
        for r, c in pivots:
            if rows[r][f]:
                others = one
                for r2, c2 in pivots:
                    if r2 != r:
                        others = d_mul(others, rows[r2][c2])
                v[c] = {e: -x for e, x in d_mul(rows[r][f], others).items()}
        g = gcd_list(x for x in v if x)
        basis.append(_divide_row(v, g))
    return basis


# kernel certificates


@dataclass
class KernelCertificate:
    """Polynomial kernel vectors with their verification record."""

    side: str
    vectors: List[Vector]
    degree: int
    witness: dict
    seconds: float = 0.0

    @property
    def count(self) -> int:
        return len(self.vectors)


def _ansatz_layout(nv: int, delta: int, e: int, homogeneous: bool):
    if homogeneous:
        src = monomials(nv, delta)
        dst = monomials(nv, delta + e)
    else:
        src = monomials_upto(nv, delta)
        dst = monomials_upto(nv, delta + e)
    return src, {g: i for i, g in enumerate(dst)}


def _ansatz_entries(M: PolyMatrix, src: List[Exp], dst: Dict[Exp, int]):
    """Yield (row, col, coefficient) of the linearized system M v = 0."""
    ns, nd = len(src), len(dst)
    for i, row in enumerate(M.entries):
        for j, f in enumerate(row):
            for ex, c in f.items():
                for ai, al in enumerate(src):
                    g = tuple(x + y for x, y in zip(ex, al))
                    yield i * nd + dst[g], j * ns + ai, c


def _independent_subset_mod(vectors_mod: List[List[List[int]]], src_vals: List[int], k: int, p: int) -> Tuple[int, List[int]]:
    """Rank over K(a) (at one point) of candidate vectors and a basis among them."""
    if not vectors_mod:
        return 0, []
    length = len(vectors_mod[0])
    cols = []
    for vec in vectors_mod:
        cols.append([sum(cf * sv for cf, sv in zip(coeffs, src_vals)) % p for coeffs in vec])
    mat = nmod_matrix([[cols[s][u] for s in range(len(cols))] for u in range(length)], length, len(cols), p)
    _, rank, piv = rref_pivots(mat)
    return rank, piv[:k]


def _search_degree(M: PolyMatrix, k: int, delta: int, e: int, homogeneous: bool, emb: Embedding, seed: int):
    nv = M.n + 1
    src, dst = _ansatz_layout(nv, delta, e, homogeneous)
    nrows, ncols = M.rows * len(dst), M.cols * len(src)
    p = emb.p
    L = flint.nmod_mat(nrows, ncols, p)
    for r, c, v in _ansatz_entries(M, src, dst):
        L[r, c] = emb(v)
    R, rank, piv = rref_pivots(L)
    pivset = set(piv)
    free = [f for f in range(ncols) if f not in pivset]
    pt = [emb.rational(x) for x in random_point(seed, ("select", delta), nv)]
    src_vals = []
    for al in src:
        m = 1
        for v, kk in zip(pt, al):
            m = m * pow(v, kk, p) % p
        src_vals.append(m)
    ns = len(src)
    cand = []
    for f in free:
        vec = [[0] * ns for _ in range(M.cols)]
        vec[f // ns][f % ns] = 1
        for i, c in enumerate(piv):
            x = int(R[i, f])
            if x:
                vec[c // ns][c % ns] = (-x) % p
        cand.append(vec)
    krank, chosen = _independent_subset_mod(cand, src_vals, k, p)
    return krank, [free[s] for s in chosen], piv, src, dst, nrows, ncols


def _exact_vectors(M: PolyMatrix, src, dst, nrows, ncols, chosen_free, piv_mod, emb: Embedding, k: int, seed: int, delta: int) -> List[Vector]:
    field = M.field
    ns = len(src)
    entries: Dict[Tuple[int, int], FieldScalar] = {}
    for r, c, v in _ansatz_entries(M, src, dst):
        entries[(r, c)] = v
    quadratic = any(v.c1 for v in entries.values())
    if not quadratic:
        L = flint.fmpq_mat(nrows, ncols)
        for (r, c), v in entries.items():
            if v:
                L[r, c] = flint.fmpq(v.c0.numerator, v.c0.denominator)
        R, rank = L.rref()
        piv = _fmpq_pivots(R, rank)
        if piv == piv_mod:
            frees = chosen_free
        else:
            pivset = set(piv)
            frees = [f for f in range(ncols) if f not in pivset]
        raw = []
        for f in frees:
            coeffs = [[Fraction(0)] * ns for _ in range(M.cols)]
            coeffs[f // ns][f % ns] = Fraction(1)
            for i, c in enumerate(piv):
                x = R[i, f]
                if x != 0:
                    coeffs[c // ns][c % ns] = -Fraction(int(x.p), int(x.q))
            raw.append([[FieldScalar(x, 0, field) for x in blk] for blk in coeffs])
    else:
        spec = field
        L = flint.fmpq_mat(2 * nrows, 2 * ncols)
        for (r, c), v in entries.items():
            for (di, dj), val in _restrict(v, spec).items():
                L[2 * r + di, 2 * c + dj] = flint.fmpq(val.numerator, val.denominator)
        R, rank = L.rref()
        piv = _fmpq_pivots(R, rank)
        pivset = set(piv)
        raw = []
        for f in range(2 * ncols):
            if f in pivset:
                continue
            q = [Fraction(0)] * (2 * ncols)
            q[f] = Fraction(1)
            for i, c in enumerate(piv):
                x = R[i, f]
                if x != 0:
                    q[c] = -Fraction(int(x.p), int(x.q))
            raw.append([[FieldScalar(q[2 * (j * ns + a)], q[2 * (j * ns + a) + 1], spec) for a in range(ns)] for j in range(M.cols)])
    # pick k vectors independent over K(a), judged at one point mod p
    p = emb.p
    nv = M.n + 1
    pt = [emb.rational(x) for x in random_point(seed, ("exact-select", delta), nv)]
    src_vals = []
    for al in src:
        m = 1
        for v, kk in zip(pt, al):
            m = m * pow(v, kk, p) % p
        src_vals.append(m)
    cand = [[[emb(c) for c in blk] for blk in vec] for vec in raw]
    krank, chosen = _independent_subset_mod(cand, src_vals, k, p)
    if krank < k:
        raise KernelDeficientError(f"exact solution space has K(a)-rank {krank} < {k}")
    out = []
    for s in chosen:
        vec = raw[s]
        out.append([{al: c for al, c in zip(src, blk) if c} for blk in vec])
    return out


def _fmpq_pivots(R, rank: int) -> List[int]:
    piv = []
    col = 0
    for i in range(rank):
        while R[i, col] == 0:
            col += 1
        piv.append(col)
        col += 1
    return piv


def verify_kernel(M: PolyMatrix, vectors: Sequence[Vector]) -> bool:
    """Exact check that M v is identically zero for each vector."""
    return all(not any(M.mul_vector(v)) for v in vectors)


def independence_witness(vectors: Sequence[Vector], n: int, field: FieldSpec, seed: int, attempts: int = 5) -> Optional[dict]:
    """A point where the stacked vectors have a nonzero k x k minor."""
    k = len(vectors)
    if k == 0:
        return {"point": [], "rows": []}
    length = len(vectors[0])
    zero = field.zero
    for t in range(attempts):
        pt = [FieldScalar(v, 0, field) for v in random_point(seed, ("witness", t), n + 1, 1000)]
        cache: Dict[Exp, FieldScalar] = {}
        rows = [[_eval_dpoly(vec[u], cache, pt, zero) for vec in vectors] for u in range(length)]
        # row pivots of the length x k matrix = column pivots of its transpose
        cols = [[rows[u][s] for u in range(length)] for s in range(k)]
        _, piv = gauss_jordan(cols, field)
        if len(piv) == k:
            return {"point": [str(v) for v in pt], "rows": piv}
    return None


def _normalize_vector(v: Vector) -> Vector:
    first = next((f for f in v if f), None)
    if first is None:
        return v
    lead = max(first, key=lambda e: (sum(e), e))
    c = first[lead]
    if c == 1:
        return v
    inv = c.inv()
    return [{e: x * inv for e, x in f.items()} for f in v]


def _grading(M: PolyMatrix):
    e = M.uniform_degree()
    if e is not None:
        return e, True
    return M.max_degree(), False


def _unknowns(M: PolyMatrix, delta: int, homogeneous: bool) -> int:
    nv = M.n + 1
    return M.cols * (comb(nv - 1 + delta, nv - 1) if homogeneous else comb(nv + delta, nv))


def _attempt(M: PolyMatrix, k: int, delta: int, e: int, homogeneous: bool, emb: Embedding, seed: int) -> Optional[Tuple[List[Vector], dict]]:
    """Try degree-delta kernel vectors; None if the ansatz is too small."""
    krank, chosen, piv, src, dst, nrows, ncols = _search_degree(M, k, delta, e, homogeneous, emb, seed)
    log.debug("ansatz degree %d: %d x %d, K(a)-rank %d of %d", delta, nrows, ncols, krank, k)
    if krank < k:
        return None
    vectors = _exact_vectors(M, src, dst, nrows, ncols, chosen, piv, emb, k, seed, delta)
    vectors = [_normalize_vector(v) for v in vectors]
    if not verify_kernel(M, vectors):
        raise ArithmeticError("kernel vectors failed exact verification")
    wit = independence_witness(vectors, M.n, M.field, seed)
    if wit is None:
        return None
    wit["verified"] = True
    wit["system"] = [nrows, ncols]
    return vectors, wit


def _nullity_upper(M: PolyMatrix, seed: int, emb: Embedding) -> int:
    if not M.rows or not M.cols:
        return M.cols
    pt = [emb.rational(x) for x in random_point(seed, "nullity", M.n + 1)]
    return M.cols - M.evaluate_mod(pt, emb).rank()


def symbolic_kernel(
    M: PolyMatrix,
    k: int,
    seed: int = 0,
    max_degree: Optional[int] = None,
    max_unknowns: Optional[int] = None,
    deadline: Optional[float] = None,
) -> KernelCertificate:
    """k polynomial vectors v with M v = 0, independent over K(a), verified exactly."""
    if k < 1:
        raise ValueError("k must be positive")
    t0 = time.time()
    emb = first_embedding(M.field)
    upper = _nullity_upper(M, seed, emb)
    if k > upper:
        raise KernelDeficientError(f"nullity is at most {upper} < {k}")
    e, homogeneous = _grading(M)
    bound = min(M.rows, M.cols) * max(e, 1)
    top = bound if max_degree is None else min(bound, max_degree)
    for delta in range(top + 1):
        if max_unknowns is not None and _unknowns(M, delta, homogeneous) > max_unknowns:
            raise BudgetExceededError(f"degree {delta} needs {_unknowns(M, delta, homogeneous)} unknowns")
        if deadline is not None and time.time() > deadline:
            raise BudgetExceededError("time budget exhausted")
        found = _attempt(M, k, delta, e, homogeneous, emb, seed)
        if found is not None:
            vectors, wit = found
            return KernelCertificate("right", vectors, delta, wit, time.time() - t0)
    if top >= bound:
        raise KernelDeficientError(f"no {k} independent kernel vectors up to degree {bound}")
    raise BudgetExceededError(f"no {k} independent kernel vectors up to degree {top}")


# kernel vectors by interpolation


class _KernelSamples:
    """Kernels of A(P) mod p at random points, reduced to the identity on fixed coordinates."""

    def __init__(
        self, A: PolyMatrix, k: int, emb: Embedding, seed: int,
        pivots: Optional[List[int]] = None, dim: Optional[int] = None,
    ):
        self.A, self.k, self.emb, self.seed = A, k, emb, seed
        self.pivots = pivots
        self.points: List[List[int]] = []
        self.kernels: List[List[List[int]]] = []  # per point: dim vectors of length A.cols
        self._tries = 0
        # the generic nullity may exceed k; all of it is reduced, the first k vectors are used
        self.dim = dim if dim is not None else min(self._nullity(self._point()) for _ in range(3))
        if self.dim < k:
            raise KernelDeficientError(f"nullity {self.dim} < {k} at sample points")

    def _point(self) -> List[int]:
        self._tries += 1
        rng = split_rng(self.seed, "interp", self.emb.p, self.emb.root, self._tries)
        return [rng.randrange(1, self.emb.p) for _ in range(self.A.n + 1)]

    def _nullity(self, pt: List[int]) -> int:
        return self.A.evaluate_mod(pt, self.emb).nullspace()[1]

    def _sample(self) -> None:
        p, dim = self.emb.p, self.dim
        while True:
            if self._tries > 4 * len(self.points) + 50:
                raise ArithmeticError("too many degenerate sample points")
            pt = self._point()
            X, nullity = self.A.evaluate_mod(pt, self.emb).nullspace()
            if nullity < dim:
                raise ArithmeticError(f"nullity {nullity} below the sampled generic nullity {dim}")
            if nullity > dim:
                continue
            cols = self.A.cols
            basis = [[int(X[i, j]) for i in range(cols)] for j in range(dim)]
            if self.pivots is None:
                self.pivots = rref_pivots(nmod_matrix(basis, dim, cols, p))[2]
            B = flint.nmod_mat(cols, dim, [basis[j][i] for i in range(cols) for j in range(dim)], p)
            sub = flint.nmod_mat(dim, dim, [basis[j][c] for c in self.pivots for j in range(dim)], p)
            if sub.rank() < dim:
                continue
            red = B * sub.inv()
            self.points.append(pt)
            self.kernels.append([[int(red[i, j]) for i in range(cols)] for j in range(self.k)])
            return

    def take(self, count: int) -> None:
        while len(self.points) < count:
            self._sample()


def _monomial_rows(points: Sequence[Sequence[int]], basis: Sequence[Exp], p: int) -> List[List[int]]:
    rows = []
    for pt in points:
        powers = [[1] for _ in pt]
        row = []
        for e in basis:
            m = 1
            for v, kk, pw in zip(pt, e, powers):
                while len(pw) <= kk:
                    pw.append(pw[-1] * v % p)
                m = m * pw[kk] % p
            row.append(m)
        rows.append(row)
    return rows


EXTRA_POINTS = 12
INTERPOLATION_MAX_K = 2


def _interpolate_mod(S: _KernelSamples, j: int, basis: Sequence[Exp], seed: int) -> Optional[List[List[int]]]:
    """Coefficients mod p of w = D * (reduced kernel vector j), D of the given support; None if none exists."""
    p = S.emb.p
    T = len(basis)
    S.take(T + EXTRA_POINTS)
    W = _monomial_rows(S.points[: T + EXTRA_POINTS], basis, p)
    WT = flint.nmod_mat(T, T, [x for r in W[:T] for x in r], p)
    if WT.rank() < T:
        return None
    WTinv = WT.inv()
    WE = flint.nmod_mat(EXTRA_POINTS, T, [x for r in W[T:] for x in r], p)
    G = WE * WTinv
    cols = S.A.cols
    others = [i for i in range(cols) if i not in S.pivots]
    vals = [[S.kernels[s][j][i] for i in range(cols)] for s in range(T + EXTRA_POINTS)]
    # a few random combinations of the components carry all the constraints generically
    q = min(len(others), -(-2 * T // EXTRA_POINTS) + 1)
    rng = split_rng(seed, "interp-combine", p, T, j)
    if q == len(others):
        combos = [{i: 1} for i in others]
    else:
        combos = [{i: rng.randrange(1, p) for i in others} for _ in range(q)]
    blocks = []
    for combo in combos:
        v = [sum(c * vals[s][i] for i, c in combo.items()) % p for s in range(T + EXTRA_POINTS)]
        GD = flint.nmod_mat(EXTRA_POINTS, T, [int(G[r, t]) * v[t] % p for r in range(EXTRA_POINTS) for t in range(T)], p)
        DW = flint.nmod_mat(EXTRA_POINTS, T, [v[T + r] * W[T + r][t] % p for r in range(EXTRA_POINTS) for t in range(T)], p)
        blocks.append(DW - GD * WT)
    C = flint.nmod_mat(len(blocks) * EXTRA_POINTS, T, [int(b[r, t]) for b in blocks for r in range(EXTRA_POINTS) for t in range(T)], p)
    X, nullity = C.nullspace()
    if nullity == 0:
        return None
    cD = [int(X[t, 0]) for t in range(T)]
    lead = next(t for t in range(T) if cD[t])
    inv = pow(cD[lead], -1, p)
    cD = [c * inv % p for c in cD]
    y = [sum(W[s][t] * cD[t] for t in range(T)) % p for s in range(T)]
    V = flint.nmod_mat(T, cols, [vals[s][i] * y[s] % p for s in range(T) for i in range(cols)], p)
    coeffs = WTinv * V
    return [[int(coeffs[t, i]) for t in range(T)] for i in range(cols)]


def _reconstruct(residues: List[List[List[int]]], moduli: List[int]) -> Optional[List[List[Fraction]]]:
    """Rational numbers matching every residue list, via CRT; None if reconstruction fails."""
    M = 1
    for m in moduli:
        M *= m
    out = []
    for i in range(len(residues[0])):
        row = []
        for t in range(len(residues[0][i])):
            r, mod = 0, 1
            for res, m in zip(residues, moduli):
                # lift r (mod mod) to agree with res (mod m)
                r += mod * ((res[i][t] - r) * pow(mod, -1, m) % m)
                mod *= m
            f = rational_reconstruct(r, M)
            if f is None:
                return None
            row.append(f)
        out.append(row)
    return out


def interpolated_kernel(A: PolyMatrix, k: int, seed: int = 0, max_terms: int = 2500, max_primes: int = 12,
                        deadline: Optional[float] = None) -> Optional[KernelCertificate]:
    """k polynomial kernel vectors of A found from kernels at sample points, then verified exactly.

    Vector j is D_j(a) times the kernel basis vector that is 1 at pivot j and 0
    at the other pivots, so the vectors are independent by construction.  D_j
    is recovered modulo primes from a linear system with one unknown per
    monomial, and the exact coefficients by rational reconstruction.  Returns
    None if no vectors with at most ``max_terms`` monomials per entry exist.
    """
    t0 = time.time()
    e, homogeneous = _grading(A)
    nv = A.n + 1
    quadratic = A.field.is_quadratic
    embs = []
    skip = 0
    while len(embs) < max_primes:
        emb = first_embedding(A.field, skip)
        skip += 1
        embs.append((emb, emb.conjugate()) if quadratic else (emb,))
    first = _KernelSamples(A, k, embs[0][0], seed)
    first.take(1)
    pivots = first.pivots
    samples = {}

    def samples_for(emb):
        key = (emb.p, emb.root)
        if key not in samples:
            samples[key] = first if key == (embs[0][0].p, embs[0][0].root) else _KernelSamples(A, k, emb, seed, pivots, first.dim)
        return samples[key]

    vectors = []
    degrees = []
    for j in range(k):
        delta = 0
        found = None
        while found is None:
            basis = monomials(nv, delta) if homogeneous else monomials_upto(nv, delta)
            if len(basis) > max_terms:
                return None
            if deadline is not None and time.time() > deadline:
                raise BudgetExceededError("time budget exhausted")
            if _interpolate_mod(samples_for(embs[0][0]), j, basis, seed) is None:
                log.debug("interpolation: vector %d has no degree-%d denominator", j, delta)
                delta += 1
                continue
            found = _lift_vector(A, j, basis, embs, samples_for, seed)
            log.debug("interpolation: vector %d at degree %d lifted=%s", j, delta, found is not None)
            if found is None:
                delta += 1
        vectors.append(found)
        degrees.append(delta)
    wit = independence_witness(vectors, A.n, A.field, seed)
    if wit is None:
        return None
    wit.update({"verified": True, "method": "interpolation", "pivots": pivots, "degrees": degrees})
    return KernelCertificate("right", vectors, max(degrees), wit, time.time() - t0)


def _lift_vector(A: PolyMatrix, j: int, basis, embs, samples_for, seed: int) -> Optional[Vector]:
    field = A.field
    quadratic = field.is_quadratic
    res0, res1, mods = [], [], []
    for pair in embs:
        sols = [_interpolate_mod(samples_for(emb), j, basis, seed) for emb in pair]
        if any(s is None for s in sols):
            return None
        p = pair[0].p
        if quadratic:
            # x = c0 + c1 r, y = c0 + c1 r'
            r, rc = pair[0].root, pair[1].root
            d = pow((r - rc) % p, -1, p)
            c1 = [[(x - y) * d % p for x, y in zip(u, w)] for u, w in zip(*sols)]
            c0 = [[(x - c * r) % p for x, c in zip(u, w)] for u, w in zip(sols[0], c1)]
            res0.append(c0)
            res1.append(c1)
        else:
            res0.append(sols[0])
        mods.append(p)
        q0 = _reconstruct(res0, mods)
        q1 = _reconstruct(res1, mods) if quadratic else None
        if q0 is None or (quadratic and q1 is None):
            continue
        vec = []
        for i in range(A.cols):
            entry = {}
            for t, mono in enumerate(basis):
                c = FieldScalar(q0[i][t], q1[i][t] if quadratic else 0, field)
                if c:
                    entry[mono] = c
            vec.append(entry)
        if verify_kernel(A, [vec]):
            return _normalize_vector(vec)
    return None


def certify_rank_upper(
    M: PolyMatrix,
    r: int,
    seed: int = 0,
    max_unknowns: Optional[int] = None,
    deadline: Optional[float] = None,
) -> KernelCertificate:
    """Prove rank M <= r over K(a) with right or left kernel vectors.

    Both sides are searched in order of estimated elimination cost; the
    certificate records which side succeeded.
    """
    t0 = time.time()
    k_right, k_left = M.cols - r, M.rows - r
    if k_right <= 0 or k_left <= 0:
        return KernelCertificate("trivial", [], 0, {"verified": True}, 0.0)
    emb = first_embedding(M.field)
    e, homogeneous = _grading(M)
    bound = min(M.rows, M.cols) * max(e, 1)
    MT = M.transpose()
    # a one- or two-dimensional kernel is cheapest to interpolate, whatever its degree
    for side, A, k in sorted((("right", M, k_right), ("left", MT, k_left)), key=lambda o: o[2]):
        if k <= INTERPOLATION_MAX_K:
            kc = interpolated_kernel(A, k, seed, deadline=deadline)
            if kc is not None:
                kc.side = side
                kc.seconds = time.time() - t0
                return kc
    options = []
    for side, A, k in (("right", M, k_right), ("left", MT, k_left)):
        nv = M.n + 1
        for delta in range(bound + 1):
            u = _unknowns(A, delta, homogeneous)
            dst = comb(nv - 1 + delta + e, nv - 1) if homogeneous else comb(nv + delta + e, nv)
            q = A.rows * dst
            options.append((u * q * min(u, q), side, delta, A, k, u))
    options.sort(key=lambda o: o[:3])
    skipped = False
    for _, side, delta, A, k, u in options:
        if max_unknowns is not None and u > max_unknowns:
            skipped = True
            continue
        if deadline is not None and time.time() > deadline:
            raise BudgetExceededError("time budget exhausted")
        found = _attempt(A, k, delta, e, homogeneous, emb, seed)
        if found is not None:
            vectors, wit = found
            return KernelCertificate(side, vectors, delta, wit, time.time() - t0)
    if skipped:
        raise BudgetExceededError(f"rank <= {r} not certified within {max_unknowns} unknowns")
    raise KernelDeficientError(f"rank exceeds {r}: no kernel vectors up to degree {bound}")
