"""Detection of unexpected hypersurfaces for a point set with a general fat point.

For Z in P^n, degree d and multiplicity m the condition matrix is N = [Q1; Q2]:
Q1 evaluates the degree-d monomials at Z and Q2 applies every order-(m-1)
partial derivative at the generic point a.  Then

    edim = |Md| - rank Q1 - rank Q2,    adim = |Md| - rank N,

and Z admits an unexpected hypersurface iff adim > edim and adim > 0.

Writing K for a basis of ker Q1, rank N = rank Q1 + rank(Q2 K), so the generic
rank question lives on the smaller matrix Q2 K.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import flint

from .field import DEFAULT_BOUND, FieldScalar, split_rng
from .gcd import DPoly, d_add, d_mul
from .linalg import (
    BudgetExceededError,
    KernelDeficientError,
    PolyMatrix,
    ScalarMatrix,
    Vector,
    certify_rank_upper,
    generic_rank_bareiss,
    kernel_basis_scalar,
    random_point,
    rank_scalar,
    rref_scalar,
    symbolic_kernel,
)
from .modular import Embedding, first_embedding
from .pointsets import PointSet
from .poly import SparsePoly, monomials

log = logging.getLogger(__name__)

Exp = Tuple[int, ...]
MODES = ("symbolic", "probabilistic", "hybrid")


class NotUnexpectedError(ValueError):
    """A form was requested for a cell that is not unexpected."""


class CertificationError(RuntimeError):
    """Symbolic mode could not certify a verdict."""


def monomial_basis(n: int, d: int) -> List[Exp]:
    """Degree-d monomials in x_0..x_n, graded lex with x_0 largest."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return monomials(n + 1, d)


def falling(beta: Exp, mu: Exp) -> int:
    """Coefficient of x^(beta-mu) in the mu-th derivative of x^beta."""
    r = 1
    for b, u in zip(beta, mu):
        if u > b:
            return 0
        for k in range(u):
            r *= b - k
    return r


@dataclass
class ConditionMatrix:
    n: int
    d: int
    m: int
    Md: List[Exp]
    Mm: List[Exp]
    Q1: ScalarMatrix
    Q2: PolyMatrix

    def stacked(self) -> PolyMatrix:
        """N = [Q1; Q2] as one polynomial matrix."""
        z = (0,) * (self.n + 1)
        top = [[{z: v} if v else {} for v in row] for row in self.Q1.entries]
        return PolyMatrix(self.Q1.rows + self.Q2.rows, len(self.Md), self.n, top + self.Q2.entries, self.Q2.field)


def build_condition_matrix(Z: PointSet, d: int, m: int) -> ConditionMatrix:
    if d < m:
        raise ValueError(f"need d >= m, got d={d}, m={m}")
    if m < 1:
        raise ValueError("multiplicity must be at least 1")
    n, spec = Z.n, Z.field
    Md = monomial_basis(n, d)
    Mm = monomial_basis(n, m - 1)
    rows = []
    for P in Z.points:
        row = []
        for beta in Md:
            v = spec.one
            for c, k in zip(P.coords, beta):
                if k:
                    v = v * c ** k
            row.append(v)
        rows.append(row)
    Q1 = ScalarMatrix(len(rows), len(Md), rows, spec)
    q2 = []
    for mu in Mm:
        row = []
        for beta in Md:
            f = falling(beta, mu)
            row.append({tuple(b - u for b, u in zip(beta, mu)): FieldScalar(f, 0, spec)} if f else {})
        q2.append(row)
    Q2 = PolyMatrix(len(Mm), len(Md), n, q2, spec)
    return ConditionMatrix(n, d, m, Md, Mm, Q1, Q2)


@dataclass
class DetectConfig:
    mode: str = "hybrid"
    seed: int = 0
    trials: int = 3
    bound: int = DEFAULT_BOUND
    max_unknowns: Optional[int] = 20000
    time_budget: Optional[float] = None
    bareiss_limit: int = 12
    # ansatz size allowed when proving the full adim beyond what the verdict needs
    exact_adim_unknowns: Optional[int] = 2000

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.trials < 1:
            raise ValueError("trials must be positive")


@dataclass
class DetectionCell:
    n: int
    d: int
    m: int
    edim: int
    adim: int
    unexpected: bool
    certificate: str
    kernel_dim_claimed: int
    runtime: float = 0.0
    label: str = ""
    mode: str = ""
    seed: int = 0
    details: dict = field(default_factory=dict)

    @property
    def tuple(self) -> Tuple[int, int, int, int, int]:
        return (self.n, self.d, self.m, self.edim, self.adim)

    def to_json(self, with_runtime: bool = False) -> dict:
        out = asdict(self)
        if not with_runtime:
            out.pop("runtime")
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "DetectionCell":
        obj = dict(obj)
        obj.setdefault("runtime", 0.0)
        return cls(**obj)


def cell_seed(seed: int, label: str, d: int, m: int) -> int:
    return split_rng(seed, "cell", label, d, m).getrandbits(63)


# modular specializations


class _ModularN:
    """Reductions of Q1 and of Q2 at random points, kept for reuse."""

    def __init__(self, C: ConditionMatrix, emb: Embedding):
        self.C = C
        self.emb = emb
        self.q1_rows = [[emb(v) for v in row] for row in C.Q1.entries]
        self.coeffs = [[(falling(beta, mu), tuple(b - u for b, u in zip(beta, mu))) for beta in C.Md] for mu in C.Mm]

    def q2_at(self, point: Sequence[int]) -> List[List[int]]:
        p = self.emb.p
        cache: Dict[Exp, int] = {}
        out = []
        for row in self.coeffs:
            r = []
            for f, e in row:
                if not f:
                    r.append(0)
                    continue
                v = cache.get(e)
                if v is None:
                    v = 1
                    for x, k in zip(point, e):
                        if k:
                            v = v * pow(x, k, p) % p
                    cache[e] = v
                r.append(f * v % p)
            out.append(r)
        return out

    def ranks(self, point: Sequence[int]) -> Tuple[int, int]:
        """(rank Q2(point), rank N(point)) modulo the prime."""
        p = self.emb.p
        cols = len(self.C.Md)
        q2 = self.q2_at([self.emb.rational(x) for x in point])
        r2 = flint.nmod_mat(len(q2), cols, [v for r in q2 for v in r], p).rank() if q2 else 0
        rows = self.q1_rows + q2
        rn = flint.nmod_mat(len(rows), cols, [v for r in rows for v in r], p).rank() if rows else 0
        return r2, rn


def reduced_matrix(C: ConditionMatrix, K: Sequence[Sequence[FieldScalar]]) -> PolyMatrix:
    """M = Q2 K, with K given as a list of kernel vectors of Q1."""
    spec = C.Q1.field
    ent = []
    for i, mu in enumerate(C.Mm):
        row = []
        q2row = C.Q2.entries[i]
        nz = [(b, next(iter(q2row[b].items()))) for b in range(len(C.Md)) if q2row[b]]
        for vec in K:
            acc: DPoly = {}
            for b, (e, c) in nz:
                v = vec[b]
                if v:
                    w = c * v
                    prev = acc.get(e)
                    acc[e] = w if prev is None else prev + w
            row.append({e: c for e, c in acc.items() if c})
        ent.append(row)
    return PolyMatrix(len(C.Mm), len(K), C.n, ent, spec)


def lift_right(K: Sequence[Sequence[FieldScalar]], v: Vector, ncols: int) -> Vector:
    """Coefficient vector c = K v of a form in ker N."""
    out: List[DPoly] = [{} for _ in range(ncols)]
    for kvec, poly in zip(K, v):
        if not poly:
            continue
        for b, s in enumerate(kvec):
            if s:
                out[b] = d_add(out[b], {e: c * s for e, c in poly.items()})
    return out


def lift_left(C: ConditionMatrix, w: Vector) -> Vector:
    """Extend a left kernel vector of Q2 K to one of N = [Q1; Q2]."""
    spec = C.Q1.field
    n1 = C.Q1.rows
    ncols = len(C.Md)
    # u = w^T Q2 is a row of polynomials that lies in the row space of Q1
    u: List[DPoly] = [{} for _ in range(ncols)]
    for i, wi in enumerate(w):
        if not wi:
            continue
        for b, f in enumerate(C.Q2.entries[i]):
            if f:
                u[b] = d_add(u[b], d_mul(wi, f))
    if n1 == 0:
        return list(w)
    # solve y^T Q1 = -u one a-monomial at a time, on a basis of rows of Q1
    _, basis_rows = rref_scalar(C.Q1.transpose())
    sub = ScalarMatrix(len(basis_rows), ncols, [C.Q1.entries[r] for r in basis_rows], spec)
    _, cols = rref_scalar(sub)
    block = [[C.Q1.entries[r][c] for r in basis_rows] for c in cols]  # B^T
    inv = _invert(block, spec)
    y: List[DPoly] = [{} for _ in range(n1)]
    monos = set()
    for f in u:
        monos.update(f)
    for e in monos:
        rhs = [-(u[c].get(e, spec.zero)) for c in cols]
        for i, r in enumerate(basis_rows):
            s = spec.zero
            for j, x in enumerate(rhs):
                if x:
                    s = s + inv[i][j] * x
            if s:
                y[r][e] = s
    return y + list(w)


def _invert(A: List[List[FieldScalar]], spec) -> List[List[FieldScalar]]:
    k = len(A)
    aug = [list(row) + [spec.one if i == j else spec.zero for j in range(k)] for i, row in enumerate(A)]
    from .linalg import gauss_jordan

    R, piv = gauss_jordan(aug, spec)
    if piv[:k] != list(range(k)):
        raise ArithmeticError("singular block")
    return [row[k:] for row in R]


def verify_right_N(C: ConditionMatrix, c: Vector) -> bool:
    N = C.stacked()
    return not any(N.mul_vector(c))


def verify_left_N(C: ConditionMatrix, y: Vector) -> bool:
    N = C.stacked()
    return not any(N.transpose().mul_vector(y))


# detection


@dataclass
class _Prepared:
    C: ConditionMatrix
    rank_q1: int
    rank_q2: int
    edim: int
    adim_hi: int
    witness: dict


def _screen(C: ConditionMatrix, cfg: DetectConfig, seed: int) -> _Prepared:
    n = C.n
    emb = first_embedding(C.Q1.field)
    rank_q1 = rank_scalar(C.Q1)
    rows2 = len(C.Mm)
    ncols = len(C.Md)
    modn = _ModularN(C, emb)
    best_r2, best_rn = -1, -1
    points = []
    achieved = None
    edim = None
    for t in range(cfg.trials):
        pt = random_point(seed, ("screen", t), n + 1, cfg.bound)
        r2, rn = modn.ranks(pt)
        points.append([str(x) for x in pt])
        best_r2, best_rn = max(best_r2, r2), max(best_rn, rn)
        if best_r2 == min(rows2, ncols):
            edim = ncols - rank_q1 - best_r2
            if ncols - best_rn <= max(0, edim):
                achieved = t
                break
    rank_q2 = best_r2
    if rank_q2 != min(rows2, ncols):
        raise CertificationError("the fat point conditions did not reach full rank at any sample")
    edim = ncols - rank_q1 - rank_q2
    witness = {"prime": emb.p, "points": points, "bound": cfg.bound, "achieved_at": achieved}
    return _Prepared(C, rank_q1, rank_q2, edim, ncols - best_rn, witness)


def failure_bound(prep: _Prepared, d: int, m: int, cfg: DetectConfig) -> str:
    """Schwartz-Zippel bound on the chance that every sample missed the generic rank of N.

    A nonzero minor of N has degree at most rank_q2 * (d - m + 1) in a; a sample misses
    it with probability at most degree / bound, independently per trial.  Reduction
    modulo the 62-bit prime adds a further failure chance that is not included.
    """
    deg = prep.rank_q2 * (d - m + 1)
    return f"{min(1.0, deg / cfg.bound) ** cfg.trials:.3g}"


def detect(Z: PointSet, d: int, m: int, config: Optional[DetectConfig] = None, **kw) -> DetectionCell:
    """Verdict for one (d, m) cell, with certification per the configured mode."""
    cfg = config or DetectConfig(**kw)
    t0 = time.time()
    C = build_condition_matrix(Z, d, m)
    seed = cell_seed(cfg.seed, Z.label, d, m)
    prep = _screen(C, cfg, seed)
    edim, adim = prep.edim, prep.adim_hi
    base = dict(n=Z.n, d=d, m=m, edim=edim, label=Z.label, mode=cfg.mode, seed=cfg.seed)
    details = {"rank_q1": prep.rank_q1, "rank_q2": prep.rank_q2, "Md": len(C.Md),
               "specialization": prep.witness}
    if adim <= max(0, edim):
        details["rank_n"] = {"rank": len(C.Md) - adim, "mode": "exact-symbolic",
                             "how": "specialization meets the expected bound"}
        return DetectionCell(adim=adim, unexpected=False, certificate="certified", kernel_dim_claimed=adim,
                             runtime=time.time() - t0, details=details, **base)
    if cfg.mode == "probabilistic":
        details["rank_n"] = {"rank": len(C.Md) - adim, "mode": "probabilistic", "trials": cfg.trials,
                             "failure_bound": failure_bound(prep, d, m, cfg)}
        return DetectionCell(adim=adim, unexpected=adim > edim and adim > 0, certificate="probabilistic",
                             kernel_dim_claimed=adim, runtime=time.time() - t0, details=details, **base)
    deadline = None if cfg.time_budget is None else t0 + cfg.time_budget
    try:
        cert, K, M = certify_adim(C, adim, seed, cfg, deadline, edim)
    except BudgetExceededError as exc:
        if cfg.mode == "symbolic":
            raise CertificationError(str(exc)) from exc
        details["rank_n"] = {"rank": len(C.Md) - adim, "mode": "probabilistic", "trials": cfg.trials,
                             "failure_bound": failure_bound(prep, d, m, cfg),
                             "note": f"symbolic certification skipped: {exc}"}
        return DetectionCell(adim=adim, unexpected=adim > edim and adim > 0, certificate="probabilistic",
                             kernel_dim_claimed=adim, runtime=time.time() - t0, details=details, **base)
    except KernelDeficientError:
        # the screen was unlucky: the generic rank is larger than observed
        retry = replace(cfg, seed=cfg.seed + 1, trials=cfg.trials * 2)
        log.warning("kernel search refuted the screen for %s (%d,%d); resampling", Z.label, d, m)
        cell = detect(Z, d, m, retry)
        cell.seed = cfg.seed
        return cell
    details["rank_n"] = {"rank": len(C.Md) - adim, "mode": "exact-symbolic", **cert}
    return DetectionCell(adim=adim, unexpected=adim > edim and adim > 0, certificate="certified",
                         kernel_dim_claimed=adim, runtime=time.time() - t0, details=details, **base)


def certify_adim(C: ConditionMatrix, adim: int, seed: int, cfg: DetectConfig, deadline=None, edim: int = 0):
    """Prove adim >= max(0, edim) + 1 with explicit kernel vectors of N, and the full adim when affordable.

    The screen already bounds adim from above, so a full certificate makes the
    reported value exact; otherwise only the verdict is proven.
    """
    K = kernel_basis_scalar(C.Q1)
    M = reduced_matrix(C, K)
    r = len(K) - adim
    if M.rows * M.cols <= cfg.bareiss_limit:
        rc = generic_rank_bareiss(M)
        if rc.rank != r:
            raise KernelDeficientError("Bareiss rank disagrees with the screen")
        return {"how": "bareiss", "pivots": rc.witness["pivots"], "adim_proven": adim}, K, M
    need = max(0, edim) + 1
    kc = None
    if need < adim:
        try:
            kc = certify_rank_upper(M, r, seed, _tighter(cfg.max_unknowns, cfg.exact_adim_unknowns), deadline)
            proven = adim
        except BudgetExceededError:
            log.info("full adim %d too costly; certifying the verdict with %d kernel dimensions", adim, need)
    if kc is None:
        kc = certify_rank_upper(M, len(K) - need, seed, cfg.max_unknowns, deadline)
        proven = need if need < adim else adim
    out = {"how": "kernel", "side": kc.side, "degree": kc.degree, "vectors": kc.count, "witness": kc.witness,
           "adim_proven": proven}
    if kc.side == "right":
        lifted = [lift_right(K, v, len(C.Md)) for v in kc.vectors]
        if not all(verify_right_N(C, c) for c in lifted):
            raise ArithmeticError("lifted kernel vector is not in ker N")
    elif kc.side == "left":
        lifted = [lift_left(C, w) for w in kc.vectors]
        if not all(verify_left_N(C, y) for y in lifted):
            raise ArithmeticError("lifted left vector does not annihilate N")
    out["verified_on_N"] = True
    return out, K, M


def _tighter(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    return a if b is None else min(a, b)


# grid search and result store


class ResultStore:
    """Append-only JSON-lines cache keyed by (label, d, m, mode, seed)."""

    def __init__(self, path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._cells: Dict[tuple, dict] = {}
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                if line.strip():
                    obj = json.loads(line)
                    self._cells[self.key(obj["label"], obj["d"], obj["m"], obj["mode"], obj["seed"])] = obj

    @staticmethod
    def key(label, d, m, mode, seed) -> tuple:
        return (label, int(d), int(m), mode, int(seed))

    def get(self, label, d, m, mode, seed) -> Optional[DetectionCell]:
        obj = self._cells.get(self.key(label, d, m, mode, seed))
        return DetectionCell.from_json(obj) if obj else None

    def put(self, cell: DetectionCell) -> None:
        obj = cell.to_json(with_runtime=True)
        with self._lock:
            self._cells[self.key(cell.label, cell.d, cell.m, cell.mode, cell.seed)] = obj
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as fh:
                fh.write(json.dumps(obj, sort_keys=True) + "\n")


def _detect_job(args):
    Z, d, m, cfg = args
    return detect(Z, d, m, cfg)


def default_threads() -> int:
    env = os.environ.get("UNEXPECTED_THREADS")
    if env:
        return max(1, int(env))
    return max(1, os.cpu_count() or 1)


def search(
    Z: PointSet,
    d_range: Sequence[int],
    m_range: Optional[Sequence[int]] = None,
    config: Optional[DetectConfig] = None,
    threads: int = 1,
    store: Optional[ResultStore] = None,
    **kw,
) -> List[DetectionCell]:
    """All cells (d, m) with m <= d, in ascending order."""
    cfg = config or DetectConfig(**kw)
    m_vals = list(m_range) if m_range is not None else None
    todo = []
    for d in sorted(d_range):
        ms = [m for m in (m_vals if m_vals is not None else range(2, d + 1)) if 1 <= m <= d]
        for m in sorted(ms):
            todo.append((d, m))
    results: Dict[Tuple[int, int], DetectionCell] = {}
    pending = []
    for d, m in todo:
        cached = store.get(Z.label, d, m, cfg.mode, cfg.seed) if store else None
        if cached is not None:
            results[(d, m)] = cached
        else:
            pending.append((d, m))
    if threads > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for (d, m), cell in zip(pending, pool.map(_detect_job, [(Z, d, m, cfg) for d, m in pending])):
                results[(d, m)] = cell
                if store:
                    store.put(cell)
    else:
        for d, m in pending:
            cell = detect(Z, d, m, cfg)
            results[(d, m)] = cell
            if store:
                store.put(cell)
    return [results[k] for k in todo]


# forms


@dataclass
class UnexpectedForm:
    poly: SparsePoly
    bidegree: Tuple[int, int]

    def to_text(self) -> str:
        return self.poly.to_text()


def form_from_vector(C: ConditionMatrix, c: Vector) -> SparsePoly:
    """F(a, x) = sum over monomials x^beta of c_beta(a) x^beta."""
    terms = {}
    for beta, poly in zip(C.Md, c):
        for e, v in poly.items():
            terms[(e, beta)] = v
    return SparsePoly(C.n, C.Q1.field, terms)


def extract_form(Z: PointSet, d: int, m: int, count: int = 1, config: Optional[DetectConfig] = None, **kw) -> List[UnexpectedForm]:
    """Star-normalized forms from verified kernel vectors of N."""
    cfg = config or DetectConfig(**kw)
    cell = detect(Z, d, m, cfg)
    if not cell.unexpected:
        raise NotUnexpectedError(f"({d},{m}) is not unexpected for {Z.label}")
    if count > cell.adim:
        raise KernelDeficientError(f"asked for {count} forms but adim is {cell.adim}")
    C = build_condition_matrix(Z, d, m)
    K = kernel_basis_scalar(C.Q1)
    M = reduced_matrix(C, K)
    seed = cell_seed(cfg.seed, Z.label, d, m)
    kc = symbolic_kernel(M, count, seed, max_unknowns=cfg.max_unknowns)
    forms = []
    for v in kc.vectors:
        c = lift_right(K, v, len(C.Md))
        if not verify_right_N(C, c):
            raise ArithmeticError("form coefficients are not in ker N")
        F = form_from_vector(C, c).star()
        for P in Z.points:
            if F.evaluate_block("x", P.coords):
                raise ArithmeticError(f"form does not vanish at {P}")
        mult = F.swap_blocks().diagonal_shift().min_a_degree()
        if mult < m:
            raise ArithmeticError(f"form has multiplicity {mult} < {m} at the general point")
        forms.append(UnexpectedForm(F, F.bidegree()))
    return forms
