import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unexpected.field import QQ, QQ_GOLDEN, QQ_SQRT5, FieldScalar
from unexpected.linalg import (
    KernelDeficientError,
    PolyMatrix,
    ScalarMatrix,
    bareiss_kernel,
    certify_rank_upper,
    generic_rank_bareiss,
    generic_rank_probabilistic,
    interpolated_kernel,
    kernel_basis_scalar,
    rank_at_point,
    rank_scalar,
    symbolic_kernel,
    verify_kernel,
)
from unexpected.modular import embeddings, first_embedding
from unexpected.poly import SparsePoly


def a(i, n=1, spec=QQ):
    return SparsePoly.var("a", i, n, spec)


def pm(rows, n=1, spec=QQ):
    return PolyMatrix.from_polys([[SparsePoly.constant(v, n, spec) if isinstance(v, int) else v for v in r] for r in rows], n, spec)


def test_scalar_rank_examples():
    assert rank_scalar(ScalarMatrix.identity(3)) == 3
    assert rank_scalar(ScalarMatrix.zeros(3, 4)) == 0


def test_scalar_rank_over_quadratic_field():
    t = QQ_SQRT5.gen
    M = ScalarMatrix.from_rows([[1, t], [t, 5]], QQ_SQRT5)
    assert rank_scalar(M) == 1
    assert rank_scalar(M, "flint") == 1 and rank_scalar(M, "gauss") == 1


def test_rank_at_point_examples():
    M = pm([[a(0)]])
    assert rank_at_point(M, [0, 1]) == 0
    assert rank_at_point(M, [1, 1]) == 1
    assert rank_at_point(M, [1, 1], "modular") == 1


def test_bareiss_examples():
    assert generic_rank_bareiss(pm([[a(0), a(1)], [a(1), a(0)]])).rank == 2
    assert generic_rank_bareiss(pm([[a(0), a(1)], [2 * a(0), 2 * a(1)]])).rank == 1
    cert = generic_rank_bareiss(pm([[a(0), a(1)], [a(1), a(0)]]))
    assert cert.mode == "exact-symbolic" and cert.witness["pivots"]


def test_probabilistic_examples():
    assert generic_rank_probabilistic(pm([[a(0), 0], [0, a(1)]]), seed=3).rank == 2
    zero = generic_rank_probabilistic(pm([[0, 0], [0, 0]]), seed=3)
    assert zero.rank == 0
    cert = generic_rank_probabilistic(pm([[a(0), 0], [0, a(1)]]), seed=3, trials=4)
    assert cert.trials == 4 and cert.seed == 3 and len(cert.witness["points"]) == 4


def test_symbolic_kernel_of_a_row():
    M = pm([[a(0), a(1)]])
    kc = symbolic_kernel(M, 1)
    (v,) = kc.vectors
    assert verify_kernel(M, kc.vectors)
    # proportional to (a1, -a0)
    f0 = SparsePoly.from_a_dict(v[0], 1)
    f1 = SparsePoly.from_a_dict(v[1], 1)
    assert f0 * a(0) == -(f1 * a(1))
    assert f0.equal_up_to_scalar(a(1))


def test_kernel_of_identity_is_deficient():
    with pytest.raises(KernelDeficientError):
        symbolic_kernel(pm([[1, 0], [0, 1]]), 1)


def test_bareiss_kernel_matches():
    M = pm([[a(0), a(1), 0], [0, a(0), a(1)]])
    ker = bareiss_kernel(M)
    assert len(ker) == 1 and verify_kernel(M, ker)


def test_certify_rank_upper_on_both_sides():
    M = pm([[a(0), a(1)], [a(0) * a(1), a(1) * a(1)], [a(0), a(1)]])
    kc = certify_rank_upper(M, 1, seed=1)
    assert kc.side in ("right", "left")
    A = M if kc.side == "right" else M.transpose()
    assert verify_kernel(A, kc.vectors)
    with pytest.raises(KernelDeficientError):
        certify_rank_upper(pm([[a(0), 0], [0, a(1)]]), 1, seed=1)


def test_interpolated_kernel_of_a_row():
    M = pm([[a(0) ** 3, a(1) ** 3 + a(0) * a(1) ** 2]])
    kc = interpolated_kernel(M, 1, seed=2)
    assert kc.witness["method"] == "interpolation" and kc.degree == 3
    assert verify_kernel(M, kc.vectors)


def test_interpolated_kernel_over_quadratic_field():
    t = QQ_SQRT5.gen
    x, y = a(0, spec=QQ_SQRT5), a(1, spec=QQ_SQRT5)
    M = pm([[x * t + y, x * x, y], [y * y * t, x * y + y * y, 3 * x]], spec=QQ_SQRT5)
    kc = interpolated_kernel(M, 1, seed=0)
    assert kc is not None and verify_kernel(M, kc.vectors)


def test_interpolated_kernel_uses_part_of_a_larger_kernel():
    # nullity 2, but one vector is asked for
    M = pm([[a(0), a(1), a(0) + a(1)]])
    kc = interpolated_kernel(M, 1)
    assert len(kc.vectors) == 1 and verify_kernel(M, kc.vectors)
    with pytest.raises(KernelDeficientError):
        interpolated_kernel(pm([[a(0), 0], [0, a(1)]]), 1)


def test_interpolated_kernel_respects_the_term_cap():
    M = pm([[a(0) ** 9, a(1) ** 9 + a(0) ** 8 * a(1)]])
    assert interpolated_kernel(M, 1, max_terms=3) is None


def test_scalar_kernel_basis():
    M = ScalarMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    K = kernel_basis_scalar(M)
    assert len(K) == 2
    for v in K:
        assert all(sum((x * y for x, y in zip(row, v)), FieldScalar(0)) == 0 for row in M.entries)


def test_embeddings_are_ring_maps():
    for spec in (QQ_SQRT5, QQ_GOLDEN):
        emb = first_embedding(spec)
        t = spec.gen
        assert emb(t * t) == emb(t) * emb(t) % emb.p
        assert emb.conjugate()(t) != emb(t)
    assert embeddings(QQ_SQRT5, 7) == []  # 5 is not a square mod 7


entries = st.integers(-3, 3)


@st.composite
def poly_matrices(draw):
    r, c = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    rows = []
    for _ in range(r):
        row = []
        for _ in range(c):
            c0, c1, c2 = draw(entries), draw(entries), draw(entries)
            row.append(c0 * a(0) + c1 * a(1) + c2 * a(0) * a(1) + SparsePoly.zero(1))
        rows.append(row)
    return PolyMatrix.from_polys(rows, 1, QQ)


@settings(max_examples=60)
@given(poly_matrices(), st.integers(-5, 5), st.integers(-5, 5))
def test_specialization_never_exceeds_generic_rank(M, p0, p1):
    exact = generic_rank_bareiss(M).rank
    assert rank_at_point(M, [p0, p1]) <= exact
    assert generic_rank_probabilistic(M, seed=p0 & 7).rank <= exact
    # on tiny matrices three random samples always find the generic rank
    assert generic_rank_probabilistic(M, seed=0).rank == exact


@settings(max_examples=60)
@given(poly_matrices(), poly_matrices())
def test_stacking_is_subadditive(A, B):
    if A.cols != B.cols:
        return
    stacked = PolyMatrix(A.rows + B.rows, A.cols, A.n, A.entries + B.entries, A.field)
    r = generic_rank_bareiss(stacked).rank
    assert r <= generic_rank_bareiss(A).rank + generic_rank_bareiss(B).rank


@settings(max_examples=40)
@given(poly_matrices())
def test_kernel_vectors_vanish_identically(M):
    rank = generic_rank_bareiss(M).rank
    k = M.cols - rank
    if k == 0:
        return
    kc = symbolic_kernel(M, k)
    assert verify_kernel(M, kc.vectors)
    assert kc.witness["verified"]


@settings(max_examples=40)
@given(poly_matrices())
def test_interpolated_kernel_agrees_with_bareiss(M):
    k = M.cols - generic_rank_bareiss(M).rank
    if k == 0 or k > 2:
        return
    kc = interpolated_kernel(M, k, seed=1)
    assert kc is not None and len(kc.vectors) == k
    assert verify_kernel(M, kc.vectors) and kc.witness["verified"]
