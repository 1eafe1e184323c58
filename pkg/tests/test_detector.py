import itertools
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.matrices import DomainMatrix

from unexpected.detector import (
    DetectConfig,
    NotUnexpectedError,
    ResultStore,
    build_condition_matrix,
    detect,
    extract_form,
    monomial_basis,
    search,
)
from unexpected.field import QQ
from unexpected.golden import B3_QUARTIC
from unexpected.pointsets import PointSet, fermat_supersolvable_duals, root_system
from unexpected.poly import SparsePoly


def test_monomial_basis_examples():
    assert monomial_basis(1, 2) == [(2, 0), (1, 1), (0, 2)]
    assert monomial_basis(2, 1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert len(monomial_basis(3, 4)) == 35


def test_condition_matrix_shapes():
    C = build_condition_matrix(root_system("B", 3), 4, 3)
    assert (C.Q1.rows, C.Q1.cols, C.Q2.rows, C.Q2.cols) == (9, 15, 6, 15)
    C = build_condition_matrix(root_system("B", 4), 4, 4)
    assert (C.Q1.rows, C.Q1.cols, C.Q2.rows, C.Q2.cols) == (16, 35, 20, 35)


def test_single_point_simple_condition():
    Z = PointSet(2, QQ, [(1, 0, 0)])
    C = build_condition_matrix(Z, 1, 1)
    assert [str(v) for v in C.Q1.entries[0]] == ["1", "0", "0"]
    assert C.Q2.rows == 1 and C.Q2.entries[0] == [{(1, 0, 0): QQ.one}, {(0, 1, 0): QQ.one}, {(0, 0, 1): QQ.one}]


def test_d_below_m_rejected():
    with pytest.raises(ValueError):
        build_condition_matrix(root_system("B", 3), 2, 3)


@pytest.mark.parametrize(
    "name, rank, d, m, edim, adim",
    [("B", 3, 4, 3, 0, 1), ("D", 4, 3, 3, -2, 1), ("F4", 0, 4, 4, -8, 1), ("B", 4, 4, 4, -1, 1)],
)
def test_detect_examples(name, rank, d, m, edim, adim):
    cell = detect(root_system(name, rank), d, m)
    assert (cell.edim, cell.adim, cell.unexpected) == (edim, adim, True)
    assert cell.certificate == "certified"


def test_a_system_cells_are_expected():
    Z = root_system("A", 4)
    for d in range(2, 7):
        for m in range(2, d + 1):
            cell = detect(Z, d, m)
            assert not cell.unexpected and cell.certificate == "certified"
            assert cell.adim == max(0, cell.edim)


def test_search_on_b4_finds_one_cell():
    cells = search(root_system("B", 4), range(2, 7))
    assert [c.tuple for c in cells if c.unexpected] == [(3, 4, 4, -1, 1)]
    assert [(c.d, c.m) for c in cells] == [(d, m) for d in range(2, 7) for m in range(2, d + 1)]


def test_empty_m_range():
    assert search(root_system("B", 3), range(2, 5), []) == []


def test_search_is_independent_of_threads(tmp_path):
    Z = root_system("B", 3)
    serial = search(Z, range(2, 6))
    store = ResultStore(tmp_path / "cells.jsonl")
    parallel = search(Z, range(2, 6), threads=2, store=store)
    assert [c.to_json() for c in serial] == [c.to_json() for c in parallel]
    # a second run is served from the store
    again = search(Z, range(2, 6), store=ResultStore(tmp_path / "cells.jsonl"))
    assert [c.to_json() for c in again] == [c.to_json() for c in serial]


@pytest.mark.parametrize("n, d, m", [(2, 4, 3), (2, 3, 2), (3, 4, 2), (3, 3, 3)])
def test_fat_point_alone(n, d, m):
    cell = detect(PointSet(n, QQ, []), d, m)
    assert cell.adim == comb(n + d, n) - comb(n + m - 1, n)
    assert cell.adim == cell.edim and not cell.unexpected


def test_plane_cones_are_never_unexpected():
    for Z in (root_system("B", 3), fermat_supersolvable_duals()):
        for d in range(2, 6):
            assert not detect(Z, d, d).unexpected


def test_m_equal_one_is_never_unexpected():
    cell = detect(root_system("B", 3), 3, 1)
    assert not cell.unexpected and cell.adim == max(0, cell.edim)


def test_symbolic_mode_certifies_b3():
    cell = detect(root_system("B", 3), 4, 3, DetectConfig(mode="symbolic"))
    assert cell.certificate == "certified" and cell.details["rank_n"]["mode"] == "exact-symbolic"


def test_probabilistic_mode_labels_hits():
    cell = detect(root_system("B", 3), 4, 3, DetectConfig(mode="probabilistic"))
    assert cell.unexpected and cell.certificate == "probabilistic"
    assert 0 < float(cell.details["rank_n"]["failure_bound"]) < 1e-6


def test_extract_b3_quartic():
    (form,) = extract_form(root_system("B", 3), 4, 3, 1)
    assert form.bidegree == (3, 4)
    assert form.poly.equal_up_to_scalar(SparsePoly.from_text(B3_QUARTIC, 2))


def test_extract_rejects_expected_cells():
    with pytest.raises(NotUnexpectedError):
        extract_form(root_system("B", 3), 3, 3, 1)


@pytest.mark.parametrize("name, rank, d, m", [("B", 4, 4, 4), ("D", 4, 3, 3)])
def test_extracted_forms_vanish_on_z(name, rank, d, m):
    Z = root_system(name, rank)
    (form,) = extract_form(Z, d, m, 1)
    assert form.bidegree[1] == d and form.bidegree[0] >= m
    for P in Z:
        assert not form.poly.evaluate_block("x", P.coords)


# independent oracle: sympy matrices over QQ(a0, a1, a2)

A = sympy.symbols("a0:3")
X = sympy.symbols("x0:3")


def oracle(points, d, m):
    mons = [sympy.Mul(*[x ** k for x, k in zip(X, e)]) for e in monomial_basis(2, d)]
    rows1 = [[mo.subs(dict(zip(X, p))) for mo in mons] for p in points]
    rows2 = []
    for mu in monomial_basis(2, m - 1):
        row = []
        for mo in mons:
            g = mo
            for x, k in zip(X, mu):
                g = sympy.diff(g, x, k)
            row.append(g.subs(dict(zip(X, A)), simultaneous=True))
        rows2.append(row)
    K = sympy.QQ.frac_field(*A)

    def rank(rows):
        if not rows:
            return 0
        return DomainMatrix.from_Matrix(sympy.Matrix(rows)).convert_to(K).rank()

    r1, r2, rn = rank(rows1), rank(rows2), rank(rows1 + rows2)
    # naive dense specializations never exceed the generic rank, and some reach it
    specs = []
    for pt in ((3, -7, 11), (2, 5, -13), (17, 1, 4)):
        sub = dict(zip(A, pt))
        specs.append(sympy.Matrix(rows1 + rows2).subs(sub).rank())
    assert max(specs) == rn and all(s <= rn for s in specs)
    return len(mons) - r1 - r2, len(mons) - rn


point_lists = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)).filter(any), min_size=1, max_size=4)


@settings(max_examples=25)
@given(point_lists, st.sampled_from([(2, 2), (3, 2), (3, 3)]))
def test_brute_force_oracle(points, dm):
    d, m = dm
    Z = PointSet(2, QQ, list(points))
    # repeated or proportional points only repeat rows, so the raw list is fine
    edim, adim = oracle(points, d, m)
    cell = detect(Z, d, m)
    assert (cell.edim, cell.adim) == (edim, adim)
    assert cell.unexpected == (adim > edim and adim > 0)
    assert cell.adim >= cell.edim


def test_oracle_on_b3_subset():
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0)]
    Z = PointSet(2, QQ, pts)
    for d, m in itertools.product(range(2, 4), range(2, 4)):
        if m <= d:
            assert detect(Z, d, m).tuple[3:] == oracle(pts, d, m)
