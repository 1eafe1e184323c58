from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unexpected.detector import detect
from unexpected.field import QQ
from unexpected.lefschetz import (
    EquivalenceViolation,
    PowerIdealSpec,
    equivalence_test,
    expected_count_f,
    general_form,
    macaulay_consistent,
    multiplication_map_rank,
    power_ideal_dim,
    quotient_dim,
    slp_check,
    wlp_check,
    wlp_scan,
)
from unexpected.pointsets import PointSet, fermat_supersolvable_duals, root_system, twisted_cubic_points


def spec(forms, d, field=QQ):
    return PowerIdealSpec(tuple(tuple(field.one * c for c in f) for f in forms), d, field)


def test_power_ideal_dim_examples():
    assert power_ideal_dim(spec([(1, 0)], 2), 2) == 1
    assert power_ideal_dim(spec([(1, 0)], 2), 1) == 0
    assert power_ideal_dim(spec([(1, 0, 0), (0, 1, 0)], 1), 1) == 2
    # three squares of independent forms span the conics only partly
    assert power_ideal_dim(spec([(1, 0, 0), (0, 1, 0), (1, 1, 1)], 2), 2) == 3
    assert quotient_dim(spec([(1, 0, 0)], 2), 2) == 5


def test_spec_validation():
    with pytest.raises(ValueError):
        spec([(1, 0), (2, 0)], 2)
    with pytest.raises(ValueError):
        spec([(0, 0)], 2)
    with pytest.raises(ValueError):
        spec([(1, 0), (1, 0, 0)], 2)


def test_multiplication_on_the_full_ring_is_injective():
    s = spec([(1, 0, 0)], 9)
    for e, i in ((1, 2), (2, 3), (3, 1)):
        v = multiplication_map_rank(s, (2, 3, 5), e, i)
        assert not v.fails and v.map_rank == comb(2 + i, 2)


def test_twisted_cubic_wlp():
    Z = twisted_cubic_points(31)
    assert not wlp_check(Z, 2, 1).fails
    v = wlp_check(Z, 3, 2)
    assert v.fails and v.map_rank < min(v.dim_source, v.dim_target)


def test_wlp_scan_stops_when_quotient_vanishes():
    Z = twisted_cubic_points(10)
    scan = wlp_scan(Z, 2)
    assert scan[-1].dim_target == 0
    assert [v.degree for v in scan] == list(range(len(scan)))


@pytest.mark.parametrize(
    "name, rank, d, m, fails",
    [("B", 3, 4, 3, True), ("D", 4, 4, 4, True), ("A", 3, 4, 3, False), ("B", 4, 4, 4, True), ("B", 3, 5, 3, False)],
)
def test_slp_examples(name, rank, d, m, fails):
    assert slp_check(root_system(name, rank), d, m).fails is fails


def test_plane_equal_powers_never_fail():
    for Z in (root_system("B", 3), root_system("A", 3), root_system("H3")):
        for d in range(2, 7):
            v = slp_check(Z, d, d)
            assert v.range == 1 and not v.fails


def test_source_dimension_below_the_power():
    Z = root_system("D", 4)
    for d in range(3, 6):
        for m in range(2, d + 1):
            assert slp_check(Z, d, m).dim_source == comb(3 + m - 1, 3)


@pytest.mark.parametrize("name, rank", [("B", 3), ("B", 4), ("D", 4), ("A", 4), ("F4", 0), ("H3", 0)])
def test_macaulay_duality(name, rank):
    Z = root_system(name, rank)
    for d in range(2, 6):
        assert macaulay_consistent(Z, d)


def test_macaulay_duality_on_fermat_duals():
    assert all(macaulay_consistent(fermat_supersolvable_duals(), d) for d in range(2, 6))


@pytest.mark.parametrize("name, rank, dmax", [("B", 3, 6), ("D", 4, 5), ("A", 3, 6), ("B", 4, 5), ("H3", 0, 6)])
def test_equivalence_on_every_cell(name, rank, dmax):
    Z = root_system(name, rank)
    for d in range(2, dmax + 1):
        for m in range(2, d + 1):
            assert equivalence_test(Z, d, m, seeds=(0, 5)) == detect(Z, d, m).unexpected


def test_equivalence_violation_is_raised(monkeypatch):
    import unexpected.lefschetz as lf

    real = lf.slp_check

    def flipped(Z, d, m, L_seed=0):
        v = real(Z, d, m, L_seed)
        v.fails = not v.fails
        return v

    monkeypatch.setattr(lf, "slp_check", flipped)
    with pytest.raises(EquivalenceViolation):
        lf.equivalence_test(root_system("B", 3), 4, 3)


def test_expected_count_f():
    assert expected_count_f(4, 4) == 41
    assert expected_count_f(4, 3) == 28
    assert expected_count_f(5, 4) == comb(9, 5) - comb(7, 5) - comb(7, 5) + comb(5, 5)
    with pytest.raises(ValueError):
        expected_count_f(3, 4)


def test_general_form_is_deterministic():
    L = general_form(4, 3)
    assert L == general_form(4, 3) and len(set(L)) == 4
    assert general_form(4, 3) != general_form(4, 4)


points = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)).filter(any), min_size=1, max_size=8)


@settings(max_examples=40)
@given(points, st.integers(2, 4))
def test_macaulay_duality_random(pts, d):
    assert macaulay_consistent(PointSet(2, QQ, pts), d)


@settings(max_examples=25)
@given(points, st.sampled_from([(3, 2), (4, 3), (4, 4), (3, 3)]))
def test_equivalence_random(pts, dm):
    d, m = dm
    Z = PointSet(2, QQ, pts)
    assert equivalence_test(Z, d, m, seeds=(0,)) == detect(Z, d, m).unexpected
