from fractions import Fraction

import pytest

from scalg.exactfield import Mat, QQ
from scalg.simplicial import GradedDims
from scalg.symalg import sphere_algebra
from scalg.barcof import (
    CycleError,
    LesVerdict,
    bar_diagonal,
    cofiber_homotopy,
    identity_map,
    les_feasibility,
    power_cofiber_tables,
    representing_map,
    zero_map,
)
from scalg.series import from_dims, leq, mul, sphere_series_char0


# --------------------------------------------------------- representing maps

def test_zero_cycle_factors_through_augmentation():
    A = sphere_algebra(QQ, 1, 2, 4, 2)
    f = zero_map(A, 2)
    assert f.weight_ratio == 1
    for m in range(5):
        assert f.level_maps[m].is_zero()


def test_identity_class_gives_identity_on_generators():
    A = sphere_algebra(QQ, 1, 2, 4, 2)
    f = identity_map(A)
    for m in range(5):
        assert f.level_maps[m] == Mat.identity(QQ, A.base.level_dims[m])


def test_square_class_map_builds_and_verifies():
    # the map representing the square of the degree-2 generator
    A = sphere_algebra(QQ, 1, 2, 5, 3)
    comp = A.components[2]
    ncx = comp.normalized_chains()
    reps, _ = ncx.homology_reps(4)
    assert reps.ncols == 1
    f = representing_map(A, 4, 2, dict(reps.cols[0]), source_W=1)
    assert f.weight_ratio == 2
    assert f.source.n == 4 and f.target.n == 2
    f.check_multiplicative(weights=(1,), levels=range(3))


def test_representing_map_rejects_non_cycle():
    A = sphere_algebra(QQ, 1, 2, 5, 3)
    ncx = A.components[2].normalized_chains()
    # a normalized chain in degree 3 is never a cycle unless its boundary
    # vanishes; build one with nonzero boundary and offer it as a class
    bad = {0: Fraction(1)}
    assert ncx.differential(3).apply(bad)
    with pytest.raises(CycleError):
        representing_map(A, 3, 2, bad)


# ------------------------------------------------------------- bar diagonal

def test_identity_cofiber_is_ground_field():
    A = sphere_algebra(QQ, 1, 2, 4, 3)
    f = identity_map(A)
    h = bar_diagonal(f, 2, 4, 2).homotopy_dims()
    assert h.certified_degree == 3
    assert [h[m] for m in range(4)] == [1, 0, 0, 0]


def test_zero_map_cofiber_matches_series_product():
    # cofiber of the trivial self-map of S(2): homotopy follows the product
    # of the even and the suspended odd sphere series in low degrees
    B = sphere_algebra(QQ, 1, 2, 4, 3)
    g = zero_map(B, 2, source_W=2)
    h = bar_diagonal(g, 2, 4, 2).homotopy_dims()
    want = mul(sphere_series_char0(1, 2, 3), sphere_series_char0(1, 3, 3))
    for m in range(h.certified_degree + 1):
        assert h[m] == want[m]


def test_bar_diagonal_validates_truncations():
    A = sphere_algebra(QQ, 1, 2, 3, 1)
    f = identity_map(A, source_W=1)
    with pytest.raises(ValueError):
        bar_diagonal(f, 2, 5, 1)  # T above the algebra truncation
    with pytest.raises(ValueError):
        bar_diagonal(f, 2, 3, 4)  # W above the target truncation


def test_bar_dims_monotone_in_bounds():
    A = sphere_algebra(QQ, 1, 2, 4, 3)
    f = identity_map(A)
    small = bar_diagonal(f, 1, 4, 1)
    big = bar_diagonal(f, 2, 4, 2)
    bigger = bar_diagonal(f, 3, 4, 3)
    for m in range(5):
        assert small.level_dims[m] <= big.level_dims[m] <= bigger.level_dims[m]


def test_cofiber_homotopy_flags():
    A = sphere_algebra(QQ, 1, 2, 4, 3)
    f = identity_map(A)
    dims, flags, certified = cofiber_homotopy(f, 2, 4, 2)
    assert certified >= 3
    assert flags[:4] == [True, True, True, True]
    assert [dims[m] for m in range(4)] == [1, 0, 0, 0]


# ---------------------------------------------------------- the power tables

def test_power_cofiber_tables_r1_s2():
    rep = power_cofiber_tables(1, 2)
    assert rep.certified_degree >= 5
    assert rep.pi_dims[:6] == [1, 0, 1, 0, 0, 0]
    assert all(rep.pi_flags[:6])
    assert rep.hq_dims == GradedDims({2: 1, 5: 1})
    data = rep.to_json_dict()
    assert data["pi"][:6] == [1, 0, 1, 0, 0, 0]
    assert data["hq"] == {"2": 1, "5": 1}


def test_power_cofiber_tables_r1_s1():
    rep = power_cofiber_tables(1, 1, T=4)
    assert rep.pi_dims[:4] == [1, 0, 0, 0]
    assert all(rep.pi_flags[:4])
    assert rep.hq_dims == GradedDims({2: 1, 3: 1})
    assert any("s=1" in note for note in rep.notes)


def test_power_cofiber_rejects_bad_input():
    with pytest.raises(ValueError):
        power_cofiber_tables(0, 1)
    with pytest.raises(ValueError):
        power_cofiber_tables(1, 2, T=2)


def test_lemma_inequality_on_computed_triple():
    # cofibration source -> target -> cofiber: the middle series is bounded
    # by the product of the outer ones, coefficientwise
    rep = power_cofiber_tables(1, 2)
    upto = rep.certified_degree
    theta_B = sphere_series_char0(1, 2, upto)
    theta_A = sphere_series_char0(1, 4, upto)
    theta_C = from_dims(rep.pi_dims[: upto + 1])
    assert leq(theta_B, mul(theta_A, theta_C))


# --------------------------------------------------------------- feasibility

def test_les_feasibility_zero_first_term():
    x = GradedDims({2: 1, 4: 2})
    assert les_feasibility(GradedDims({}), x, x).feasible
    assert not les_feasibility(GradedDims({}), x, GradedDims({2: 1})).feasible


def test_les_feasibility_sphere_cofibration_shapes():
    # S(V, n-1) -> A -> S(W, n) forces the four-term sequence
    # 0 -> H_n A -> W -> V -> H_{n-1} A -> 0
    n = 3
    V = GradedDims({n - 1: 1})
    W = GradedDims({n: 1})
    ok_profiles = [GradedDims({}), GradedDims({n - 1: 1, n: 1})]
    for profile in ok_profiles:
        assert les_feasibility(V, profile, W).feasible, profile
    assert not les_feasibility(V, GradedDims({n: 1}), W).feasible


def test_les_feasibility_lone_class_is_infeasible():
    verdict = les_feasibility(GradedDims({3: 1}), GradedDims({}), GradedDims({}))
    assert not verdict.feasible
    assert verdict.violation is not None


def test_les_feasibility_all_empty():
    assert les_feasibility(GradedDims({}), GradedDims({}), GradedDims({})).feasible
