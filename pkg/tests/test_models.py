import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import idx
from helpers import random_datasets
from mcrs.dataset import DMUDataset, from_columns
from mcrs.fixtures import table1
from mcrs.models import (
    BigMSaturationError,
    EfficiencyStatus,
    Hyperplane,
    Mode,
    NotParetoEfficientError,
    classify_all,
    efficient_set,
    extreme_efficient_set,
    is_pareto_efficient,
    projection_from_hyperplane,
    solve_additive,
    solve_madd,
    solve_maximal_frs,
    solve_mcrs,
    support_set,
)
from mcrs.oracles import oracle_closest

E = EfficiencyStatus


def names(ds, members):
    return {ds.names[j] for j in members}


# --- classification -------------------------------------------------------


def test_classify_table1(t1_status):
    assert [t1_status[j] for j in range(9)] == [E.EXTREME_EFFICIENT] * 4 + [E.EFFICIENT_NONEXTREME] + [
        E.INEFFICIENT
    ] * 4
    assert efficient_set(t1_status) == (0, 1, 2, 3, 4)
    assert extreme_efficient_set(t1_status) == (0, 1, 2, 3)


def test_dmu5_is_midpoint_of_dmu2_and_dmu3(t1):
    # 2x2 system: l2*(2,5) + l3*(4,3) = (3,4)
    lam = np.linalg.solve(np.array([[2.0, 4.0], [5.0, 3.0]]), [3.0, 4.0])
    np.testing.assert_allclose(lam, [0.5, 0.5])
    x5, _ = t1.column(4)
    np.testing.assert_allclose(t1.inputs[:, [1, 2]] @ lam, x5)


def test_single_dmu_is_extreme():
    ds = from_columns(["A"], [((2, 3), (1,))])
    assert classify_all(ds) == {0: E.EXTREME_EFFICIENT}


def test_duplicate_rays_first_is_extreme():
    ds = from_columns(["A", "B", "C"], [((1, 2), (1,)), ((2, 4), (2,)), ((2, 1), (1,))])
    st_ = classify_all(ds)
    assert st_ == {0: E.EXTREME_EFFICIENT, 1: E.EFFICIENT_NONEXTREME, 2: E.EXTREME_EFFICIENT}


def test_weakly_efficient_is_inefficient():
    # B sits on A's input-2 face but uses more of input 1
    ds = from_columns(["A", "B"], [((1, 1), (1,)), ((2, 1), (1,))])
    assert classify_all(ds)[1] is E.INEFFICIENT


@settings(max_examples=25, deadline=None)
@given(o=st.integers(0, 8), alpha=st.floats(0.05, 20.0))
def test_classification_invariant_under_ray_scaling(t1, t1_status, o, alpha):
    X, Y = t1.inputs.copy(), t1.outputs.copy()
    X[:, o] *= alpha
    Y[:, o] *= alpha
    scaled = DMUDataset(t1.names, X, Y)
    assert classify_all(scaled) == t1_status


# --- additive (furthest) --------------------------------------------------


@pytest.mark.parametrize(
    "dmu, point, objective",
    [("DMU8", (4, 3, 1), 1.0), ("DMU9", (4, 3, 1), 5.0), ("DMU3", (4, 3, 1), 0.0)],
)
def test_additive_examples(t1, dmu, point, objective):
    p = solve_additive(t1, idx(dmu))
    assert p.mode is Mode.FURTHEST
    np.testing.assert_allclose(np.concatenate(p.point), point, atol=1e-9)
    assert p.objective == pytest.approx(objective, abs=1e-9)


@pytest.mark.parametrize("dmu, objective", [("DMU6", 4.0), ("DMU7", 4.0)])
def test_additive_objective_with_tied_points(t1, dmu, objective):
    assert solve_additive(t1, idx(dmu)).objective == pytest.approx(objective, abs=1e-9)


# --- closest target -------------------------------------------------------


@pytest.mark.parametrize(
    "dmu, point, objective",
    [
        ("DMU6", (3, 8, 14 / 9), 5 / 9),
        ("DMU8", (5, 3, 1.1), 0.1),
        ("DMU9", (9, 3, 1.5), 0.5),
        ("DMU2", (2, 5, 1), 0.0),
    ],
)
def test_madd_examples(t1, t1_status, dmu, point, objective):
    p = solve_madd(t1, idx(dmu), statuses=t1_status)
    assert p.mode is Mode.CLOSEST
    np.testing.assert_allclose(np.concatenate(p.point), point, atol=1e-9)
    assert p.objective == pytest.approx(objective, abs=1e-9)


def test_madd_dmu7_matches_oracle(t1, t1_status):
    ob, (xo, yo) = oracle_closest(t1, idx("DMU7"), statuses=t1_status)
    assert ob == pytest.approx(0.5, abs=1e-9)
    np.testing.assert_allclose(np.concatenate([xo, yo]), (7, 4, 1.5), atol=1e-9)
    p = solve_madd(t1, idx("DMU7"), statuses=t1_status)
    assert p.objective == pytest.approx(ob, abs=1e-6)


def test_madd_default_candidates_match_explicit(t1, t1_status):
    a = solve_madd(t1, idx("DMU6"))
    b = solve_madd(t1, idx("DMU6"), candidates=efficient_set(t1_status))
    assert a.objective == b.objective


def test_madd_extreme_only_candidates(t1, t1_status):
    p = solve_madd(t1, idx("DMU6"), candidates=extreme_efficient_set(t1_status))
    assert p.objective == pytest.approx(5 / 9, abs=1e-9)
    assert set(p.lambdas) == {0, 1, 2, 3}


def test_big_m_too_small(t1, t1_status):
    with pytest.raises(BigMSaturationError):
        solve_madd(t1, idx("DMU9"), big_m=1.0, statuses=t1_status)
    with pytest.raises(BigMSaturationError):
        solve_madd(t1, idx("DMU2"), big_m=1.0, statuses=t1_status)


def test_big_m_just_large_enough(t1, t1_status):
    # every lambda and deficit in the Table 1 solutions is below 20
    p = solve_madd(t1, idx("DMU8"), big_m=100.0, statuses=t1_status)
    assert p.objective == pytest.approx(0.1, abs=1e-9)


def test_madd_rejects_bad_arguments(t1, t1_status):
    with pytest.raises(IndexError):
        solve_madd(t1, 9, statuses=t1_status)
    with pytest.raises(ValueError):
        solve_madd(t1, 0, candidates=[], statuses=t1_status)
    with pytest.raises(ValueError):
        solve_madd(t1, 0, big_m=-1, statuses=t1_status)


# --- support set ----------------------------------------------------------


def _hyperplane_check(ds, h, cands):
    """Independent check: candidates with u.y - v.x == 0."""
    return {j for j in cands if abs(h.u @ ds.outputs[:, j] - h.v @ ds.inputs[:, j]) <= 1e-12}


@pytest.mark.parametrize(
    "dmu, point, v, u, expected",
    [
        ("DMU8", ((5, 3), (1.1,)), (1, 2), (10,), {"DMU3", "DMU4"}),
        ("DMU9", ((9, 3), (1.5,)), (1, 3), (12,), {"DMU4"}),
    ],
)
def test_support_set_examples(t1, t1_status, dmu, point, v, u, expected):
    h = Hyperplane(v=v, u=u)
    cands = efficient_set(t1_status)
    assert names(t1, _hyperplane_check(t1, h, cands)) == expected
    proj = projection_from_hyperplane(t1, idx(dmu), point, h, cands)
    assert names(t1, support_set(proj)) == expected


def test_support_set_of_efficient_contains_itself(t1, t1_status):
    for o in efficient_set(t1_status):
        p = solve_madd(t1, o, statuses=t1_status)
        assert o in support_set(p)


def test_support_set_requires_deficits(t1):
    with pytest.raises(ValueError):
        support_set(solve_additive(t1, 5))


# --- maximal closest reference set ----------------------------------------


def test_mcrs_dmu6(t1, t1_status):
    p = solve_madd(t1, idx("DMU6"), statuses=t1_status)
    r = solve_mcrs(t1, p, statuses=t1_status)
    assert names(t1, r.members) == {"DMU1", "DMU2"}
    # l1 + 2 l2 = 3, 7 l1 + 5 l2 = 8
    lam = np.linalg.solve([[1.0, 2.0], [7.0, 5.0]], [3.0, 8.0])
    np.testing.assert_allclose(lam, [1 / 9, 13 / 9])
    assert r.mu[0] == pytest.approx(lam[0], abs=1e-9)
    assert r.mu[1] == pytest.approx(lam[1], abs=1e-9)


def test_mcrs_dmu8(t1, t1_status):
    p = solve_madd(t1, idx("DMU8"), statuses=t1_status)
    r = solve_mcrs(t1, p, statuses=t1_status)
    assert names(t1, r.members) == {"DMU3", "DMU4"}
    lam = np.linalg.solve([[4.0, 6.0], [3.0, 2.0]], [5.0, 3.0])
    np.testing.assert_allclose(lam, [0.8, 0.3])
    assert [r.mu[2], r.mu[3]] == pytest.approx(list(lam), abs=1e-9)


@pytest.mark.parametrize("all_efficient", [False, True])
def test_mcrs_dmu9_rejects_dmu3(t1, t1_status, all_efficient):
    p = solve_madd(t1, idx("DMU9"), statuses=t1_status)
    r = solve_mcrs(t1, p, all_efficient=all_efficient, statuses=t1_status)
    assert names(t1, r.members) == {"DMU4"}
    assert r.mu[3] == pytest.approx(1.5, abs=1e-9)
    assert 2 in r.candidates
    assert r.mu[2] <= 1e-9 and r.t[2] > 1e-6


def test_mcrs_dmu9_with_candidates_on_dmu3_dmu4_face(t1, t1_status):
    h = Hyperplane(v=(1, 2), u=(10,))
    proj = projection_from_hyperplane(t1, idx("DMU9"), ((9, 3), (1.5,)), h, efficient_set(t1_status))
    assert names(t1, support_set(proj)) == {"DMU3", "DMU4"}
    r = solve_mcrs(t1, proj, statuses=t1_status)
    assert names(t1, r.members) == {"DMU4"}
    assert r.t[2] > 0


def test_mcrs_rejects_interior_point(t1, t1_status):
    h = Hyperplane(v=(2, 1), u=(9,))
    proj = projection_from_hyperplane(t1, idx("DMU6"), ((3, 8), (1,)), h, efficient_set(t1_status))
    with pytest.raises(NotParetoEfficientError):
        solve_mcrs(t1, proj, statuses=t1_status)


def test_maximal_frs_table1(t1, t1_status):
    expected = {
        "DMU6": {"DMU2", "DMU3", "DMU5"},
        "DMU7": {"DMU2", "DMU3", "DMU5"},
        "DMU8": {"DMU3"},
        "DMU9": {"DMU3"},
    }
    for dmu, members in expected.items():
        r = solve_maximal_frs(t1, idx(dmu), statuses=t1_status)
        assert names(t1, r.members) == members
        assert r.projection.objective == pytest.approx(solve_additive(t1, idx(dmu)).objective, abs=1e-9)
        assert is_pareto_efficient(t1, r.projection.point, statuses=t1_status)


# --- Pareto check ---------------------------------------------------------


def test_pareto_examples(t1, t1_status):
    assert 9 * (14 / 9) == pytest.approx(2 * 3 + 8)  # on 9y = 2x1 + x2
    assert is_pareto_efficient(t1, ((3, 8), (14 / 9,)), statuses=t1_status)
    assert not is_pareto_efficient(t1, ((3, 8), (1,)), statuses=t1_status)
    for j in efficient_set(t1_status):
        assert is_pareto_efficient(t1, t1.column(j), statuses=t1_status)


def test_pareto_outside_technology(t1, t1_status):
    assert not is_pareto_efficient(t1, ((1, 1), (1,)), statuses=t1_status)


# --- invariants over Table 1 and seeded random data -----------------------

DATASETS = [table1(), *random_datasets()]


@pytest.mark.parametrize("ds", DATASETS, ids=lambda d: d.names[0])
def test_projection_and_reference_invariants(ds):
    statuses = classify_all(ds)
    for o in range(ds.n):
        x, y = ds.column(o)
        far = solve_additive(ds, o)
        near = solve_madd(ds, o, statuses=statuses)
        for p in (far, near):
            assert np.all(p.s_minus >= 0) and np.all(p.s_plus >= 0)
            np.testing.assert_allclose(p.x, x - p.s_minus, atol=1e-12)
            np.testing.assert_allclose(p.y, y + p.s_plus, atol=1e-12)
            lam = np.array([p.lambdas[j] for j in sorted(p.lambdas)])
            cols = sorted(p.lambdas)
            np.testing.assert_allclose(ds.inputs[:, cols] @ lam, p.x, atol=1e-6)
            np.testing.assert_allclose(ds.outputs[:, cols] @ lam, p.y, atol=1e-6)
            assert is_pareto_efficient(ds, p.point, statuses=statuses)
            assert p.objective == pytest.approx(p.s_minus.sum() + p.s_plus.sum())
        assert (far.objective <= 1e-6) == statuses[o].efficient
        assert (near.objective <= 1e-6) == statuses[o].efficient
        assert near.objective <= far.objective + 1e-8
        for j, lam_j in near.lambdas.items():
            assert lam_j * near.deficits[j] <= 1e-6
        h = near.hyperplane
        assert np.all(h.v >= 1 - 1e-9) and np.all(h.u >= 1 - 1e-9)
        scale = h.scale(ds)
        assert np.all(h.values(ds) <= 1e-6 * scale)
        assert abs(h.value(*near.point)) <= 1e-6 * scale
        support = support_set(near)
        assert near.reference() <= support

        r = solve_mcrs(ds, near, statuses=statuses)
        assert r.eta > 0
        for j in r.candidates:
            assert r.mu[j] + r.t[j] >= r.eta - 1e-8
            assert r.mu[j] * r.t[j] <= 1e-6
        hs = r.hyperplane.scale(ds)
        assert np.all(r.hyperplane.values(ds) <= 1e-6 * hs)
        for j in r.members:
            assert abs(r.hyperplane.value(*ds.column(j))) <= 1e-6 * hs
            assert j in support
        members = sorted(r.members)
        mu = np.array([r.mu[j] for j in members])
        np.testing.assert_allclose(ds.inputs[:, members] @ mu, near.x, atol=1e-6)
        np.testing.assert_allclose(ds.outputs[:, members] @ mu, near.y, atol=1e-6)
        # widening to every efficient DMU never changes the set
        wide = solve_mcrs(ds, near, all_efficient=True, statuses=statuses)
        assert wide.members == r.members


def test_determinism(t1, t1_status):
    a = solve_madd(t1, idx("DMU9"), statuses=t1_status)
    b = solve_madd(t1, idx("DMU9"), statuses=t1_status)
    assert a.x.tobytes() == b.x.tobytes()
    assert a.hyperplane.v.tobytes() == b.hyperplane.v.tobytes()
