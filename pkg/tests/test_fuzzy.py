import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import fuzzyts as f
from fuzzyts.errors import GHDifferenceError, GridMismatchError, InvalidShapeError

import oracles

GRID = f.AlphaGrid.uniform(11)
TOL = 1e-12


def tri(a, b, c):
    return f.make_triangle(a, b, c, GRID)


def random_fuzzy(rng, span=5.0):
    lower, upper = oracles.random_cuts(rng, GRID.m, span)
    return f.FuzzyNumber(GRID, lower, upper)


@st.composite
def fuzzy_numbers(draw):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_fuzzy(np.random.default_rng(seed))


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def test_alpha_grid_validation():
    with pytest.raises(InvalidShapeError):
        f.AlphaGrid(np.array([0.0, 0.5]))  # must end at 1
    with pytest.raises(InvalidShapeError):
        f.AlphaGrid(np.array([0.1, 1.0]))  # must start at 0
    with pytest.raises(InvalidShapeError):
        f.AlphaGrid(np.array([0.0, 0.5, 0.5, 1.0]))
    assert f.AlphaGrid.uniform(5).m == 5


def test_trapezoid_crisp_zero():
    z = f.make_trapezoid(0, 0, 0, 0, GRID)
    assert all(lo == 0 == hi for _, lo, hi in z.to_records())


def test_trapezoid_triangular_shape():
    u = tri(-1, 0, 1)
    assert u.cut(0) == (-1.0, 1.0)
    assert u.cut(GRID.m - 1) == (0.0, 0.0)


def test_trapezoid_interpolation_against_oracle():
    u = f.make_trapezoid(1, 2, 3, 5, GRID)
    for i, alpha in enumerate(GRID.levels):
        lo, hi = oracles.trapezoid_cut(1, 2, 3, 5, alpha)
        assert u.cut(i) == pytest.approx((lo, hi), abs=TOL)
    assert u.cut(5) == pytest.approx((1.5, 4.0), abs=TOL)  # alpha = 0.5


def test_trapezoid_ordering_error():
    with pytest.raises(InvalidShapeError):
        f.make_trapezoid(1, 0, 2, 3, GRID)


def test_fuzzy_number_invariant_enforcement():
    with pytest.raises(InvalidShapeError):
        f.FuzzyNumber(GRID, np.linspace(0, 1, 11), np.linspace(-1, 0, 11))
    with pytest.raises(InvalidShapeError):  # lower must be nondecreasing
        f.FuzzyNumber(GRID, np.linspace(1, 0, 11), np.full(11, 2.0))
    with pytest.raises(InvalidShapeError):
        f.FuzzyNumber(GRID, np.full(11, np.nan), np.full(11, 1.0))


# ---------------------------------------------------------------------------
# add / scale
# ---------------------------------------------------------------------------

def test_add_identity():
    u = tri(-1, 0, 1)
    assert f.dist(f.add(u, f.zero(GRID)), u) <= TOL


def test_add_against_minkowski_oracle():
    u, v = tri(-1, 0, 1), tri(-1, 0, 1)
    s = f.add(u, v)
    expected = tri(-2, 0, 2)
    assert f.dist(s, expected) <= TOL
    for i in range(GRID.m):
        assert s.cut(i) == pytest.approx(
            oracles.interval_sum(u.cut(i), v.cut(i)), abs=TOL)


def test_add_crisp_reduction():
    s = f.add(f.crisp(2, GRID), f.crisp(3, GRID))
    assert s.is_crisp and s.crisp_value() == pytest.approx(5.0, abs=TOL)


def test_add_grid_mismatch():
    with pytest.raises(GridMismatchError):
        f.add(tri(-1, 0, 1), f.make_triangle(-1, 0, 1, f.AlphaGrid.uniform(5)))


@pytest.mark.parametrize("k", [1.0, -1.0, 0.5, 0.0, -2.75])
def test_scale_against_oracle(k):
    rng = np.random.default_rng(3)
    u = random_fuzzy(rng)
    s = f.scale(k, u)
    for i in range(GRID.m):
        assert s.cut(i) == pytest.approx(oracles.interval_scale(k, u.cut(i)), abs=TOL)


def test_scale_examples():
    u = tri(-1, 0, 1)
    assert f.dist(f.scale(1, u), u) <= TOL
    assert f.dist(f.scale(-1, u), u) <= TOL  # symmetric support
    assert f.dist(f.scale(0.5, u), tri(-0.5, 0, 0.5)) <= TOL


# ---------------------------------------------------------------------------
# gH difference
# ---------------------------------------------------------------------------

def test_gh_self_difference():
    u = tri(-1, 0, 1)
    assert f.dist(f.gh_difference(u, u), f.zero(GRID)) <= TOL


def test_gh_crisp_intervals_roundtrip():
    u = f.FuzzyNumber(GRID, np.full(11, 1.0), np.full(11, 3.0))
    v = f.FuzzyNumber(GRID, np.full(11, 0.0), np.full(11, 1.0))
    w = f.gh_difference(u, v)
    assert w.cut(0) == pytest.approx((1.0, 2.0), abs=TOL)
    assert f.dist(f.add(v, w), u) <= TOL
    assert oracles.gh_roundtrip_ok(u.to_records(), v.to_records(), w.to_records())


def test_gh_nonexistence_growing_cuts():
    u = f.FuzzyNumber(GRID, np.full(11, 0.0), np.full(11, 1.0))
    v = tri(0, 0.5, 1)
    # level-wise candidate is [-alpha/2, alpha/2], growing with alpha
    with pytest.raises(GHDifferenceError):
        f.gh_difference(u, v)


def test_gh_grid_mismatch():
    with pytest.raises(GridMismatchError):
        f.gh_difference(tri(0, 1, 2), f.make_triangle(0, 1, 2, f.AlphaGrid.uniform(5)))


@given(fuzzy_numbers(), fuzzy_numbers())
@settings(max_examples=150, deadline=None)
def test_gh_roundtrip_property(u, v):
    try:
        w = f.gh_difference(u, v)
    except GHDifferenceError:
        return
    assert oracles.gh_roundtrip_ok(u.to_records(), v.to_records(), w.to_records())


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------

def test_hausdorff_interval_cases():
    cases = [(((0, 1), (0, 1)), 0.0), (((0, 1), (0, 2)), 1.0), (((0, 1), (3, 4)), 3.0)]
    for (a, b), expected in cases:
        assert f.hausdorff_interval(a, b) == pytest.approx(expected, abs=TOL)
        assert f.hausdorff_interval(a, b) == pytest.approx(
            oracles.hausdorff_sampled(a, b), abs=1e-9)


def test_dist_examples():
    u = tri(0, 1, 2)
    assert f.dist(u, u) == 0.0
    assert f.dist(u, tri(3, 4, 5)) == pytest.approx(3.0, abs=TOL)


@given(fuzzy_numbers(), fuzzy_numbers(), fuzzy_numbers())
@settings(max_examples=150, deadline=None)
def test_metric_axioms(u, v, w):
    assert f.dist(u, u) <= TOL
    assert abs(f.dist(u, v) - f.dist(v, u)) <= TOL
    assert f.dist(u, w) <= f.dist(u, v) + f.dist(v, w) + TOL


@given(fuzzy_numbers(), fuzzy_numbers(), fuzzy_numbers(),
       st.floats(-5, 5, allow_nan=False))
@settings(max_examples=150, deadline=None)
def test_metric_structure_properties(u, v, w, k):
    # translation invariance, |k|-homogeneity, subadditivity under addition
    assert abs(f.dist(f.add(u, w), f.add(v, w)) - f.dist(u, v)) <= TOL
    assert abs(f.dist(f.scale(k, u), f.scale(k, v)) - abs(k) * f.dist(u, v)) <= 1e-11
    e = w
    assert f.dist(f.add(u, v), f.add(w, e)) <= f.dist(u, w) + f.dist(v, e) + TOL


@given(fuzzy_numbers(), fuzzy_numbers(), st.floats(-4, 4, allow_nan=False))
@settings(max_examples=150, deadline=None)
def test_nestedness_closure(u, v, k):
    # construction of the results re-validates the invariants
    f.add(u, v)
    f.scale(k, u)


# ---------------------------------------------------------------------------
# vectors and the norm-like functional
# ---------------------------------------------------------------------------

def test_vec_dist_examples():
    z = f.zero(GRID)
    u = f.vector(tri(0, 1, 2), z)
    v = f.vector(tri(3, 4, 5), z)
    assert f.vec_dist(u, u) == 0.0
    assert f.vec_dist(u, v) == pytest.approx(3.0, abs=TOL)
    # n = 1 reduces to dist
    assert f.vec_dist(f.vector(tri(0, 1, 2)), f.vector(tri(3, 4, 5))) == pytest.approx(
        f.dist(tri(0, 1, 2), tri(3, 4, 5)), abs=TOL)


def test_vec_dist_dimension_mismatch():
    with pytest.raises(f.DimensionMismatchError):
        f.vec_dist(f.vector(tri(0, 1, 2)), f.vector(tri(0, 1, 2), tri(0, 1, 2)))


def test_norm_examples():
    assert f.norm(f.zero_vector(GRID)) == 0.0
    assert f.norm(f.vector(tri(-1, 0, 1))) == pytest.approx(1.0, abs=TOL)


@given(fuzzy_numbers(), fuzzy_numbers(), st.floats(-5, 5, allow_nan=False))
@settings(max_examples=150, deadline=None)
def test_norm_properties(a, b, k):
    u = f.vector(a)
    v = f.vector(b)
    assert (f.norm(u) <= TOL) == (f.dist(a, f.zero(GRID)) <= TOL)
    assert abs(f.norm(f.vec_scale(k, u)) - abs(k) * f.norm(u)) <= 1e-11
    assert f.norm(f.vec_add(u, v)) <= f.norm(u) + f.norm(v) + TOL
    assert abs(f.vec_dist(u, f.zero_vector(GRID)) - f.norm(u)) <= TOL


def test_norm_zero_iff_zero():
    assert f.norm(f.vector(f.crisp(0.0, GRID))) == 0.0
    assert f.norm(f.vector(f.crisp(1e-9, GRID))) > 0.0


def test_crisp_reduction_matches_real_arithmetic():
    rng = np.random.default_rng(11)
    for _ in range(50):
        x, y, k = rng.uniform(-10, 10, 3)
        assert f.add(f.crisp(x, GRID), f.crisp(y, GRID)).crisp_value() == pytest.approx(
            x + y, abs=TOL)
        assert f.scale(k, f.crisp(x, GRID)).crisp_value() == pytest.approx(k * x, abs=TOL)
        assert f.dist(f.crisp(x, GRID), f.crisp(y, GRID)) == pytest.approx(
            abs(x - y), abs=TOL)


def test_serialization_records():
    u = tri(-1, 0, 1)
    records = u.to_records()
    assert len(records) == GRID.m
    assert records[0] == (0.0, -1.0, 1.0)
    assert records[-1] == (1.0, 0.0, 0.0)
