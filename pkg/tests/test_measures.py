import math

import numpy as np
import pytest

from remez_lab.errors import DimensionError, QuadratureError, SamplerError
from remez_lab.measures import (MeasureSpec, hit_and_run, interval_measure, membership,
                                quadrature_1d, sample, sample_direct)
from remez_lab.poly_core import Polynomial
from remez_lab.sets import (Complement, Halfspace, Intersection, IntervalUnion, Sublevel, Union,
                            Whole, indicator)

M = 100_000


def within(sample_mean, target, sigma, m, k=4.0):
    return abs(sample_mean - target) <= k * sigma / math.sqrt(m)


def test_box_moments():
    X = sample_direct(MeasureSpec.box(3), M, seed=1)
    assert X.shape == (M, 3)
    for i in range(3):
        # uniform on [-1, 1]: mean 0 (var 1/3), E x^2 = 1/3 (var 1/5 - 1/9)
        assert within(X[:, i].mean(), 0.0, math.sqrt(1 / 3), M)
        assert within((X[:, i] ** 2).mean(), 1 / 3, math.sqrt(4 / 45), M)


def test_exponential_mean():
    X = sample_direct(MeasureSpec.exponential(), M, seed=2)
    assert np.all(X >= 0)
    assert within(X.mean(), 1.0, 1.0, M)


def test_direct_sampling_deterministic():
    spec = MeasureSpec.ball(4)
    np.testing.assert_array_equal(sample_direct(spec, 500, seed=7), sample_direct(spec, 500, seed=7))
    assert not np.array_equal(sample_direct(spec, 500, seed=7), sample_direct(spec, 500, seed=8))
    np.testing.assert_array_equal(sample_direct(spec, 50, seed=(7, 3)),
                                  sample_direct(spec, 50, seed=(7, 3)))


def test_direct_sampler_rejects_polytope():
    spec = MeasureSpec.polytope([[1, 0], [-1, 0], [0, 1], [0, -1]], [1, 1, 1, 1])
    with pytest.raises(SamplerError):
        sample_direct(spec, 10)
    with pytest.raises(SamplerError):
        MeasureSpec.polytope([[1, 0], [-1, 0], [0, 1], [0, -1]], [1, 1, 1, 1], sampler="direct")


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_ball_direct_radius_moment(n):
    X = sample_direct(MeasureSpec.ball(n), M, seed=n)
    r2 = (X ** 2).sum(axis=1)
    # |x|^2 = U^(2/n): mean n/(n+2), second moment n/(n+4)
    mean = n / (n + 2)
    sd = math.sqrt(n / (n + 4) - mean ** 2)
    assert within(r2.mean(), mean, sd, M, 5)
    assert np.all(membership(MeasureSpec.ball(n), X))


def test_simplex_moments():
    n = 3
    X = sample_direct(MeasureSpec.simplex(n), M, seed=3)
    assert np.all(X >= 0) and np.all(X.sum(axis=1) <= 1 + 1e-12)
    # marginal Beta(1, n): mean 1/(n+1), var n/((n+1)^2 (n+2))
    sd = math.sqrt(n / ((n + 1) ** 2 * (n + 2)))
    for i in range(n):
        assert within(X[:, i].mean(), 1 / (n + 1), sd, M, 5)


def test_hit_and_run_ball_second_moment():
    spec = MeasureSpec.ball(3)
    X = hit_and_run(spec, M, seed=11)
    assert X.shape == (M, 3)
    assert np.all(membership(spec, X))
    r2 = (X ** 2).sum(axis=1)
    # chain points are correlated; 5 sigma of the i.i.d. error with a
    # generous effective-sample-size discount
    sd = math.sqrt(3 / 7 - (3 / 5) ** 2)
    assert abs(r2.mean() - 3 / 5) <= 5 * sd / math.sqrt(M / 10)


def test_hit_and_run_deterministic():
    spec = MeasureSpec.simplex(3, sampler="hit_and_run")
    np.testing.assert_array_equal(hit_and_run(spec, 300, seed=4), hit_and_run(spec, 300, seed=4))


def test_hit_and_run_stays_inside_polytope():
    A = [[1, 1], [-1, 0], [0, -1], [1, -2]]
    b = [1, 0, 0, 0.5]
    spec = MeasureSpec.polytope(A, b)
    X = sample(spec, 5000, seed=1)
    assert np.all(membership(spec, X))


def test_unbounded_polytope_rejected():
    with pytest.raises(SamplerError):
        MeasureSpec.polytope([[1, 0], [-1, 0]], [1, 1])


def test_empty_interior_rejected():
    with pytest.raises(SamplerError):
        MeasureSpec.polytope([[1, 0], [-1, 0], [0, 1], [0, -1]], [0, 0, 1, 1])


@pytest.mark.parametrize("kind", ["box", "ball"])
def test_hit_and_run_agrees_with_direct(kind):
    n = 3
    spec = MeasureSpec.box(n) if kind == "box" else MeasureSpec.ball(n)
    D = sample_direct(spec, M, seed=5)
    H = hit_and_run(spec, M, seed=5)
    for stat in (lambda X: X[:, 0], lambda X: X[:, 1] ** 2, lambda X: (X ** 2).sum(axis=1)):
        a, b = stat(D), stat(H)
        se = math.sqrt(a.var() / M + 10 * b.var() / M)
        assert abs(a.mean() - b.mean()) <= 5 * se


def test_membership_examples():
    box = MeasureSpec.box(2)
    assert membership(box, [0.0, 0.0])
    assert membership(box, [1.0, -1.0])
    assert not membership(box, [2 * math.sqrt(2), 0.0])
    ball = MeasureSpec.ball(3)
    assert not membership(ball, [2.0, 0.0, 0.0])
    with pytest.raises(DimensionError):
        membership(box, [0.0, 0.0, 0.0])
    with pytest.raises(SamplerError):
        membership(MeasureSpec.gaussian(2), [0.0, 0.0])


def test_indicator_examples():
    assert indicator(Halfspace((1.0, 0.0), 0.0), [-1.0, 5.0])
    U = IntervalUnion(((0.0, 0.2), (0.8, 1.0)))
    assert not indicator(U, 0.5)
    assert indicator(Complement(U), 0.5)
    with pytest.raises(DimensionError):
        indicator(Halfspace((1.0, 0.0), 0.0), [1.0, 2.0, 3.0])


def test_boolean_combinations():
    t2 = Polynomial.from_univariate([0, 0, 1])
    S = Intersection((Sublevel(t2, 0.25), Complement(IntervalUnion(((0.0, 0.1),)))))
    assert S.intervals() == [(-0.5, 0.0), (0.1, 0.5)] or np.allclose(
        np.array(S.intervals()), [[-0.5, 0.0], [0.1, 0.5]])
    V = Union((IntervalUnion(((0.0, 0.2),)), IntervalUnion(((0.1, 0.5),))))
    assert V.intervals() == [(0.0, 0.5)]
    X = np.linspace(-1, 1, 401)
    for s in (S, V, Complement(S)):
        inside = s.contains(X)
        via_intervals = np.zeros_like(inside)
        for a, b in s.intervals():
            via_intervals |= (X >= a) & (X <= b)
        # Boundary points may differ between closed set and closure of complement.
        assert np.mean(inside != via_intervals) < 0.02


def test_quadrature_examples():
    assert quadrature_1d(lambda t: t, (0, 1)) == pytest.approx(0.5, rel=1e-12)
    assert quadrature_1d(lambda t: t ** 3 * math.exp(-t), (0, math.inf)) == pytest.approx(6, rel=1e-10)
    assert abs(quadrature_1d(lambda t: 4 * t ** 3 - 3 * t, (-1, 1))) < 1e-13


def test_quadrature_failure_reported():
    with pytest.raises(QuadratureError):
        quadrature_1d(lambda t: 1.0 / t, (0.0, 1.0), limit=20)


def _minkowski(A, B, alpha):
    return (alpha * A[0] + (1 - alpha) * B[0], alpha * A[1] + (1 - alpha) * B[1])


@pytest.mark.parametrize("spec", [MeasureSpec.interval(-1.0, 2.0), MeasureSpec.exponential()])
def test_one_dimensional_log_concavity(spec):
    rng = np.random.default_rng(17)
    lo, hi = spec.support_interval()
    top = hi if math.isfinite(hi) else 8.0
    for _ in range(200):
        A = tuple(sorted(rng.uniform(lo - 0.5, top + 0.5, 2)))
        B = tuple(sorted(rng.uniform(lo - 0.5, top + 0.5, 2)))
        alpha = rng.uniform(0, 1)
        mA, mB = interval_measure(spec, [A]), interval_measure(spec, [B])
        mC = interval_measure(spec, [_minkowski(A, B, alpha)])
        assert mC >= mA ** alpha * mB ** (1 - alpha) - 1e-12


def test_interval_measures():
    U = MeasureSpec.interval(0.0, 1.0)
    assert interval_measure(U, [(0.0, 0.3)]) == pytest.approx(0.3)
    assert interval_measure(U, Whole(1).intervals()) == 1.0
    E = MeasureSpec.exponential()
    assert interval_measure(E, [(0.0, 1.0)]) == pytest.approx(1 - math.exp(-1))
    assert interval_measure(E, [(-5.0, math.inf)]) == 1.0
