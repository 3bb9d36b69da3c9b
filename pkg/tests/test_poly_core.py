import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from remez_lab.errors import DimensionError
from remez_lab.poly_core import (Polynomial, PolynomialMap, TrigPolynomial, eval_map_norm,
                                 eval_polynomial, eval_trig_modulus, monomial_exponents,
                                 random_polynomial, restrict_to_line)


def brute_eval(P, x):
    return sum(c * math.prod(xi ** e for xi, e in zip(x, exp)) for exp, c in P.terms.items())


def test_eval_constant():
    assert eval_polynomial(Polynomial.constant(3, 5.0), [0.3, -2.0, 7.0]) == 5.0


def test_eval_mixed_terms():
    P = Polynomial(2, {(2, 0): 1.0, (1, 1): 2.0})
    assert eval_polynomial(P, [1.0, 2.0]) == 5.0


def test_eval_chebyshev_t3():
    T3 = Polynomial.from_univariate([0, -3, 0, 4])
    assert eval_polynomial(T3, 0.5) == pytest.approx(-1.0, abs=1e-15)


def test_eval_dimension_mismatch():
    with pytest.raises(DimensionError):
        eval_polynomial(Polynomial(2, {(1, 0): 1.0}), [1.0, 2.0, 3.0])


def test_vectorised_matches_brute_force():
    rng = np.random.default_rng(4)
    P = random_polynomial(3, 4, seed=11)
    X = rng.normal(size=(50, 3))
    expected = [brute_eval(P, x) for x in X]
    np.testing.assert_allclose(P.evaluate(X), expected, rtol=1e-12, atol=1e-12)


def test_degree_and_pruning():
    P = Polynomial(2, {(3, 1): 0.0, (1, 1): 2.0, (0, 0): 1.0})
    assert P.degree == 2
    assert (3, 1) not in P.terms
    assert Polynomial(2).degree == 0
    assert Polynomial(2).is_zero()


def test_map_norms():
    t = Polynomial.from_univariate([0, 1])
    t2 = Polynomial.from_univariate([0, 0, 1])
    assert eval_map_norm(PolynomialMap([t, t2], "euclidean"), 2.0) == pytest.approx(math.sqrt(20))
    assert eval_map_norm(PolynomialMap([t, t2], "sup"), 2.0) == 4.0
    assert eval_map_norm(PolynomialMap([t, t2], "one"), 2.0) == 6.0
    assert eval_map_norm(PolynomialMap([Polynomial(1)], "sup"), 3.3) == 0.0


def test_map_rejects_mixed_dimensions():
    with pytest.raises(DimensionError):
        PolynomialMap([Polynomial(1, {(1,): 1}), Polynomial(2, {(1, 0): 1})])


@pytest.mark.parametrize("norm", ["euclidean", "sup", "one"])
@given(alpha=st.floats(-50, 50, allow_nan=False), x=st.floats(-3, 3))
@settings(max_examples=50, deadline=None)
def test_map_norm_homogeneous(norm, alpha, x):
    F = PolynomialMap([Polynomial.from_univariate([1, 2]), Polynomial.from_univariate([0, -1, 3])],
                      norm)
    lhs = eval_map_norm(F.scale(alpha), x)
    rhs = abs(alpha) * eval_map_norm(F, x)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


def test_trig_modulus_examples():
    assert eval_trig_modulus(TrigPolynomial([[1.7, -0.2]]), [0.4, 9.0]) == pytest.approx(1.0)
    assert eval_trig_modulus(TrigPolynomial([[1.0, 2.0], [1.0, 2.0]]), [0.0, 0.0]) == 2.0
    # <l1, x> = 0 and <l2, x> = pi at x = (1, 0)
    T = TrigPolynomial([[0.0, 1.0], [math.pi, 0.0]])
    assert eval_trig_modulus(T, [1.0, 0.0]) == pytest.approx(0.0, abs=1e-15)


def test_trig_modulus_bounded_by_degree():
    rng = np.random.default_rng(0)
    for d in range(1, 6):
        T = TrigPolynomial(rng.normal(size=(d, 3)) * 5)
        vals = T.modulus(rng.normal(size=(1000, 3)))
        assert np.all(vals <= d + 1e-12)
        assert np.all(vals >= 0)


def test_restrict_xy_diagonal():
    q = restrict_to_line(Polynomial(2, {(1, 1): 1.0}), [0, 0], [1, 1])
    assert q == Polynomial(1, {(2,): 1.0})


def test_restrict_linear_is_degree_one():
    P = Polynomial(3, {(1, 0, 0): 2.0, (0, 0, 1): -1.0, (0, 0, 0): 0.5})
    q = restrict_to_line(P, [1, 2, 3], [0.3, -1, 2])
    assert q.degree <= 1


def test_restrict_zero_direction():
    with pytest.raises(ValueError):
        restrict_to_line(Polynomial(2, {(1, 1): 1.0}), [0, 0], [0, 0])


def test_restrict_commutes_with_evaluation():
    # Oracle: evaluate P at a + t v directly.
    rng = np.random.default_rng(123)
    for trial in range(1000):
        n, d = 3, 4
        P = random_polynomial(n, d, seed=trial)
        a, v = rng.normal(size=n), rng.normal(size=n)
        q = restrict_to_line(P, a, v)
        assert q.degree <= P.degree
        ts = rng.uniform(-2, 2, size=20)
        direct = P.evaluate(a[None, :] + ts[:, None] * v[None, :])
        scale = np.maximum(1.0, np.abs(direct))
        assert np.all(np.abs(q.evaluate(ts) - direct) <= 1e-9 * scale)


def test_random_polynomial_deterministic():
    a = random_polynomial(3, 2, "normal", seed=9)
    b = random_polynomial(3, 2, "normal", seed=9)
    assert dict(a.terms) == dict(b.terms)
    assert dict(random_polynomial(3, 2, seed=10).terms) != dict(a.terms)


def test_random_polynomial_shapes():
    assert random_polynomial(4, 0, seed=1).degree == 0
    assert len(random_polynomial(4, 0, seed=1).terms) == 1
    assert len(monomial_exponents(2, 3)) == 10
    assert len(random_polynomial(2, 3, seed=5).terms) == 10
    assert random_polynomial(2, 3, seed=5).degree == 3


def test_spiked_law_has_large_top_coefficient():
    P = random_polynomial(2, 3, "spiked", seed=1)
    top = max(abs(c) for e, c in P.terms.items() if sum(e) == 3)
    assert top > 3.0


def test_text_round_trip():
    P = random_polynomial(3, 3, seed=2)
    assert Polynomial.from_text(P.to_text()) == P
    assert Polynomial.from_text(Polynomial(4).to_text()) == Polynomial(4)
    assert Polynomial.from_text("2.5 1 0\n-1 0 2\n") == Polynomial(2, {(1, 0): 2.5, (0, 2): -1})
