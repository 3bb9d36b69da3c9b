"""L^p norms, restricted norms and level-set measures with confidence radii.

Every estimator takes a function oracle ``f`` (a :class:`Polynomial`,
:class:`PolynomialMap`, :class:`TrigPolynomial` or a callable on ``(m, n)``
arrays), a :class:`MeasureSpec`, and either a sample budget plus seed or an
explicit array of shared samples. One-dimensional uniform and exponential
measures with univariate polynomials get an exact quadrature path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
import numpy as np
from scipy import stats

from .errors import DegenerateSampleError, DegenerateSetError, InadmissibleExponentError
from .measures import MeasureSpec, density, interval_measure, quadrature_1d, sample
from .poly_core import Polynomial, PolynomialMap, TrigPolynomial, as_points
from .sets import SetSpec, intersect_intervals, polynomial_sublevel_intervals, _real_roots

DEFAULT_BUDGET = 100_000
ZERO_FRACTION_LIMIT = 1e-3
KURTOSIS_LIMIT = 50.0
QUAD_TOL = 1e-10


@dataclass(frozen=True)
class NormEstimate:
    """A norm or probability estimate.

    ``radius`` is the half-width of the confidence interval at the level the
    estimate was requested with (99% by default); exact estimates carry
    radius 0. ``p`` is ``None`` for probabilities.
    """

    value: float
    radius: float
    mode: str
    budget: int
    p: float | None = None
    zeros: int = 0
    flags: tuple[str, ...] = ()

    @property
    def lo(self) -> float:
        return self.value - self.radius

    @property
    def hi(self) -> float:
        return self.value + self.radius

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    @property
    def reliable(self) -> bool:
        return not self.flags


def z_value(confidence: float) -> float:
    """Two-sided normal quantile for the given confidence level."""
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0, 1), got {confidence}")
    return float(stats.norm.ppf(0.5 + 0.5 * confidence))


def degree_of(f, degree: int | None = None) -> int | None:
    if degree is not None:
        return degree
    return getattr(f, "degree", None)


def check_exponent(p: float, d: int | None) -> None:
    """Reject p <= -1/d; p = 0 means the geometric-mean (L^0) norm."""
    if not math.isfinite(p):
        raise InadmissibleExponentError(f"exponent must be finite, got {p}")
    if p < 0 and d is not None and d > 0 and p <= -1.0 / d:
        raise InadmissibleExponentError(
            f"p={p} is outside (-1/d, 0) U [0, inf) for degree d={d}")


def magnitude(f, X) -> np.ndarray:
    """``|f(x)|`` (or the codomain norm of a map) at each row of ``X``."""
    if isinstance(f, Polynomial):
        return np.abs(f.evaluate(X))
    if isinstance(f, PolynomialMap):
        return f.norm_values(X)
    if isinstance(f, TrigPolynomial):
        return f.modulus(X)
    return np.abs(np.asarray(f(X), dtype=float)).reshape(-1)


def _exact_available(f, measure: MeasureSpec) -> bool:
    return (measure.support_interval() is not None
            and isinstance(f, (Polynomial, PolynomialMap)) and f.n == 1)


def _resolve_method(f, measure, method) -> str:
    if method not in ("auto", "exact", "monte_carlo"):
        raise ValueError(f"unknown method {method!r}")
    can = _exact_available(f, measure)
    if method == "exact" and not can:
        raise ValueError(f"no exact path for {type(f).__name__} under {measure.describe()}")
    if method == "auto":
        return "exact" if can else "monte_carlo"
    return method


def draw(measure: MeasureSpec, budget: int, seed, samples=None) -> np.ndarray:
    if samples is not None:
        pts, _ = as_points(samples, measure.n)
        return pts
    if budget < 1:
        raise ValueError("sample budget must be positive")
    return sample(measure, budget, seed)


# exact 1-D path -------------------------------------------------------------

def _breakpoints(f) -> list[float]:
    polys = f.components if isinstance(f, PolynomialMap) else (f,)
    pts: list[float] = []
    for q in polys:
        if q.degree > 0:
            pts.extend(_real_roots(q.coefficients()))
    return pts


def _exact_power_integral(f, measure, intervals, p) -> float:
    """``integral over intervals of |f|^p dmu`` (``log|f|`` when p == 0)."""
    w = density(measure)
    breaks = _breakpoints(f)
    if p == 0:
        def g(t):
            v = float(magnitude(f, np.array([[t]]))[0])
            return math.log(v) * w(t) if v > 0 else -745.0 * w(t)
    else:
        def g(t):
            v = float(magnitude(f, np.array([[t]]))[0])
            # Isolated zeros are null; quadrature never samples breakpoints.
            return v ** p * w(t) if v > 0 else 0.0
    total = 0.0
    for a, b in intervals:
        if b > a:
            total += quadrature_1d(g, (a, b), QUAD_TOL, breaks)
    return total


def _is_zero(f) -> bool:
    polys = f.components if isinstance(f, PolynomialMap) else (f,)
    return all(q.is_zero() for q in polys)


def _exact_norm(f, measure, intervals, p, mass) -> float:
    if _is_zero(f):
        if p <= 0:
            raise DegenerateSampleError("f vanishes identically; the estimate is undefined")
        return 0.0
    integral = _exact_power_integral(f, measure, intervals, p)
    if p == 0:
        return math.exp(integral / mass)
    mean = integral / mass
    if mean == 0.0:
        return 0.0
    return mean ** (1.0 / p)


# Monte-Carlo power means ----------------------------------------------------

def power_mean(values: np.ndarray, p: float, z: float) -> tuple[float, float, int, tuple[str, ...]]:
    """Power mean of non-negative samples with a delta-method radius.

    Returns ``(value, radius, zero_count, flags)``. For ``p <= 0`` zero
    samples are excluded and counted.
    """
    v = np.asarray(values, dtype=float)
    m = v.size
    flags: list[str] = []
    zeros = 0
    if p <= 0:
        nz = v > 0
        zeros = int(m - np.count_nonzero(nz))
        if zeros == m:
            raise DegenerateSampleError("every sample is zero; the estimate is undefined")
        if zeros > ZERO_FRACTION_LIMIT * m:
            flags.append("excess_zeros")
        v = v[nz]
    k = v.size
    if p == 0:
        logs = np.log(v)
        mu = float(logs.mean())
        sd = float(logs.std(ddof=1)) if k > 1 else 0.0
        value = math.exp(mu)
        return value, z * value * sd / math.sqrt(k), zeros, tuple(flags)
    y = v ** p
    ybar = float(y.mean())
    if ybar == 0.0:
        return 0.0, 0.0, zeros, tuple(flags)
    sd = float(y.std(ddof=1)) if k > 1 else 0.0
    if not math.isfinite(ybar) or not math.isfinite(sd):
        raise DegenerateSampleError("power mean overflowed")
    value = ybar ** (1.0 / p)
    slope = abs(1.0 / p) * ybar ** (1.0 / p - 1.0)
    if p < 0 and sd > 0:
        kurt = float(np.mean((y - ybar) ** 4)) / sd ** 4
        if kurt > KURTOSIS_LIMIT:
            flags.append("heavy_tail")
    return value, z * slope * sd / math.sqrt(k), zeros, tuple(flags)


# public estimators ----------------------------------------------------------

def lp_norm(f, measure: MeasureSpec, p: float, budget: int = DEFAULT_BUDGET, seed=0, *,
            method: str = "auto", samples=None, confidence: float = 0.99,
            degree: int | None = None, values=None) -> NormEstimate:
    """``(integral |f|^p dmu)^(1/p)``, or ``exp(integral log|f| dmu)`` at p = 0.

    ``samples`` reuses a shared sample array; ``values`` additionally passes
    the already computed magnitudes ``|f|`` at those samples.
    """
    check_exponent(p, degree_of(f, degree))
    mode = _resolve_method(f, measure, method)
    if mode == "exact":
        support = [measure.support_interval()]
        value = _exact_norm(f, measure, support, p, 1.0)
        return NormEstimate(value, 0.0, "exact", 0, p)
    X = draw(measure, budget, seed, samples)
    v = magnitude(f, X) if values is None else np.asarray(values)
    value, radius, zeros, flags = power_mean(v, p, z_value(confidence))
    return NormEstimate(value, radius, "monte_carlo", X.shape[0], p, zeros, flags)


def restricted_lp_norm(f, measure: MeasureSpec, A: SetSpec, p: float,
                       budget: int = DEFAULT_BUDGET, seed=0, *, method: str = "auto",
                       samples=None, confidence: float = 0.99, degree: int | None = None,
                       min_accepted: int = 2, values=None, inside=None) -> NormEstimate:
    """Norm under the conditional measure ``mu(. & A) / mu(A)``."""
    check_exponent(p, degree_of(f, degree))
    mode = _resolve_method(f, measure, method)
    if mode == "exact" and A.intervals() is None:
        if method == "exact":
            raise ValueError(f"set {A.describe()} has no interval form")
        mode = "monte_carlo"
    if mode == "exact":
        parts = intersect_intervals(A.intervals(), [measure.support_interval()])
        mass = interval_measure(measure, parts)
        if mass <= 0.0:
            raise DegenerateSetError(f"{A.describe()} has zero measure")
        value = _exact_norm(f, measure, parts, p, mass)
        return NormEstimate(value, 0.0, "exact", 0, p)
    X = draw(measure, budget, seed, samples)
    if inside is None:
        inside = A.contains(X)
    k = int(np.count_nonzero(inside))
    if k < min_accepted:
        raise DegenerateSetError(
            f"{A.describe()} accepted {k} of {X.shape[0]} samples; its measure is "
            "indistinguishable from zero at this budget")
    v = magnitude(f, X[inside]) if values is None else np.asarray(values)[inside]
    value, radius, zeros, flags = power_mean(v, p, z_value(confidence))
    return NormEstimate(value, radius, "monte_carlo", k, p, zeros, flags)


def _binomial(count: int, m: int, z: float) -> tuple[float, float]:
    q = count / m
    return q, z * math.sqrt(q * (1.0 - q) / m)


def levelset_measure(f, measure: MeasureSpec, t, budget: int = DEFAULT_BUDGET, seed=0, *,
                     method: str = "auto", samples=None, confidence: float = 0.99,
                     values=None):
    """``mu(|f| <= t)``; a sequence of thresholds returns a list of estimates.

    The Monte-Carlo path uses one sample set for all thresholds, so the
    estimates are non-decreasing in ``t`` exactly.
    """
    scalar = np.ndim(t) == 0
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(ts < 0):
        raise ValueError("thresholds must be non-negative")
    mode = _resolve_method(f, measure, method)
    if mode == "exact" and not isinstance(f, Polynomial):
        if method == "exact":
            raise ValueError("exact level sets are only available for scalar polynomials")
        mode = "monte_carlo"
    out = []
    if mode == "exact":
        support = measure.support_interval()
        for thr in ts:
            iv = polynomial_sublevel_intervals(f, float(thr), absolute=True)
            out.append(NormEstimate(interval_measure(measure, intersect_intervals(iv, [support])),
                                    0.0, "exact", 0))
    else:
        X = draw(measure, budget, seed, samples)
        v = np.sort(magnitude(f, X) if values is None else np.asarray(values))
        m = v.size
        z = z_value(confidence)
        counts = np.searchsorted(v, ts, side="right")
        for c in counts:
            q, r = _binomial(int(c), m, z)
            out.append(NormEstimate(q, r, "monte_carlo", m))
    return out[0] if scalar else out


def set_measure(measure: MeasureSpec, A: SetSpec, budget: int = DEFAULT_BUDGET, seed=0, *,
                method: str = "auto", samples=None, confidence: float = 0.99,
                inside=None) -> NormEstimate:
    """``mu(A)``: exact for 1-D uniform/exponential laws, else a sample fraction."""
    if method not in ("auto", "exact", "monte_carlo"):
        raise ValueError(f"unknown method {method!r}")
    exact_ok = measure.support_interval() is not None and A.intervals() is not None
    if method == "exact" and not exact_ok:
        raise ValueError(f"no exact measure for {A.describe()} under {measure.describe()}")
    if exact_ok and method != "monte_carlo":
        return NormEstimate(interval_measure(measure, A.intervals()), 0.0, "exact", 0)
    X = draw(measure, budget, seed, samples)
    if inside is None:
        inside = A.contains(X)
    q, r = _binomial(int(np.count_nonzero(inside)), X.shape[0], z_value(confidence))
    return NormEstimate(q, r, "monte_carlo", X.shape[0])
