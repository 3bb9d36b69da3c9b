"""Certification suites for the Remez-type inequalities.

Each suite turns a :class:`SuiteConfig` into a list of
:class:`InequalityReport` records. Instances are independent jobs keyed by
``(seed, suite, measure, n, d, index)``; every random choice inside a job
comes from streams derived from that key, so the output does not depend on
how jobs are scheduled.
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np
from scipy import special

from . import bounds
from .errors import DegenerateSampleError, DegenerateSetError, RemezLabError
from .measures import MeasureSpec, quadrature_1d, sample
from .norm_engine import (NormEstimate, levelset_measure, lp_norm, magnitude,
                          restricted_lp_norm, set_measure)
from .poly_core import (CODOMAIN_NORMS, Polynomial, PolynomialMap, TrigPolynomial,
                        monomial_exponents, random_polynomial)
from .rng import stream, tag
from .sets import (Halfspace, IntervalUnion, SetSpec, Sublevel, Whole, intersect_intervals,
                   normalize_intervals)

log = logging.getLogger(__name__)

VERDICTS = ("holds", "holds_within_noise", "violated", "inconclusive")
PILOT_SAMPLES = 10_000


@dataclass(frozen=True)
class SuiteConfig:
    """Grid and budgets for the Monte-Carlo suites and the classical suite."""

    measures: tuple[str, ...] = ("uniform_box", "uniform_ball", "uniform_simplex")
    dims: tuple[int, ...] = (1, 2, 3, 4)
    degrees: tuple[int, ...] = (1, 2, 3, 4)
    exponents: tuple[float, ...] = (0.5, 1.0, 2.0)
    instances: int = 25
    samples: int = 100_000
    seed: int = 0
    c: float = 4.0
    set_families: tuple[str, ...] = ("halfspace", "sublevel")
    quantiles: tuple[float, float] = (0.1, 0.9)
    thresholds: int = 8
    law: str = "normal"
    confidence: float = 0.99
    method: str = "auto"
    sampler: str = "direct"
    workers: int = 1
    fixed_clock: bool = False
    # classical suite
    R: float = 4.0
    R_trig: float = 316.0
    scalar_instances: int = 500
    vector_instances: int = 200
    trig_instances: int = 100
    max_degree: int = 6
    max_components: int = 3
    max_trig_degree: int = 4
    min_fraction: float = 0.2
    max_pieces: int = 3


@dataclass(frozen=True)
class InequalityReport:
    """One checked instance of an inequality.

    ``direction`` is ``">="`` when the claim is ``lhs >= rhs`` and ``"<="``
    otherwise. ``margin`` is the signed slack in the direction of the claim,
    so a positive margin always means the inequality holds at the point
    estimates. ``c_hat`` is the smallest constant that would make this
    instance satisfy the bound, computed at the conservative ends of the
    confidence intervals.
    """

    suite: str
    key: str
    measure: str
    n: int
    d: int
    p: float | None
    set: str
    seed: int
    instance: int
    direction: str
    lhs: NormEstimate
    rhs: float
    rhs_radius: float
    margin: float
    verdict: str
    c: float
    c_hat: float | None = None
    norm_p: NormEstimate | None = None
    mu_A: NormEstimate | None = None
    factor: float | None = None
    threshold: float | None = None
    regime: str | None = None
    wall_time: float = 0.0


@dataclass(frozen=True)
class TightnessResult:
    """Exact quantities for ``t^d`` under the exponential law with ``A = [0, eps]``."""

    d: int
    eps: float
    c: float
    full_norm: float
    full_norm_quadrature: float
    restricted_integral: float
    restricted_integral_quadrature: float
    upper_bound: float
    factorial_lower: float
    mu_A: float
    restricted_norm: float
    restricted_full_ratio: float
    predicted_lower: float
    achieved_ratio: float
    implied_c: float


@dataclass
class SearchResult:
    best_polynomial: Polynomial
    best_set: str
    best_ratio: float
    c_hat: float | None
    trace: list[float] = field(default_factory=list)
    best_params: tuple = ()


# verdict logic --------------------------------------------------------------

def verdict(lhs: float, lhs_radius: float, rhs: float, rhs_radius: float,
            direction: str = ">=") -> str:
    """Classify an instance by confidence-interval separation."""
    if direction not in (">=", "<="):
        raise ValueError(f"direction must be '>=' or '<=', got {direction!r}")
    gap = lhs - rhs if direction == ">=" else rhs - lhs
    noise = lhs_radius + rhs_radius
    if gap - noise >= 0:
        return "holds"
    if gap + noise < 0:
        return "violated"
    return "holds_within_noise" if gap >= 0 else "inconclusive"


def _margin(lhs, rhs, direction):
    return lhs - rhs if direction == ">=" else rhs - lhs


def _spread(point: float, lo: float, hi: float) -> float:
    return max(hi - point, point - lo, 0.0)


def count_verdicts(reports: Sequence[InequalityReport]) -> dict[str, int]:
    counts = {v: 0 for v in VERDICTS}
    for r in reports:
        counts[r.verdict] += 1
    return counts


# instance construction ------------------------------------------------------

def build_measure(kind: str, n: int, sampler: str = "direct") -> MeasureSpec:
    """Standard bodies used by the suites: [-1,1]^n, the unit ball, the corner simplex."""
    if kind == "uniform_box":
        return MeasureSpec.box(n, sampler=sampler)
    if kind == "uniform_ball":
        return MeasureSpec.ball(n, sampler=sampler)
    if kind == "uniform_simplex":
        return MeasureSpec.simplex(n, sampler=sampler)
    if kind == "gaussian_standard":
        return MeasureSpec.gaussian(n)
    if kind == "exponential_halfline":
        return MeasureSpec.exponential()
    if kind == "interval_uniform":
        return MeasureSpec.interval(0.0, 1.0)
    raise ValueError(f"no standard instance of measure kind {kind!r}")


def random_set(family: str, f: Polynomial, measure: MeasureSpec, quantile: float,
               rng: np.random.Generator, pilot: np.ndarray) -> SetSpec:
    """A set of measure close to ``quantile``, calibrated on pilot samples."""
    if family == "halfspace":
        u = rng.standard_normal(measure.n)
        u /= np.linalg.norm(u)
        offset = float(np.quantile(pilot @ u, quantile))
        return Halfspace(tuple(u.tolist()), offset)
    if family == "sublevel":
        level = float(np.quantile(np.abs(f.evaluate(pilot)), quantile))
        return Sublevel(f, level, absolute=True)
    if family == "whole":
        return Whole(measure.n)
    raise ValueError(f"unknown set family {family!r}")


@dataclass(frozen=True)
class _Instance:
    key: str
    measure: MeasureSpec
    f: Polynomial
    A: SetSpec
    n: int
    d: int
    index: int
    X: np.ndarray | None
    values: np.ndarray | None


def _instance(cfg: SuiteConfig, suite: str, kind: str, n: int, d: int, i: int) -> _Instance:
    key = f"{kind}|n={n}|d={d}|i={i:03d}"
    measure = build_measure(kind, n, cfg.sampler)
    rng = stream(cfg.seed, suite, key)
    f = random_polynomial(n, d, cfg.law, rng)
    family = cfg.set_families[i % len(cfg.set_families)]
    q = float(rng.uniform(*cfg.quantiles))
    pilot = sample(measure, PILOT_SAMPLES, (cfg.seed, tag(suite + "|pilot|" + key)))
    A = random_set(family, f, measure, q, rng, pilot)
    exact = cfg.method != "monte_carlo" and measure.support_interval() is not None
    if exact:
        X = values = None
    else:
        X = sample(measure, cfg.samples, (cfg.seed, tag(suite + "|main|" + key)))
        values = magnitude(f, X)
    return _Instance(key, measure, f, A, n, d, i, X, values)


# integral bound suite ------------------------------------------------------

def _theorem1_job(args) -> list[InequalityReport]:
    cfg, kind, n, d, i = args
    t0 = time.perf_counter()
    out = _theorem1_reports(cfg, _instance(cfg, "theorem1", kind, n, d, i))
    elapsed = 0.0 if cfg.fixed_clock else time.perf_counter() - t0
    return [replace(r, wall_time=elapsed / max(1, len(out))) for r in out]


def _theorem1_reports(cfg: SuiteConfig, inst: _Instance) -> list[InequalityReport]:
    conf = 1.0 - (1.0 - cfg.confidence) / 3.0
    inside = None if inst.X is None else inst.A.contains(inst.X)
    shared = dict(samples=inst.X, confidence=conf, method=cfg.method)
    try:
        mu = set_measure(inst.measure, inst.A, inside=inside, **shared)
    except DegenerateSetError:
        log.warning("skipping %s: set has zero measure", inst.key)
        return []
    if mu.value <= 0.0:
        log.warning("skipping %s: set %s has vanishing measure", inst.key, inst.A.describe())
        return []
    out = []
    for p in cfg.exponents:
        try:
            norm = lp_norm(inst.f, inst.measure, p, values=inst.values, degree=inst.d, **shared)
            lhs = restricted_lp_norm(inst.f, inst.measure, inst.A, p, values=inst.values,
                                     inside=inside, degree=inst.d, **shared)
        except (DegenerateSetError, DegenerateSampleError) as exc:
            log.warning("skipping %s p=%s: %s", inst.key, p, exc)
            continue
        if p > 0:
            out.append(_theorem1_report(cfg, inst, p, lhs, norm, mu))
        else:
            out.append(_negative_p_report(cfg, inst, p, lhs, norm, mu))
    return out


def _single(f, measure: MeasureSpec, A: SetSpec, d: int | None, cfg: SuiteConfig,
            label: str) -> _Instance:
    d = f.degree if d is None else d
    if cfg.method != "monte_carlo" and measure.support_interval() is not None:
        X = values = None
    else:
        X = sample(measure, cfg.samples, (cfg.seed, tag(label)))
        values = magnitude(f, X)
    return _Instance(label, measure, f, A, measure.n, max(d, 1), 0, X, values)


def check_theorem1(f, measure: MeasureSpec, A: SetSpec, p: float, c: float = 4.0, *,
                   d: int | None = None, budget: int = 100_000, seed: int = 0,
                   confidence: float = 0.99, method: str = "auto",
                   key: str = "single") -> InequalityReport:
    """One instance of the integral bound (or the trivial bound when ``p < 0``).

    ``d`` defaults to the degree of ``f``; constants are treated as degree 1.
    """
    if p == 0:
        raise ValueError("p = 0 has no integral bound")
    cfg = SuiteConfig(exponents=(p,), samples=budget, seed=seed, c=c, confidence=confidence,
                      method=method, fixed_clock=True)
    reports = _theorem1_reports(cfg, _single(f, measure, A, d, cfg, key))
    if not reports:
        raise DegenerateSetError(f"{A.describe()} has no usable mass under {measure.describe()}")
    return reports[0]


def _mu_interval(mu: NormEstimate) -> tuple[float, float]:
    return max(mu.lo, 1e-300), min(mu.hi, 1.0)


def _theorem1_report(cfg, inst, p, lhs, norm, mu) -> InequalityReport:
    d = inst.d
    mu_pt = min(max(mu.value, 1e-300), 1.0)
    mu_lo, mu_hi = _mu_interval(mu)
    factor = bounds.theorem1_factor(p, d, mu_pt, cfg.c)
    rhs = factor * norm.value
    hi = bounds.theorem1_factor(p, d, mu_hi, cfg.c) * norm.hi
    lo = bounds.theorem1_factor(p, d, mu_lo, cfg.c) * max(norm.lo, 0.0)
    rhs_r = _spread(rhs, lo, hi)
    c_hat = _implied_theorem1(p, d, mu, norm, lhs)
    return InequalityReport(
        suite="theorem1", key=f"{inst.key}|p={p:g}", measure=inst.measure.kind, n=inst.n,
        d=d, p=p, set=inst.A.describe(), seed=cfg.seed, instance=inst.index, direction=">=",
        lhs=lhs, rhs=rhs, rhs_radius=rhs_r, margin=_margin(lhs.value, rhs, ">="),
        verdict=verdict(lhs.value, lhs.radius, rhs, rhs_r, ">="), c=cfg.c, c_hat=c_hat,
        norm_p=norm, mu_A=mu, factor=factor, regime=bounds.regime(p, d))


def _implied_theorem1(p, d, mu: NormEstimate, norm: NormEstimate, lhs: NormEstimate):
    if lhs.value <= 0 or norm.value <= 0:
        return None
    lhs_low = lhs.lo if lhs.lo > 0 else lhs.value
    _, mu_hi = _mu_interval(mu)
    return bounds.implied_constant(p, d, mu_hi, norm.hi, lhs_low)


def _negative_p_report(cfg, inst, p, lhs, norm, mu) -> InequalityReport:
    # Trivial bound for p < 0: ||f||_p <= mu(A)^(1/p) ||f||_{p,A}.
    mu_pt = min(max(mu.value, 1e-300), 1.0)
    mu_lo, mu_hi = _mu_interval(mu)
    factor = bounds.negative_p_bound(mu_pt, p)
    rhs = factor * lhs.value
    hi = bounds.negative_p_bound(mu_lo, p) * lhs.hi
    lo = bounds.negative_p_bound(mu_hi, p) * max(lhs.lo, 0.0)
    rhs_r = _spread(rhs, lo, hi)
    implied = norm.value / lhs.value if lhs.value > 0 else None
    return InequalityReport(
        suite="negative_p", key=f"{inst.key}|p={p:g}", measure=inst.measure.kind, n=inst.n,
        d=inst.d, p=p, set=inst.A.describe(), seed=cfg.seed, instance=inst.index,
        direction="<=", lhs=norm, rhs=rhs, rhs_radius=rhs_r,
        margin=_margin(norm.value, rhs, "<="),
        verdict=verdict(norm.value, norm.radius, rhs, rhs_r, "<="), c=cfg.c, c_hat=implied,
        norm_p=lhs, mu_A=mu, factor=factor, regime="negative")


def _jobs(cfg: SuiteConfig):
    for kind in cfg.measures:
        for n in cfg.dims:
            for d in cfg.degrees:
                for i in range(cfg.instances):
                    yield (cfg, kind, n, d, i)


def _run(job: Callable, cfg: SuiteConfig) -> list[InequalityReport]:
    jobs = list(_jobs(cfg))
    if not jobs:
        raise ValueError("empty suite configuration")
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            chunks = list(pool.map(job, jobs, chunksize=4))
    else:
        chunks = [job(j) for j in jobs]
    reports = [r for chunk in chunks for r in chunk]
    reports.sort(key=lambda r: r.key)
    return reports


def run_theorem1_suite(cfg: SuiteConfig) -> list[InequalityReport]:
    """Check ``||f||_{p,A} >= K(p, d, mu(A), c) ||f||_p`` on every grid cell.

    Negative exponents in the grid are routed to the trivial bound
    ``||f||_p <= mu(A)^(1/p) ||f||_{p,A}`` (suite name ``negative_p``).
    """
    if any(p == 0 for p in cfg.exponents):
        raise ValueError("p = 0 has no integral bound; remove it from the exponent grid")
    return _run(_theorem1_job, cfg)


def boundary_comparison(reports: Sequence[InequalityReport], c: float | None = None) -> dict:
    """Compare the two branch formulas on integral-bound reports with ``p d = 1``.

    For each such report both lower bounds are evaluated at the conservative
    end of the measured quantities; the result counts how often each branch
    still holds and how often each is the larger (tighter) of the two.
    """
    out = {"instances": 0, "small_holds": 0, "large_holds": 0,
           "small_larger": 0, "large_larger": 0}
    for r in reports:
        if r.suite != "theorem1" or not math.isclose(r.p * r.d, 1.0):
            continue
        mu_hi = _mu_interval(r.mu_A)[1]
        small, large = bounds.branch_factors(r.p, r.d, mu_hi, r.c if c is None else c)
        lhs_low = r.lhs.lo if r.lhs.lo > 0 else r.lhs.value
        out["instances"] += 1
        out["small_holds"] += small * r.norm_p.hi <= lhs_low
        out["large_holds"] += large * r.norm_p.hi <= lhs_low
        out["small_larger" if small > large else "large_larger"] += 1
    return out


# Carbery-Wright suite ---------------------------------------------------------

def threshold_grid(norm_value: float, count: int) -> np.ndarray:
    """``count`` thresholds from ``1e-4 ||f||_p`` to ``||f||_p``, log-spaced."""
    if count < 1:
        raise ValueError("need at least one threshold")
    if count == 1:
        return np.array([norm_value])
    return norm_value * np.logspace(-4.0, 0.0, count)


def _cw_job(args) -> list[InequalityReport]:
    cfg, kind, n, d, i = args
    t0 = time.perf_counter()
    inst = _instance(cfg, "cw", kind, n, d, i)
    out = []
    for p in cfg.exponents:
        if p <= 0:
            continue
        norm = lp_norm(inst.f, inst.measure, p, samples=inst.X, values=inst.values,
                       confidence=_cw_confidence(cfg), method=cfg.method)
        if norm.value <= 0:
            continue
        out.extend(_cw_reports(cfg, inst, p, threshold_grid(norm.value, cfg.thresholds)))
    elapsed = 0.0 if cfg.fixed_clock else time.perf_counter() - t0
    return [replace(r, wall_time=elapsed / max(1, len(out))) for r in out]


def _cw_confidence(cfg: SuiteConfig) -> float:
    return 1.0 - (1.0 - cfg.confidence) / (cfg.thresholds + 1)


def _cw_reports(cfg: SuiteConfig, inst: _Instance, p: float, ts) -> list[InequalityReport]:
    d = inst.d
    shared = dict(samples=inst.X, confidence=_cw_confidence(cfg), method=cfg.method,
                  values=inst.values)
    norm = lp_norm(inst.f, inst.measure, p, **shared)
    if norm.value <= 0:
        raise DegenerateSampleError("||f||_p vanishes; the level-set bound is undefined")
    levels = levelset_measure(inst.f, inst.measure, ts, **shared)
    out = []
    for j, (t, lev) in enumerate(zip(ts, levels)):
        t = float(t)
        rhs = bounds.cw_levelset_bound(t, norm.value, p, d, cfg.c)
        hi = bounds.cw_levelset_bound(t, norm.lo, p, d, cfg.c) if norm.lo > 0 else 1.0
        lo = bounds.cw_levelset_bound(t, norm.hi, p, d, cfg.c)
        rhs_r = _spread(rhs, lo, hi)
        c_hat = None
        if lev.value > 0 and t > 0:
            scale = (p * d) if bounds.regime(p, d) == "large" else 1.0
            c_hat = lev.hi * (norm.hi / t) ** (1.0 / d) / scale
        out.append(InequalityReport(
            suite="cw", key=f"{inst.key}|p={p:g}|t={j:02d}", measure=inst.measure.kind,
            n=inst.n, d=d, p=p, set="levelset", seed=cfg.seed, instance=inst.index,
            direction="<=", lhs=lev, rhs=rhs, rhs_radius=rhs_r,
            margin=_margin(lev.value, rhs, "<="),
            verdict=verdict(lev.value, lev.radius, rhs, rhs_r, "<="), c=cfg.c, c_hat=c_hat,
            norm_p=norm, threshold=t, regime=bounds.regime(p, d)))
    return out


def check_cw(f, measure: MeasureSpec, p: float, thresholds, c: float = 4.0, *,
             d: int | None = None, budget: int = 100_000, seed: int = 0,
             confidence: float = 0.99, method: str = "auto",
             key: str = "single") -> list[InequalityReport]:
    """Level-set bound for one polynomial at the given thresholds."""
    if p <= 0:
        raise ValueError(f"the level-set bound needs p > 0, got {p}")
    ts = np.atleast_1d(np.asarray(thresholds, dtype=float))
    cfg = SuiteConfig(exponents=(p,), samples=budget, seed=seed, c=c, confidence=confidence,
                      method=method, thresholds=len(ts), fixed_clock=True)
    return _cw_reports(cfg, _single(f, measure, Whole(measure.n), d, cfg, key), p, ts)


def run_cw_suite(cfg: SuiteConfig) -> list[InequalityReport]:
    """Check ``mu(|f| <= t) <= cw_levelset_bound(t, ||f||_p, p, d, c)`` on a threshold grid."""
    return _run(_cw_job, cfg)


def levelsets_monotone(reports: Sequence[InequalityReport]) -> bool:
    """True when, per (instance, p), level-set estimates never decrease in t."""
    groups: dict[str, list[InequalityReport]] = {}
    for r in reports:
        if r.suite == "cw":
            groups.setdefault(r.key.rsplit("|t=", 1)[0], []).append(r)
    for rows in groups.values():
        rows.sort(key=lambda r: r.threshold)
        vals = [r.lhs.value for r in rows]
        if any(b < a for a, b in zip(vals, vals[1:])):
            return False
    return True


# classical and vector-valued Remez on an interval -------------------------------

def grid_sup(g: Callable[[np.ndarray], np.ndarray], intervals: Sequence[tuple[float, float]],
             start: int = 1025, max_points: int = 1 << 21, rtol: float = 1e-9):
    """Supremum of ``g`` over a union of intervals by grid doubling.

    Returns ``(sup, last_change, converged)``. Each interval gets the same
    grid density; endpoints are always included.
    """
    parts = [(a, b) for a, b in intervals if b >= a]
    if not parts:
        raise ValueError("empty domain")
    total = sum(b - a for a, b in parts) or 1.0
    pts = start
    prev = None
    change = math.inf
    while True:
        best = -math.inf
        for a, b in parts:
            k = max(2, int(math.ceil(pts * (b - a) / total)) + 1)
            t = np.linspace(a, b, k)
            best = max(best, float(np.max(g(t))))
        if prev is not None:
            change = abs(best - prev)
            if change <= rtol * max(abs(best), 1e-300):
                return best, change, True
        if pts * 2 > max_points:
            return best, change, False
        prev = best
        pts = 2 * pts - 1


def random_interval_union(rng: np.random.Generator, delta=(-1.0, 1.0), max_pieces: int = 3,
                          min_fraction: float = 0.2) -> tuple[IntervalUnion, float]:
    """Union of at most ``max_pieces`` subintervals of ``delta`` covering >= min_fraction."""
    a, b = delta
    width = b - a
    while True:
        k = int(rng.integers(1, max_pieces + 1))
        pieces = []
        for _ in range(k):
            length = width * rng.uniform(0.05, 0.8)
            start = a + (width - length) * rng.random()
            pieces.append((start, start + length))
        parts = normalize_intervals(pieces)
        frac = sum(hi - lo for lo, hi in parts) / width
        if frac >= min_fraction:
            return IntervalUnion(tuple(parts)), frac


def _classical_report(cfg, kind, i, d, g, A: IntervalUnion, frac, R, label, seed):
    delta = (-1.0, 1.0)
    sup_d, ch_d, ok_d = grid_sup(g, [delta])
    sup_a, ch_a, ok_a = grid_sup(g, A.parts)
    bound = bounds.classical_remez_bound(d, frac, R)
    rhs = bound * sup_a
    rhs_r = bound * ch_a
    lhs = NormEstimate(sup_d, ch_d if ok_d else math.inf, "grid", 0)
    v = verdict(sup_d, lhs.radius, rhs, rhs_r, "<=") if ok_d and ok_a else "inconclusive"
    c_hat = frac * (sup_d / sup_a) ** (1.0 / d) if d > 0 and sup_a > 0 else None
    return InequalityReport(
        suite="classical", key=f"{kind}|i={i:04d}", measure="interval_uniform", n=1, d=d,
        p=None, set=A.describe(), seed=seed, instance=i, direction="<=", lhs=lhs, rhs=rhs,
        rhs_radius=rhs_r, margin=_margin(sup_d, rhs, "<="), verdict=v, c=R, c_hat=c_hat,
        mu_A=NormEstimate(frac, 0.0, "exact", 0), factor=bound, regime=label)


def check_classical(g: Callable[[np.ndarray], np.ndarray], d: int, A: IntervalUnion,
                    R: float = bounds.R_POLYNOMIAL) -> InequalityReport:
    """``sup_[-1,1] g <= (R / lambda(A))^d sup_A g`` for a non-negative vectorised ``g``."""
    parts = intersect_intervals(A.parts, [(-1.0, 1.0)])
    frac = sum(b - a for a, b in parts) / 2.0
    if frac <= 0:
        raise DegenerateSetError(f"{A.describe()} misses [-1, 1]")
    return _classical_report(SuiteConfig(), "single", 0, d, g, IntervalUnion(tuple(parts)),
                             frac, R, "single", 0)


def _classical_job(args) -> InequalityReport:
    cfg, kind, i = args
    t0 = time.perf_counter()
    rng = stream(cfg.seed, "classical", kind, i)
    A, frac = random_interval_union(rng, max_pieces=cfg.max_pieces,
                                    min_fraction=cfg.min_fraction)
    if kind == "scalar":
        d = int(rng.integers(1, cfg.max_degree + 1))
        law = "spiked" if i % 2 else "normal"
        f = random_polynomial(1, d, law, rng)
        rep = _classical_report(cfg, kind, i, d, lambda t: np.abs(f.evaluate(t)), A, frac,
                                cfg.R, "scalar", cfg.seed)
    elif kind == "vector":
        m = int(rng.integers(1, cfg.max_components + 1))
        comps = [random_polynomial(1, int(rng.integers(1, cfg.max_degree + 1)), "normal", rng)
                 for _ in range(m)]
        F = PolynomialMap(comps, CODOMAIN_NORMS[i % len(CODOMAIN_NORMS)])
        rep = _classical_report(cfg, kind, i, F.degree, F.norm_values, A, frac, cfg.R,
                                f"vector[{F.norm},m={m}]", cfg.seed)
    else:
        d = int(rng.integers(1, cfg.max_trig_degree + 1))
        T = TrigPolynomial(3.0 * rng.standard_normal((d, 2)))
        a = rng.standard_normal(2)
        v = rng.standard_normal(2)
        v /= np.linalg.norm(v)

        def g(t):
            return T.modulus(a[None, :] + np.asarray(t)[:, None] * v[None, :])

        rep = _classical_report(cfg, kind, i, d, g, A, frac, cfg.R_trig, "trig", cfg.seed)
    elapsed = 0.0 if cfg.fixed_clock else time.perf_counter() - t0
    return replace(rep, wall_time=elapsed)


def run_classical_suite(cfg: SuiteConfig) -> list[InequalityReport]:
    """``sup_Delta ||f|| <= (R / lambda(A))^d sup_A ||f||`` on Delta = [-1, 1].

    Scalar polynomials and polynomial maps use ``cfg.R``; trigonometric sums
    restricted to random lines use ``cfg.R_trig``.
    """
    jobs = ([(cfg, "scalar", i) for i in range(cfg.scalar_instances)]
            + [(cfg, "vector", i) for i in range(cfg.vector_instances)]
            + [(cfg, "trig", i) for i in range(cfg.trig_instances)])
    if not jobs:
        raise ValueError("empty classical suite")
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            reports = list(pool.map(_classical_job, jobs, chunksize=8))
    else:
        reports = [_classical_job(j) for j in jobs]
    return sorted(reports, key=lambda r: r.key)


# exact tightness example -------------------------------------------------------

def tightness_exponential(d: int, eps: float, c: float = 4.0) -> TightnessResult:
    """``t^d`` under ``e^(-t) dt`` on ``[0, inf)`` with ``A = [0, eps]``, computed exactly."""
    if d < 1 or eps <= 0:
        raise ValueError("need d >= 1 and eps > 0")
    full = float(special.gamma(d + 1))
    restricted = float(special.gammainc(d + 1, eps)) * full

    def g(t):
        return t ** d * math.exp(-t)

    full_q = quadrature_1d(g, (0.0, math.inf), tol=1e-12)
    restricted_q = quadrature_1d(g, (0.0, eps), tol=1e-12)
    mu_A = -math.expm1(-eps)
    restricted_norm = restricted / mu_A
    predicted = bounds.theorem1_factor(1.0, d, mu_A, c) * full
    return TightnessResult(
        d=d, eps=eps, c=c, full_norm=full, full_norm_quadrature=full_q,
        restricted_integral=restricted, restricted_integral_quadrature=restricted_q,
        upper_bound=bounds.tightness_bound(d, eps), factorial_lower=bounds.factorial_lower(d),
        mu_A=mu_A, restricted_norm=restricted_norm, restricted_full_ratio=restricted / full,
        predicted_lower=predicted, achieved_ratio=restricted_norm / predicted,
        implied_c=bounds.implied_constant(1.0, d, mu_A, full, restricted_norm))


# empirical constant ---------------------------------------------------------------

def fit_empirical_constant(reports: Sequence[InequalityReport]) -> float:
    """Largest per-instance implied constant over integral-bound reports.

    Uses the conservative ends: ``mu(A)`` and ``||f||_p`` at the top of their
    intervals and ``||f||_{p,A}`` at the bottom (or the point value when the
    bottom is not positive).
    """
    rows = [r for r in reports if r.suite == "theorem1"]
    if not rows:
        raise ValueError("no integral-bound reports to fit")
    best = 0.0
    for r in rows:
        if r.lhs.value <= 0:
            raise ValueError(f"instance {r.key} has non-positive lhs")
        best = max(best, _implied_theorem1(r.p, r.d, r.mu_A, r.norm_p, r.lhs))
    return best


# extremal search -------------------------------------------------------------------

class DenseFamily:
    """All polynomials of degree <= d in n variables; parameters are coefficients."""

    def __init__(self, n: int, d: int):
        self.n, self.d = n, d
        self.exponents = monomial_exponents(n, d)

    def start(self, rng, constant: bool):
        if constant:
            theta = np.zeros(len(self.exponents))
            theta[0] = 1.0
            return theta
        return rng.standard_normal(len(self.exponents))

    def perturb(self, theta, step, rng):
        out = np.array(theta, dtype=float)
        j = int(rng.integers(out.size))
        out[j] += step * max(1.0, float(np.max(np.abs(out)))) * rng.standard_normal()
        return out

    def build(self, theta) -> Polynomial:
        return Polynomial(self.n, dict(zip(self.exponents, theta)))


class MonomialFamily:
    """Univariate monomials ``t^k`` for ``0 <= k <= d``; the parameter is k."""

    def __init__(self, d: int):
        self.n, self.d = 1, d

    def start(self, rng, constant: bool):
        return 0 if constant else int(rng.integers(0, self.d + 1))

    def perturb(self, k, step, rng):
        return int(min(self.d, max(0, k + (1 if rng.random() < 0.5 else -1))))

    def build(self, k) -> Polynomial:
        return Polynomial(1, {(k,): 1.0})


class FixedSetFamily:
    def __init__(self, A: SetSpec):
        self.A = A

    def start(self, rng):
        return None

    def perturb(self, state, step, rng):
        return None

    def build(self, state, pilot) -> SetSpec:
        return self.A


class HalfspaceFamily:
    """Halfspaces ``<u, x> <= q-quantile``; state is ``(u, q)``."""

    def __init__(self, n: int, quantiles=(0.1, 0.9)):
        self.n, self.quantiles = n, quantiles

    def start(self, rng):
        u = rng.standard_normal(self.n)
        return (u / np.linalg.norm(u), float(rng.uniform(*self.quantiles)))

    def perturb(self, state, step, rng):
        u, q = state
        u = u + step * rng.standard_normal(self.n)
        q = float(np.clip(q + step * rng.standard_normal() * 0.2, *self.quantiles))
        return (u / np.linalg.norm(u), q)

    def build(self, state, pilot) -> SetSpec:
        u, q = state
        return Halfspace(tuple(u.tolist()), float(np.quantile(pilot @ u, q)))


def search_extremal(family, measure: MeasureSpec, set_family, p: float, iterations: int = 200,
                    restarts: int = 4, seed: int = 0, budget: int = 20_000, c: float = 4.0,
                    step: float = 0.5, decay: float = 0.98, method: str = "auto") -> SearchResult:
    """Randomised hill-climb maximising ``||f||_p / ||f||_{p,A}``.

    Restart 0 starts from the constant polynomial (ratio 1). All candidates
    are scored on one fixed sample set, so the trace is a deterministic
    function of ``seed``. The returned trace is the best-so-far ratio after
    every evaluation and never decreases.
    """
    if iterations < 1 or restarts < 1 or budget < 1:
        raise ValueError("budgets must be positive")
    X = None
    if method == "monte_carlo" or measure.support_interval() is None:
        X = sample(measure, budget, (seed, tag("search|main")))
    pilot = sample(measure, min(budget, PILOT_SAMPLES), (seed, tag("search|pilot")))
    use = "monte_carlo" if X is not None else method

    def score(theta, state):
        f = family.build(theta)
        A = set_family.build(state, pilot)
        try:
            full = lp_norm(f, measure, p, samples=X, method=use)
            part = restricted_lp_norm(f, measure, A, p, samples=X, method=use)
            mu = set_measure(measure, A, samples=X, method=use)
        except (DegenerateSetError, DegenerateSampleError, RemezLabError):
            return -math.inf, None
        if part.value <= 0:
            return -math.inf, None
        return full.value / part.value, (f, A, full, part, mu)

    trace: list[float] = []
    best = (-math.inf, None, None, None)
    for r in range(restarts):
        rng = stream(seed, "search", r)
        theta = family.start(rng, constant=(r == 0))
        state = set_family.start(rng)
        cur, detail = score(theta, state)
        if cur > best[0]:
            best = (cur, detail, theta, state)
        trace.append(best[0])
        s = step
        for _ in range(iterations):
            cand_theta = family.perturb(theta, s, rng)
            cand_state = set_family.perturb(state, s, rng)
            val, det = score(cand_theta, cand_state)
            if val > cur:
                theta, state, cur = cand_theta, cand_state, val
                if val > best[0]:
                    best = (val, det, theta, state)
            trace.append(best[0])
            s *= decay
    ratio, detail, theta, state = best
    if detail is None:
        raise RemezLabError("extremal search found no admissible instance")
    f, A, full, part, mu = detail
    c_hat = None
    if f.degree >= 1 and p > 0 and mu.value > 0:
        c_hat = bounds.implied_constant(p, f.degree, min(mu.value, 1.0), full.value, part.value)
    params = tuple(np.atleast_1d(theta).tolist())
    return SearchResult(f, A.describe(), ratio, c_hat, trace, params)
