"""Log-concave probability measures: sampling, membership, exact 1-D integrals."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, optimize

from .errors import DimensionError, QuadratureError, SamplerError
from .poly_core import as_points
from .rng import stream
from .sets import Interval, SetSpec, intersect_intervals

KINDS = (
    "uniform_box",
    "uniform_ball",
    "uniform_simplex",
    "uniform_polytope",
    "exponential_halfline",
    "gaussian_standard",
    "interval_uniform",
)
DIRECT_KINDS = frozenset(KINDS) - {"uniform_polytope"}
BODY_KINDS = frozenset({"uniform_box", "uniform_ball", "uniform_simplex",
                        "uniform_polytope", "interval_uniform"})
MAX_DIMENSION = 12
MEMBERSHIP_TOL = 1e-12


@dataclass(frozen=True)
class MeasureSpec:
    """A log-concave probability measure on R^n.

    Use the ``box``/``ball``/... constructors rather than building this
    directly. ``sampler`` selects ``"direct"`` or ``"hit_and_run"``; the
    hit-and-run defaults are ``1000 * n`` burn-in steps and ``n`` thinning
    steps per returned point.
    """

    kind: str
    n: int
    low: tuple[float, ...] = ()
    high: tuple[float, ...] = ()
    center: tuple[float, ...] = ()
    radius: float = 1.0
    A: tuple[tuple[float, ...], ...] = ()
    b: tuple[float, ...] = ()
    sampler: str = "direct"
    burn_in: int | None = None
    thinning: int | None = None
    chains: int = 32
    interior: tuple[float, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown measure kind {self.kind!r}; choose from {KINDS}")
        if not 1 <= self.n <= MAX_DIMENSION:
            raise ValueError(f"dimension must be in [1, {MAX_DIMENSION}], got {self.n}")
        if self.kind in ("exponential_halfline", "interval_uniform") and self.n != 1:
            raise ValueError(f"{self.kind} is one-dimensional")
        if self.sampler not in ("direct", "hit_and_run"):
            raise ValueError(f"unknown sampler {self.sampler!r}")
        if self.sampler == "direct" and self.kind not in DIRECT_KINDS:
            raise SamplerError(f"{self.kind} has no direct sampler; use hit_and_run")
        if self.sampler == "hit_and_run" and self.kind not in (
                "uniform_box", "uniform_ball", "uniform_simplex", "uniform_polytope"):
            raise SamplerError(f"hit_and_run is not available for {self.kind}")
        if self.kind in ("uniform_box", "interval_uniform"):
            if len(self.low) != self.n or len(self.high) != self.n:
                raise DimensionError("box bounds must have length n")
            if any(lo >= hi for lo, hi in zip(self.low, self.high)):
                raise ValueError("box must have low < high in every coordinate")
        if self.kind == "uniform_ball":
            if len(self.center) != self.n:
                raise DimensionError("ball center must have length n")
            if self.radius <= 0:
                raise ValueError("ball radius must be positive")
        if self.kind == "uniform_polytope" and not self.interior:
            A = np.asarray(self.A, dtype=float)
            b = np.asarray(self.b, dtype=float)
            if A.ndim != 2 or A.shape[1] != self.n or b.shape != (A.shape[0],):
                raise DimensionError("polytope needs A of shape (k, n) and b of shape (k,)")
            object.__setattr__(self, "interior", tuple(_polytope_interior(A, b)))

    # constructors ---------------------------------------------------------

    @classmethod
    def box(cls, n: int, low: float | Sequence[float] = -1.0,
            high: float | Sequence[float] = 1.0, **kw) -> "MeasureSpec":
        lo = tuple(float(v) for v in np.broadcast_to(low, (n,)))
        hi = tuple(float(v) for v in np.broadcast_to(high, (n,)))
        return cls("uniform_box", n, low=lo, high=hi, **kw)

    @classmethod
    def ball(cls, n: int, radius: float = 1.0, center=None, **kw) -> "MeasureSpec":
        c = tuple(float(v) for v in (np.zeros(n) if center is None else center))
        return cls("uniform_ball", n, center=c, radius=float(radius), **kw)

    @classmethod
    def simplex(cls, n: int, **kw) -> "MeasureSpec":
        """Uniform law on ``{x >= 0, x_1 + ... + x_n <= 1}``."""
        return cls("uniform_simplex", n, **kw)

    @classmethod
    def polytope(cls, A, b, **kw) -> "MeasureSpec":
        A = np.atleast_2d(np.asarray(A, dtype=float))
        b = np.asarray(b, dtype=float).reshape(-1)
        kw.setdefault("sampler", "hit_and_run")
        return cls("uniform_polytope", A.shape[1],
                   A=tuple(map(tuple, A.tolist())), b=tuple(b.tolist()), **kw)

    @classmethod
    def exponential(cls) -> "MeasureSpec":
        return cls("exponential_halfline", 1)

    @classmethod
    def gaussian(cls, n: int) -> "MeasureSpec":
        return cls("gaussian_standard", n)

    @classmethod
    def interval(cls, a: float = 0.0, b: float = 1.0) -> "MeasureSpec":
        return cls("interval_uniform", 1, low=(float(a),), high=(float(b),))

    # derived views --------------------------------------------------------

    @property
    def has_body(self) -> bool:
        return self.kind in BODY_KINDS

    def halfspaces(self) -> tuple[np.ndarray, np.ndarray]:
        """H-representation ``A x <= b`` for polyhedral bodies."""
        n = self.n
        if self.kind in ("uniform_box", "interval_uniform"):
            eye = np.eye(n)
            return (np.vstack([eye, -eye]),
                    np.concatenate([np.asarray(self.high), -np.asarray(self.low)]))
        if self.kind == "uniform_simplex":
            return (np.vstack([-np.eye(n), np.ones((1, n))]),
                    np.concatenate([np.zeros(n), [1.0]]))
        if self.kind == "uniform_polytope":
            return np.asarray(self.A, dtype=float), np.asarray(self.b, dtype=float)
        raise SamplerError(f"{self.kind} is not polyhedral")

    def start_point(self) -> np.ndarray:
        if self.kind == "uniform_ball":
            return np.asarray(self.center, dtype=float)
        if self.kind in ("uniform_box", "interval_uniform"):
            return 0.5 * (np.asarray(self.low) + np.asarray(self.high))
        if self.kind == "uniform_simplex":
            return np.full(self.n, 1.0 / (self.n + 1))
        if self.kind == "uniform_polytope":
            return np.asarray(self.interior, dtype=float)
        raise SamplerError(f"{self.kind} has no body")

    def support_interval(self) -> Interval | None:
        """Support of a 1-D measure with an exact density, else ``None``."""
        if self.n != 1:
            return None
        if self.kind in ("uniform_box", "interval_uniform"):
            return (self.low[0], self.high[0])
        if self.kind == "uniform_ball":
            return (self.center[0] - self.radius, self.center[0] + self.radius)
        if self.kind == "uniform_simplex":
            return (0.0, 1.0)
        if self.kind == "exponential_halfline":
            return (0.0, math.inf)
        return None

    def describe(self) -> str:
        return f"{self.kind}(n={self.n})"


def _polytope_interior(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Chebyshev centre of ``{A x <= b}``; rejects empty, flat or unbounded bodies."""
    k, n = A.shape
    norms = np.linalg.norm(A, axis=1)
    res = optimize.linprog(np.r_[np.zeros(n), -1.0], A_ub=np.c_[A, norms], b_ub=b,
                           bounds=[(None, None)] * n + [(0, None)], method="highs")
    if res.status == 3:
        res_r = None
    elif res.status != 0:
        raise SamplerError(f"polytope interior LP failed: {res.message}")
    else:
        res_r = res.x[n]
    for i in range(n):
        for sign in (1.0, -1.0):
            c = np.zeros(n)
            c[i] = sign
            probe = optimize.linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * n,
                                     method="highs")
            if probe.status == 3:
                raise SamplerError("polytope is unbounded")
            if probe.status != 0:
                raise SamplerError(f"polytope is empty or infeasible: {probe.message}")
    if res_r is None or res_r <= 1e-12:
        raise SamplerError("polytope has empty interior")
    return res.x[:n]


def _generator(seed, label: str) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, tuple):
        return stream(*seed, label)
    return stream(int(seed), label)


# sampling -----------------------------------------------------------------

def sample_direct(spec: MeasureSpec, m: int, seed=0) -> np.ndarray:
    """``m`` i.i.d. draws, shape ``(m, n)``.

    ``seed`` is an int, a tuple of ints (a stream key) or a Generator.
    """
    if spec.kind not in DIRECT_KINDS:
        raise SamplerError(f"{spec.kind} has no direct sampler")
    if m < 0:
        raise ValueError("sample count must be non-negative")
    rng = _generator(seed, "direct")
    n = spec.n
    if spec.kind in ("uniform_box", "interval_uniform"):
        lo, hi = np.asarray(spec.low), np.asarray(spec.high)
        return lo + (hi - lo) * rng.random((m, n))
    if spec.kind == "uniform_ball":
        g = rng.standard_normal((m, n))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        r = spec.radius * rng.random(m) ** (1.0 / n)
        return np.asarray(spec.center) + g * r[:, None]
    if spec.kind == "uniform_simplex":
        e = rng.standard_exponential((m, n + 1))
        return e[:, :n] / e.sum(axis=1, keepdims=True)
    if spec.kind == "exponential_halfline":
        return rng.standard_exponential((m, 1))
    return rng.standard_normal((m, n))


def _chords(spec: MeasureSpec, X: np.ndarray, U: np.ndarray,
            H: tuple[np.ndarray, np.ndarray] | None):
    if spec.kind == "uniform_ball":
        y = X - np.asarray(spec.center)
        bu = np.einsum("ij,ij->i", y, U)
        cc = np.einsum("ij,ij->i", y, y) - spec.radius ** 2
        disc = np.sqrt(np.maximum(bu * bu - cc, 0.0))
        return -bu - disc, -bu + disc
    A, b = H
    slack = np.maximum(b[None, :] - X @ A.T, 0.0)
    W = U @ A.T
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = slack / W
    upper = np.where(W > 0, ratio, np.inf).min(axis=1)
    lower = np.where(W < 0, ratio, -np.inf).max(axis=1)
    if not (np.all(np.isfinite(upper)) and np.all(np.isfinite(lower))):
        raise SamplerError("unbounded chord: the body is not bounded")
    return lower, upper


def hit_and_run(spec: MeasureSpec, m: int, burn_in: int | None = None,
                thinning: int | None = None, seed=0, chains: int | None = None) -> np.ndarray:
    """Uniform samples from a convex body by hit-and-run.

    ``chains`` independent chains advance in lock-step from the body's
    interior point; each does ``burn_in`` steps and then records a point
    every ``thinning`` steps. Output is chain-major, truncated to ``m``.
    """
    if spec.kind not in ("uniform_box", "uniform_ball", "uniform_simplex", "uniform_polytope"):
        raise SamplerError(f"hit_and_run needs a convex body, got {spec.kind}")
    n = spec.n
    burn_in = spec.burn_in if burn_in is None else burn_in
    thinning = spec.thinning if thinning is None else thinning
    burn_in = 1000 * n if burn_in is None else burn_in
    thinning = n if thinning is None else thinning
    if thinning < 1 or burn_in < 0:
        raise ValueError("need thinning >= 1 and burn_in >= 0")
    k = max(1, min(spec.chains if chains is None else chains, m))
    per_chain = -(-m // k) if m else 0
    rng = _generator(seed, "hit_and_run")
    H = None if spec.kind == "uniform_ball" else spec.halfspaces()
    X = np.tile(spec.start_point(), (k, 1))
    out = np.empty((k, per_chain, n))

    def step(X):
        U = rng.standard_normal((k, n))
        U /= np.linalg.norm(U, axis=1, keepdims=True)
        lo, hi = _chords(spec, X, U, H)
        t = lo + (hi - lo) * rng.random(k)
        return X + t[:, None] * U

    for _ in range(burn_in):
        X = step(X)
    for j in range(per_chain):
        for _ in range(thinning):
            X = step(X)
        out[:, j, :] = X
    return out.reshape(k * per_chain, n)[:m]


def sample(spec: MeasureSpec, m: int, seed=0) -> np.ndarray:
    """Draw ``m`` points with the sampler policy configured on ``spec``."""
    if spec.sampler == "hit_and_run":
        return hit_and_run(spec, m, seed=seed)
    return sample_direct(spec, m, seed)


# membership and exact 1-D measures ----------------------------------------

def membership(spec: MeasureSpec, x) -> bool | np.ndarray:
    """Closed-body membership; a single point gives a bool."""
    if not spec.has_body:
        raise SamplerError(f"{spec.kind} has no body")
    pts, single = as_points(x, spec.n)
    if spec.kind == "uniform_ball":
        r = np.linalg.norm(pts - np.asarray(spec.center), axis=1)
        inside = r <= spec.radius * (1 + MEMBERSHIP_TOL)
    else:
        A, b = spec.halfspaces()
        scale = 1.0 + np.abs(b)
        inside = np.all(pts @ A.T <= b + MEMBERSHIP_TOL * scale, axis=1)
    return bool(inside[0]) if single else inside


def interval_measure(spec: MeasureSpec, intervals: Sequence[Interval]) -> float:
    """Exact measure of a union of disjoint intervals under a 1-D measure."""
    support = spec.support_interval()
    if support is None:
        raise SamplerError(f"no exact 1-D measure for {spec.describe()}")
    parts = intersect_intervals(intervals, [support])
    if spec.kind == "exponential_halfline":
        return float(sum(math.exp(-a) - (0.0 if b == math.inf else math.exp(-b))
                         for a, b in parts))
    a, b = support
    return float(sum(hi - lo for lo, hi in parts) / (b - a))


def density(spec: MeasureSpec) -> Callable[[float], float]:
    """Density of a 1-D measure on its support."""
    support = spec.support_interval()
    if support is None:
        raise SamplerError(f"no 1-D density for {spec.describe()}")
    if spec.kind == "exponential_halfline":
        return lambda t: math.exp(-t)
    width = support[1] - support[0]
    return lambda t: 1.0 / width


def exact_set_measure(spec: MeasureSpec, A: SetSpec) -> float | None:
    if spec.support_interval() is None:
        return None
    iv = A.intervals()
    return None if iv is None else interval_measure(spec, iv)


def quadrature_1d(g: Callable[[float], float], domain: Interval, tol: float = 1e-10,
                  points: Sequence[float] = (), limit: int = 500) -> float:
    """Adaptive quadrature of ``g`` over a finite interval or ``[a, inf)``.

    ``points`` are interior breakpoints (e.g. zeros of the integrand where
    ``|f|^p`` has a kink or an integrable singularity). A half-line is cut
    at ``L = max(a, points) + 40``; the piece ``[L, inf)`` is integrated by
    the infinite-range rule and added.
    """
    a, b = float(domain[0]), float(domain[1])
    if a == -math.inf:
        raise QuadratureError("left-infinite domains are not supported")
    if b == math.inf:
        cut = max([a] + [p for p in points if p > a]) + 40.0
        head = quadrature_1d(g, (a, cut), tol, points, limit)
        tail = _quad(g, cut, math.inf, tol, (), limit)
        return head + tail
    if b <= a:
        return 0.0
    return _quad(g, a, b, tol, points, limit)


def _quad(g, a, b, tol, points, limit):
    inner = sorted({float(p) for p in points if a < p < b})
    edges = [a] + inner + [b]
    total, err = 0.0, 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, e, info, *msg = integrate.quad(g, lo, hi, epsabs=1e-300, epsrel=tol,
                                            limit=limit, full_output=1)
        total += val
        err += e
    if not math.isfinite(total) or err > max(tol * abs(total), 1e-13):
        raise QuadratureError(f"quadrature on [{a}, {b}] did not converge "
                              f"(value {total:.6g}, error {err:.3g})")
    return total
