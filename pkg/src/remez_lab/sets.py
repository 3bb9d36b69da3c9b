"""Measurable sets given by indicator oracles.

A set is a small tree of closed conditions (halfspaces, polynomial sublevel
sets, finite unions of intervals) combined with complement, intersection and
union. Every set can be evaluated pointwise; in one dimension every set can
also be reduced to a disjoint union of intervals for exact measures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError
from .poly_core import Polynomial, as_points

Interval = tuple[float, float]


# interval arithmetic on sorted disjoint lists ------------------------------

def normalize_intervals(intervals: Sequence[Interval]) -> list[Interval]:
    """Sort and merge overlapping or touching closed intervals."""
    items = sorted((float(a), float(b)) for a, b in intervals if a <= b)
    out: list[list[float]] = []
    for a, b in items:
        if out and a <= out[-1][1]:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return [(a, b) for a, b in out]


def intersect_intervals(xs: Sequence[Interval], ys: Sequence[Interval]) -> list[Interval]:
    out = []
    for a, b in xs:
        for c, d in ys:
            lo, hi = max(a, c), min(b, d)
            if lo <= hi:
                out.append((lo, hi))
    return normalize_intervals(out)


def complement_intervals(xs: Sequence[Interval]) -> list[Interval]:
    # Closure of the complement; boundary points are null for every measure used.
    out = []
    prev = -math.inf
    for a, b in normalize_intervals(xs):
        if a > prev:
            out.append((prev, a))
        prev = b
    if prev < math.inf:
        out.append((prev, math.inf))
    return out


def total_length(xs: Sequence[Interval]) -> float:
    return sum(b - a for a, b in xs)


def polynomial_sublevel_intervals(q: Polynomial, s: float, absolute: bool = False) -> list[Interval]:
    """Intervals where ``q(t) <= s`` (or ``|q(t)| <= s``) for univariate q."""
    if absolute:
        return intersect_intervals(polynomial_sublevel_intervals(q, s),
                                   polynomial_sublevel_intervals(q.scale(-1.0), s))
    coeffs = q.coefficients().copy()
    coeffs[0] -= s
    breaks = _real_roots(coeffs)
    edges = [-math.inf] + breaks + [math.inf]
    out = []
    for a, b in zip(edges[:-1], edges[1:]):
        if a == -math.inf and b == math.inf:
            mid = 0.0
        elif a == -math.inf:
            mid = b - 1.0
        elif b == math.inf:
            mid = a + 1.0
        else:
            mid = 0.5 * (a + b)
        if np.polynomial.polynomial.polyval(mid, coeffs) <= 0.0:
            out.append((a, b))
    return normalize_intervals(out)


def _real_roots(coeffs: np.ndarray) -> list[float]:
    c = np.trim_zeros(np.asarray(coeffs, dtype=float), "b")
    if c.size <= 1:
        return []
    roots = np.polynomial.polynomial.polyroots(c)
    scale = max(1.0, float(np.max(np.abs(roots))))
    real = sorted(float(r.real) for r in roots if abs(r.imag) <= 1e-9 * scale)
    return real


# set specs ------------------------------------------------------------------

class SetSpec:
    """Base class. Subclasses implement ``contains`` and ``intervals``."""

    n: int

    def contains(self, X) -> np.ndarray:
        raise NotImplementedError

    def intervals(self) -> list[Interval] | None:
        """Disjoint closed intervals for 1-D sets, else ``None``."""
        return None

    def describe(self) -> str:
        raise NotImplementedError

    def __contains__(self, x) -> bool:
        return indicator(self, x)


@dataclass(frozen=True, eq=False)
class Whole(SetSpec):
    n: int

    def contains(self, X):
        pts, _ = as_points(X, self.n)
        return np.ones(pts.shape[0], dtype=bool)

    def intervals(self):
        return [(-math.inf, math.inf)] if self.n == 1 else None

    def describe(self):
        return "whole"


@dataclass(frozen=True, eq=False)
class Halfspace(SetSpec):
    """``{x : <a, x> <= b}``."""

    normal: tuple[float, ...]
    offset: float

    @property
    def n(self):
        return len(self.normal)

    def contains(self, X):
        pts, _ = as_points(X, self.n)
        return pts @ np.asarray(self.normal) <= self.offset

    def intervals(self):
        if self.n != 1:
            return None
        a, b = self.normal[0], self.offset
        if a > 0:
            return [(-math.inf, b / a)]
        if a < 0:
            return [(b / a, math.inf)]
        return [(-math.inf, math.inf)] if b >= 0 else []

    def describe(self):
        coef = ",".join(f"{v:.6g}" for v in self.normal)
        return f"halfspace(a=[{coef}], b={self.offset:.6g})"


@dataclass(frozen=True, eq=False)
class Sublevel(SetSpec):
    """``{x : q(x) <= s}``, or ``{x : |q(x)| <= s}`` when ``absolute``."""

    poly: Polynomial
    level: float
    absolute: bool = False

    @property
    def n(self):
        return self.poly.n

    def contains(self, X):
        vals = self.poly.evaluate(X)
        if self.absolute:
            vals = np.abs(vals)
        return vals <= self.level

    def intervals(self):
        if self.n != 1:
            return None
        return polynomial_sublevel_intervals(self.poly, self.level, self.absolute)

    def describe(self):
        kind = "|q|" if self.absolute else "q"
        return f"sublevel({kind}<={self.level:.6g}, deg={self.poly.degree})"


@dataclass(frozen=True, eq=False)
class IntervalUnion(SetSpec):
    """Finite union of closed intervals on the line."""

    parts: tuple[Interval, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(normalize_intervals(self.parts)))

    n = 1

    def contains(self, X):
        pts, _ = as_points(X, 1)
        t = pts[:, 0]
        inside = np.zeros(t.shape[0], dtype=bool)
        for a, b in self.parts:
            inside |= (t >= a) & (t <= b)
        return inside

    def intervals(self):
        return list(self.parts)

    def describe(self):
        return "union(" + ",".join(f"[{a:.6g},{b:.6g}]" for a, b in self.parts) + ")"


@dataclass(frozen=True, eq=False)
class Complement(SetSpec):
    inner: SetSpec

    @property
    def n(self):
        return self.inner.n

    def contains(self, X):
        return ~self.inner.contains(X)

    def intervals(self):
        inner = self.inner.intervals()
        return None if inner is None else complement_intervals(inner)

    def describe(self):
        return f"not({self.inner.describe()})"


@dataclass(frozen=True, eq=False)
class Intersection(SetSpec):
    members: tuple[SetSpec, ...]

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise ValueError("intersection needs at least one member")
        if len({m.n for m in members}) != 1:
            raise DimensionError("intersection members have mixed dimensions")
        object.__setattr__(self, "members", members)

    @property
    def n(self):
        return self.members[0].n

    def contains(self, X):
        out = self.members[0].contains(X)
        for m in self.members[1:]:
            out = out & m.contains(X)
        return out

    def intervals(self):
        acc = [(-math.inf, math.inf)]
        for m in self.members:
            iv = m.intervals()
            if iv is None:
                return None
            acc = intersect_intervals(acc, iv)
        return acc

    def describe(self):
        return "and(" + ",".join(m.describe() for m in self.members) + ")"


@dataclass(frozen=True, eq=False)
class Union(SetSpec):
    members: tuple[SetSpec, ...]

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise ValueError("union needs at least one member")
        if len({m.n for m in members}) != 1:
            raise DimensionError("union members have mixed dimensions")
        object.__setattr__(self, "members", members)

    @property
    def n(self):
        return self.members[0].n

    def contains(self, X):
        out = self.members[0].contains(X)
        for m in self.members[1:]:
            out = out | m.contains(X)
        return out

    def intervals(self):
        acc = []
        for m in self.members:
            iv = m.intervals()
            if iv is None:
                return None
            acc.extend(iv)
        return normalize_intervals(acc)

    def describe(self):
        return "or(" + ",".join(m.describe() for m in self.members) + ")"


def indicator(A: SetSpec, x) -> bool:
    """Membership of a single point."""
    pts, single = as_points(x, A.n)
    if not single:
        raise DimensionError("indicator expects a single point; use contains() for arrays")
    return bool(A.contains(pts)[0])
