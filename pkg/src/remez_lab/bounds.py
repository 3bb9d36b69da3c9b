"""Closed-form constants and bound factors for Remez-type inequalities.

All functions are pure and operate on plain floats. The universal constant
``c`` of the integral inequality and the level-set inequality has no known
value; it is always an explicit argument (default 4 elsewhere in the
package) and is never claimed to be the true constant.
"""

from __future__ import annotations

import math

#: Classical one-dimensional Remez constant for algebraic polynomials.
R_POLYNOMIAL = 4.0
#: Classical one-dimensional Remez-type constant for trigonometric sums.
R_TRIGONOMETRIC = 316.0


def _check_fraction(frac: float, name: str = "frac") -> None:
    if not 0.0 < frac <= 1.0:
        raise ValueError(f"{name} must lie in (0, 1], got {frac}")


def classical_remez_bound(d: int, frac: float, R: float = R_POLYNOMIAL) -> float:
    """``(R / frac) ** d``: sup over an interval vs sup over a subset of relative length frac."""
    _check_fraction(frac)
    if d < 0:
        raise ValueError(f"degree must be non-negative, got {d}")
    return (R / frac) ** d


def bg_bound(n: int, d: int, frac: float) -> float:
    """Convex-body constant ``(4 n / frac) ** d``."""
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    _check_fraction(frac)
    if d < 0:
        raise ValueError(f"degree must be non-negative, got {d}")
    return (R_POLYNOMIAL * n / frac) ** d


def regime(p: float, d: int) -> str:
    """``"small"`` when ``0 < p d < 1``, ``"large"`` when ``p d >= 1``."""
    return "small" if p * d < 1.0 else "large"


def _check_theorem_args(p, d, muA, c):
    if p <= 0:
        raise ValueError(f"p must be positive, got {p}")
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    _check_fraction(muA, "muA")
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")


def theorem1_factor(p: float, d: int, muA: float, c: float) -> float:
    """Factor K with ``||f||_{p,A} >= K ||f||_p`` for degree-d polynomials.

    For ``p d < 1``: ``(muA/c)^d (dp+1)^(-1/p)``.
    For ``p d >= 1``: ``(muA/(c p d))^d (p+1/d)^(-1/p)``.
    The two branches do not agree at ``p d = 1``; the boundary belongs to the
    second branch.
    """
    _check_theorem_args(p, d, muA, c)
    if regime(p, d) == "small":
        return (muA / c) ** d * (d * p + 1.0) ** (-1.0 / p)
    return (muA / (c * p * d)) ** d * (p + 1.0 / d) ** (-1.0 / p)


def branch_factors(p: float, d: int, muA: float, c: float) -> tuple[float, float]:
    """Both branch formulas of :func:`theorem1_factor`, ``(small, large)``, ignoring the regime."""
    _check_theorem_args(p, d, muA, c)
    small = (muA / c) ** d * (d * p + 1.0) ** (-1.0 / p)
    large = (muA / (c * p * d)) ** d * (p + 1.0 / d) ** (-1.0 / p)
    return small, large


def theorem1_self_check(p: float, d: int, c: float) -> float:
    """The factor at ``muA = 1``; a value above 1 means c is too small for (p, d)."""
    return theorem1_factor(p, d, 1.0, c)


def implied_constant(p: float, d: int, muA: float, norm_p: float, norm_pA: float) -> float:
    """Smallest c for which ``theorem1_factor(p, d, muA, c) * norm_p <= norm_pA``."""
    if norm_pA <= 0 or norm_p <= 0:
        raise ValueError("norms must be positive to invert the bound")
    _check_theorem_args(p, d, muA, 1.0)
    if regime(p, d) == "small":
        return muA * ((d * p + 1.0) ** (-1.0 / p) * norm_p / norm_pA) ** (1.0 / d)
    return muA / (p * d) * ((p + 1.0 / d) ** (-1.0 / p) * norm_p / norm_pA) ** (1.0 / d)


def ak_factor(d: int, muA: float, C: float) -> float:
    """Older integral bound ``||f||_{1,A} >= muA^d / (C d)^(2d) ||f||_1``, kept for comparison.

    Stated for the unnormalised integral this reads
    ``int_A |f| dmu >= muA^(d+1) / (C d)^(2d) ||f||_1``.
    """
    _check_fraction(muA, "muA")
    if d < 1 or C <= 0:
        raise ValueError("need d >= 1 and C > 0")
    return muA ** d / (C * d) ** (2 * d)


def cw_levelset_bound(t: float, norm_p: float, p: float, d: int, c: float) -> float:
    """Upper bound on ``mu(|f| <= t)`` given ``||f||_p``, capped at 1.

    ``c (t/||f||_p)^(1/d) p d`` when ``p d >= 1`` and ``c (t/||f||_p)^(1/d)``
    when ``0 < p d < 1``.
    """
    if t < 0:
        raise ValueError(f"threshold must be non-negative, got {t}")
    if norm_p <= 0:
        raise ValueError(f"norm_p must be positive, got {norm_p}")
    if p <= 0:
        raise ValueError(f"p must be positive, got {p}")
    if d < 1 or c <= 0:
        raise ValueError("need d >= 1 and c > 0")
    base = c * (t / norm_p) ** (1.0 / d)
    if regime(p, d) == "large":
        base *= p * d
    return min(1.0, base)


def class_constant_from_R(R: float) -> float:
    """Constant ``3 R^2`` for a function class with 1-D Remez constant R."""
    if R <= 0:
        raise ValueError(f"R must be positive, got {R}")
    return 3.0 * R * R


def negative_p_bound(muA: float, p: float) -> float:
    """``muA ** (1/p)`` for p < 0: ``||f||_p <= muA^(1/p) ||f||_{p,A}`` for any f."""
    if p >= 0:
        raise ValueError(f"p must be negative, got {p}")
    _check_fraction(muA, "muA")
    try:
        return muA ** (1.0 / p)
    except OverflowError:
        return math.inf


def tightness_bound(d: int, eps: float) -> float:
    """``eps^(d+1) / (d+1)``, an upper bound on ``int_0^eps t^d e^(-t) dt``."""
    return eps ** (d + 1) / (d + 1)


def factorial_lower(d: int) -> float:
    """``(d/e)^d <= d!``."""
    return (d / math.e) ** d
