"""Polynomials, polynomial maps and trigonometric polynomials on R^n.

Polynomials are stored sparsely as ``{exponent tuple: coefficient}`` and
evaluated in a vectorised way over arrays of points of shape ``(m, n)``.
"""

from __future__ import annotations

import itertools
import math
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DimensionError
from .rng import stream

CODOMAIN_NORMS = ("euclidean", "sup", "one")
_CHUNK = 4096


def as_points(x, n: int) -> tuple[np.ndarray, bool]:
    """Coerce ``x`` to an ``(m, n)`` float array.

    Returns the array and a flag telling whether a single point was given.
    For ``n == 1`` a flat array is read as ``m`` scalar points.
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
        single = True
    elif arr.ndim == 1:
        if arr.shape[0] == n:
            arr = arr.reshape(1, n)
            single = True
        elif n == 1:
            arr = arr.reshape(-1, 1)
            single = False
        else:
            raise DimensionError(f"point has dimension {arr.shape[0]}, expected {n}")
    elif arr.ndim == 2:
        single = False
    else:
        raise DimensionError(f"points must be at most 2-D, got shape {arr.shape}")
    if arr.shape[1] != n:
        raise DimensionError(f"points have dimension {arr.shape[1]}, expected {n}")
    return arr, single


def monomial_exponents(n: int, d: int) -> list[tuple[int, ...]]:
    """All exponents of total degree <= d in graded lexicographic order."""
    out = []
    for total in range(d + 1):
        for combo in itertools.combinations_with_replacement(range(n), total):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    out.sort(key=lambda e: (sum(e), tuple(-v for v in e)))
    return out


class Polynomial:
    """Real polynomial in ``n`` variables, kept in collapsed monomial form.

    Parameters
    ----------
    n : int
        Ambient dimension.
    terms : mapping
        ``{exponent: coefficient}``; exponents are length-``n`` tuples of
        non-negative integers. Zero coefficients are dropped and repeated
        exponents are not possible in a mapping.
    """

    __slots__ = ("_n", "_terms", "_degree", "_plan")

    def __init__(self, n: int, terms: Mapping[Sequence[int], float] | None = None):
        if n < 1:
            raise ValueError(f"dimension must be positive, got {n}")
        clean: dict[tuple[int, ...], float] = {}
        for exp, coef in (terms or {}).items():
            e = tuple(int(v) for v in exp)
            if len(e) != n:
                raise DimensionError(f"exponent {e} has length {len(e)}, expected {n}")
            if any(v < 0 for v in e):
                raise ValueError(f"negative exponent in {e}")
            c = float(coef)
            if not math.isfinite(c):
                raise ValueError(f"non-finite coefficient for {e}")
            if c != 0.0:
                clean[e] = clean.get(e, 0.0) + c
        clean = {e: c for e, c in clean.items() if c != 0.0}
        self._n = n
        self._terms = MappingProxyType(clean)
        self._degree = max((sum(e) for e in clean), default=0)
        self._plan = None

    # construction helpers -------------------------------------------------

    @classmethod
    def constant(cls, n: int, value: float) -> "Polynomial":
        return cls(n, {(0,) * n: value})

    @classmethod
    def from_univariate(cls, coeffs: Iterable[float]) -> "Polynomial":
        """Univariate polynomial from ascending coefficients ``c0, c1, ...``."""
        return cls(1, {(k,): c for k, c in enumerate(coeffs)})

    # basic properties -----------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def terms(self) -> Mapping[tuple[int, ...], float]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._n == other._n and dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        return hash((self._n, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        body = " + ".join(f"{c:g}*x^{e}" for e, c in self._terms.items()) or "0"
        return f"Polynomial(n={self._n}, d={self._degree}: {body})"

    def scale(self, alpha: float) -> "Polynomial":
        return Polynomial(self._n, {e: alpha * c for e, c in self._terms.items()})

    def coefficients(self) -> np.ndarray:
        """Ascending coefficient vector of a univariate polynomial."""
        if self._n != 1:
            raise DimensionError("coefficients() is only defined for n == 1")
        out = np.zeros(self._degree + 1)
        for (k,), c in self._terms.items():
            out[k] = c
        return out

    # evaluation -----------------------------------------------------------

    def _build_plan(self):
        # Row j of the monomial table is parent_row * x_i, where the parent
        # drops one power of the first non-zero coordinate of exponent j.
        needed = set()
        stack = list(self._terms)
        while stack:
            e = stack.pop()
            if e in needed or sum(e) == 0:
                continue
            needed.add(e)
            i = next(k for k, v in enumerate(e) if v)
            stack.append(e[:i] + (e[i] - 1,) + e[i + 1:])
        order = [(0,) * self._n] + sorted(needed, key=lambda e: (sum(e), e))
        row = {e: j for j, e in enumerate(order)}
        parents, coords = [], []
        for e in order[1:]:
            i = next(k for k, v in enumerate(e) if v)
            parents.append(row[e[:i] + (e[i] - 1,) + e[i + 1:]])
            coords.append(i)
        coefs = np.array([self._terms.get(e, 0.0) for e in order])
        self._plan = (parents, coords, coefs)
        return self._plan

    def evaluate(self, X) -> np.ndarray:
        """Evaluate at an ``(m, n)`` array of points; returns shape ``(m,)``."""
        pts, _ = as_points(X, self._n)
        parents, coords, coefs = self._plan if self._plan is not None else self._build_plan()
        if not parents:
            return np.full(pts.shape[0], coefs[0])
        m = pts.shape[0]
        xt = np.ascontiguousarray(pts.T)
        out = np.empty(m)
        # Chunked so the monomial table stays cache-resident.
        width = min(m, _CHUNK)
        table = np.empty((len(coefs), width))
        for start in range(0, m, width):
            stop = min(start + width, m)
            w = stop - start
            tab = table[:, :w]
            tab[0] = 1.0
            for j, (par, i) in enumerate(zip(parents, coords), start=1):
                np.multiply(tab[par], xt[i, start:stop], out=tab[j])
            out[start:stop] = coefs @ tab
        return out

    def __call__(self, x):
        pts, single = as_points(x, self._n)
        vals = self.evaluate(pts)
        return float(vals[0]) if single else vals

    # serialization --------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"# polynomial n={self._n}"]
        for e, c in sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0])):
            lines.append(" ".join([repr(c)] + [str(v) for v in e]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "Polynomial":
        """Parse the ``c e1 ... en`` line format written by :meth:`to_text`."""
        terms: dict[tuple[int, ...], float] = {}
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    if tok.startswith("n=") and n is None:
                        n = int(tok[2:])
                continue
            parts = line.split()
            exp = tuple(int(v) for v in parts[1:])
            if n is None:
                n = len(exp)
            if len(exp) != n:
                raise DimensionError(f"line {raw!r} has {len(exp)} exponents, expected {n}")
            terms[exp] = terms.get(exp, 0.0) + float(parts[0])
        if n is None:
            raise ValueError("cannot infer dimension of an empty polynomial without a header")
        return cls(n, terms)


class PolynomialMap:
    """Polynomial map R^n -> R^m with a chosen norm on the codomain."""

    __slots__ = ("components", "norm")

    def __init__(self, components: Sequence[Polynomial], norm: str = "euclidean"):
        comps = tuple(components)
        if not comps:
            raise ValueError("a polynomial map needs at least one component")
        dims = {c.n for c in comps}
        if len(dims) != 1:
            raise DimensionError(f"components have mixed dimensions {sorted(dims)}")
        if norm not in CODOMAIN_NORMS:
            raise ValueError(f"unknown codomain norm {norm!r}; choose from {CODOMAIN_NORMS}")
        self.components = comps
        self.norm = norm

    @property
    def n(self) -> int:
        return self.components[0].n

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.components)

    def scale(self, alpha: float) -> "PolynomialMap":
        return PolynomialMap([c.scale(alpha) for c in self.components], self.norm)

    def evaluate(self, X) -> np.ndarray:
        """Component values, shape ``(m, len(components))``."""
        pts, _ = as_points(X, self.n)
        return np.stack([c.evaluate(pts) for c in self.components], axis=1)

    def norm_values(self, X) -> np.ndarray:
        vals = self.evaluate(X)
        if self.norm == "euclidean":
            return np.sqrt(np.sum(vals * vals, axis=1))
        if self.norm == "sup":
            return np.max(np.abs(vals), axis=1)
        return np.sum(np.abs(vals), axis=1)

    def __repr__(self) -> str:
        return f"PolynomialMap(m={len(self.components)}, n={self.n}, norm={self.norm!r})"


class TrigPolynomial:
    """``x -> sum_k exp(i <l_k, x>)`` for a list of linear functionals ``l_k``."""

    __slots__ = ("functionals",)

    def __init__(self, functionals):
        arr = np.atleast_2d(np.asarray(functionals, dtype=float))
        if arr.shape[0] == 0:
            raise ValueError("a trigonometric polynomial needs at least one functional")
        arr.setflags(write=False)
        self.functionals = arr

    @property
    def n(self) -> int:
        return self.functionals.shape[1]

    @property
    def degree(self) -> int:
        return self.functionals.shape[0]

    def modulus(self, X) -> np.ndarray:
        pts, _ = as_points(X, self.n)
        phases = pts @ self.functionals.T
        return np.hypot(np.cos(phases).sum(axis=1), np.sin(phases).sum(axis=1))

    def __repr__(self) -> str:
        return f"TrigPolynomial(d={self.degree}, n={self.n})"


def eval_polynomial(P: Polynomial, x) -> float:
    return P(x)


def eval_map_norm(F: PolynomialMap, x):
    pts, single = as_points(x, F.n)
    vals = F.norm_values(pts)
    return float(vals[0]) if single else vals


def eval_trig_modulus(T: TrigPolynomial, x):
    pts, single = as_points(x, T.n)
    vals = T.modulus(pts)
    return float(vals[0]) if single else vals


def restrict_to_line(P: Polynomial, a, v) -> Polynomial:
    """Exact univariate polynomial ``t -> P(a + t v)``."""
    a = np.asarray(a, dtype=float).reshape(-1)
    v = np.asarray(v, dtype=float).reshape(-1)
    if a.shape[0] != P.n or v.shape[0] != P.n:
        raise DimensionError(f"line data must have dimension {P.n}")
    if not np.any(v):
        raise ValueError("direction vector must be non-zero")
    total = np.zeros(P.degree + 1)
    for e, c in P.terms.items():
        prod = np.array([c])
        for i, k in enumerate(e):
            if k:
                prod = npoly.polymul(prod, npoly.polypow([a[i], v[i]], k))
        total[: prod.shape[0]] += prod
    return Polynomial.from_univariate(total)


def random_polynomial(n: int, d: int, law: str = "normal", seed=0,
                      spike: float = 10.0) -> Polynomial:
    """Dense random polynomial with all C(n+d, d) monomials.

    ``law="normal"`` draws i.i.d. standard normal coefficients. ``law="spiked"``
    additionally multiplies one randomly chosen top-degree coefficient by
    ``spike``. ``seed`` is an int or a ``numpy.random.Generator``.
    """
    if n < 1 or d < 0:
        raise ValueError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    if law not in ("normal", "spiked"):
        raise ValueError(f"unknown coefficient law {law!r}")
    rng = seed if isinstance(seed, np.random.Generator) else stream(seed, "random_polynomial", n, d)
    exps = monomial_exponents(n, d)
    coefs = rng.standard_normal(len(exps))
    if law == "spiked" and d > 0:
        top = [k for k, e in enumerate(exps) if sum(e) == d]
        coefs[top[rng.integers(len(top))]] *= spike
    return Polynomial(n, dict(zip(exps, coefs)))
