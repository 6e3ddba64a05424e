"""Sampled time scales: jump operators, delta derivatives, regressive algebra.

A time scale is stored as a finite strictly increasing list of points.  The
forward jump of a stored point is the next stored point, and the graininess
is their spacing.  Points whose spacing is at or below ``dense_threshold``
are classified right-dense; derivative limits at such points are
approximated by quotients at the sampled spacing, so the spacing is the
error scale of anything computed there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    InvalidShapeError,
    NonRegressiveError,
    NoSuccessorError,
    UnknownPointError,
)

_LOOKUP_ATOL = 1e-9


@dataclass(frozen=True, eq=False)
class TimeScale:
    """Ordered finite sample of a time scale."""

    points: np.ndarray
    dense_threshold: float = 1e-6
    kind: str = "explicit"
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        points = np.array(self.points, dtype=float)
        if points.ndim != 1 or points.size < 2:
            raise InvalidShapeError("time scale needs at least two points")
        if not np.all(np.isfinite(points)):
            raise InvalidShapeError("time scale points must be finite")
        if not np.all(np.diff(points) > 0):
            raise InvalidShapeError("time scale points must be strictly increasing")
        if self.dense_threshold <= 0:
            raise InvalidShapeError("dense_threshold must be positive")
        points.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "_index", {float(t): i for i, t in enumerate(points)})

    def __len__(self) -> int:
        return int(self.points.size)

    def index_of(self, t: float) -> int:
        """Index of a stored point, tolerating representation noise."""
        i = self._index.get(float(t))
        if i is not None:
            return i
        j = int(np.searchsorted(self.points, t))
        for cand in (j - 1, j):
            if 0 <= cand < len(self) and abs(self.points[cand] - t) <= _LOOKUP_ATOL * max(1.0, abs(t)):
                return cand
        raise UnknownPointError(f"t={t} is not a point of this time scale")

    def __contains__(self, t: float) -> bool:
        try:
            self.index_of(t)
            return True
        except UnknownPointError:
            return False

    def is_terminal(self, t: float) -> bool:
        return self.index_of(t) == len(self) - 1

    def sigma(self, t: float) -> float:
        """Forward jump: the next stored point."""
        i = self.index_of(t)
        if i == len(self) - 1:
            raise NoSuccessorError(f"t={t} is the terminal point")
        return float(self.points[i + 1])

    def mu(self, t: float) -> float:
        """Graininess sigma(t) - t."""
        return self.sigma(t) - float(self.points[self.index_of(t)])

    def is_right_dense(self, t: float) -> bool:
        return self.mu(t) <= self.dense_threshold

    def kappa_points(self) -> np.ndarray:
        """All points except the terminal one."""
        return self.points[:-1]

    def delta_derivative(self, f: Callable[[float], float], t: float) -> float:
        """Forward difference quotient [f(sigma(t)) - f(t)] / mu(t).

        Exact at right-scattered points; at right-dense points the sampled
        spacing stands in for the limit.
        """
        i = self.index_of(t)
        if i == len(self) - 1:
            raise NoSuccessorError(f"t={t} is the terminal point")
        t0 = float(self.points[i])
        t1 = float(self.points[i + 1])
        return (f(t1) - f(t0)) / (t1 - t0)

    def upper_dini(self, f: Callable[[float], float], t: float, k: int = 8) -> float:
        """Upper Dini derivative estimate of f at a stored point.

        At right-scattered points (continuity assumed) this coincides with
        delta_derivative.  At right-dense points it is the sup of the
        quotients [f(sigma(t)) - f(s)] / (sigma(t) - s) over the next ``k``
        stored s beyond sigma(t).
        """
        i = self.index_of(t)
        if i == len(self) - 1:
            raise NoSuccessorError(f"t={t} is the terminal point")
        if not self.is_right_dense(t):
            return self.delta_derivative(f, t)
        st = float(self.points[i + 1])
        fst = f(st)
        quotients = []
        for j in range(i + 2, min(i + 2 + k, len(self))):
            s = float(self.points[j])
            quotients.append((fst - f(s)) / (st - s))
        if not quotients:
            return self.delta_derivative(f, t)
        return max(quotients)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def integer(n: int, dense_threshold: float = 1e-6) -> TimeScale:
    """The initial segment 0, 1, ..., n of the nonnegative integers."""
    if n < 1:
        raise InvalidShapeError("integer scale needs n >= 1")
    return TimeScale(np.arange(n + 1, dtype=float), dense_threshold, kind=f"integer({n})")

def uniform(t0: float, h: float, n: int, dense_threshold: float = 1e-6) -> TimeScale:
    """n+1 equally spaced points t0, t0+h, ..., t0+n*h."""
    if h <= 0 or n < 1:
        raise InvalidShapeError("uniform scale needs h > 0 and n >= 1")
    return TimeScale(t0 + h * np.arange(n + 1), dense_threshold, kind=f"uniform({t0},{h},{n})")

def qscale(t0: float, q: float, n: int, dense_threshold: float = 1e-6) -> TimeScale:
    """Geometric points t0*q^0, ..., t0*q^n."""
    if t0 <= 0 or q <= 1 or n < 1:
        raise InvalidShapeError("q-scale needs t0 > 0, q > 1, n >= 1")
    return TimeScale(t0 * q ** np.arange(n + 1, dtype=float), dense_threshold,
                     kind=f"qscale({t0},{q},{n})")

def intervals(spans: list, resolution: float, dense_threshold: float = 1e-6) -> TimeScale:
    """Union of closed intervals, each sampled at roughly the resolution."""
    if resolution <= 0:
        raise InvalidShapeError("resolution must be positive")
    pieces = []
    prev_end = None
    for a, b in spans:
        if b <= a:
            raise InvalidShapeError(f"interval [{a}, {b}] is empty")
        if prev_end is not None and a <= prev_end:
            raise InvalidShapeError("intervals must be disjoint and increasing")
        steps = max(1, round((b - a) / resolution))
        pieces.append(np.linspace(a, b, steps + 1))
        prev_end = b
    return TimeScale(np.concatenate(pieces), dense_threshold,
                     kind=f"intervals({spans},{resolution})")

def explicit(points, dense_threshold: float = 1e-6) -> TimeScale:
    return TimeScale(np.asarray(points, dtype=float), dense_threshold, kind="explicit")


# ---------------------------------------------------------------------------
# Regressive functions and the circle algebra
# ---------------------------------------------------------------------------

_REG_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class RegressiveFn:
    """A real function on a time scale with 1 + mu(t)*p(t) != 0 everywhere.

    Regressivity is validated at every sampled non-terminal point when the
    object is built, and re-validated for every result of the circle
    operations below.
    """

    ts: TimeScale
    fn: Callable[[float], float]
    name: str = "p"

    def __post_init__(self):
        for t in self.ts.kappa_points():
            t = float(t)
            if abs(1.0 + self.ts.mu(t) * self.fn(t)) <= _REG_ATOL:
                raise NonRegressiveError(
                    f"1 + mu*{self.name} vanishes at t={t}"
                )

    def __call__(self, t: float) -> float:
        return float(self.fn(t))


def constant(ts: TimeScale, c: float) -> RegressiveFn:
    return RegressiveFn(ts, lambda t: c, name=str(c))


def circle_plus(p: RegressiveFn, q: RegressiveFn) -> RegressiveFn:
    """p (+)r q = p + q + mu*p*q."""
    ts = p.ts
    return RegressiveFn(ts, lambda t: p(t) + q(t) + ts.mu(t) * p(t) * q(t),
                        name=f"({p.name}(+)r{q.name})")


def circle_minus(p: RegressiveFn, q: RegressiveFn) -> RegressiveFn:
    """p (-)r q = (p - q) / (1 + mu*q)."""
    ts = p.ts
    return RegressiveFn(ts, lambda t: (p(t) - q(t)) / (1.0 + ts.mu(t) * q(t)),
                        name=f"({p.name}(-)r{q.name})")


def ominus(p: RegressiveFn) -> RegressiveFn:
    """(-)r p = 0 (-)r p = -p / (1 + mu*p)."""
    return circle_minus(constant(p.ts, 0.0), p)
