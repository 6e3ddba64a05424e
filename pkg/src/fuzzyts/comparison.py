"""Scalar comparison hybrid systems and their Euler solution.

The scalar system mirrors the fuzzy one: a real state driven by
``g(t, r, v)`` where v is frozen at each switching instant as
``psi_k(r(t_k))``.  On isolated scales the forward Euler recursion is the
unique (hence maximal) solution; on densely sampled segments it only
approximates the maximal solution and reports itself as approximate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BlowUpError, InvalidShapeError
from .timescale import TimeScale

GFn = Callable[[float, float, float], float]
PsiFn = Callable[[float], float]


@dataclass(eq=False)
class ScalarHybridSystem:
    """Real comparison dynamics with per-segment frozen psi values."""

    ts: TimeScale
    switch_times: tuple[float, ...]
    g: GFn
    psi: tuple[PsiFn, ...]
    r0: float

    def __post_init__(self):
        times = tuple(float(t) for t in self.switch_times)
        if not times:
            raise InvalidShapeError("at least one switch time (the start) is required")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise InvalidShapeError("switch times must be strictly increasing")
        for t in times:
            self.ts.index_of(t)
        if times[0] != float(self.ts.points[0]):
            raise InvalidShapeError("the first switch time must be the initial point")
        if len(self.psi) != len(times):
            raise InvalidShapeError("need exactly one psi per switch time")
        if self.r0 < 0:
            raise InvalidShapeError("r0 must be nonnegative")
        self.switch_times = times
        self.psi = tuple(self.psi)

    def segment_of(self, t: float) -> int:
        k = int(np.searchsorted(np.asarray(self.switch_times), t, side="right")) - 1
        return max(k, 0)


@dataclass(eq=False)
class ScalarTrajectory:
    """Per-point real values with their segment indices."""

    ts: TimeScale
    values: np.ndarray
    segments: np.ndarray
    approximate_maximality: bool = False

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def times(self) -> np.ndarray:
        return self.ts.points[: len(self)]

    def value_at(self, t: float) -> float:
        i = self.ts.index_of(t)
        if i >= len(self):
            raise InvalidShapeError(f"trajectory is not defined at t={t}")
        return float(self.values[i])


def solve_comparison(sys: ScalarHybridSystem, horizon: float | None = None) -> ScalarTrajectory:
    """Euler recursion r(sigma(t)) = r(t) + mu(t) * g(t, r(t), psi_k(r_k)).

    psi_k is evaluated once, at segment entry, with the handoff value
    r_k = r(t_k).  Raises BlowUpError when g produces a non-finite value.
    """
    ts = sys.ts
    if horizon is None:
        horizon = float(ts.points[-1])
    h_idx = ts.index_of(horizon)

    values = [float(sys.r0)]
    segments = [0]
    frozen_v = None
    seg = -1
    dense = False
    for i in range(h_idx):
        t = float(ts.points[i])
        k = sys.segment_of(t)
        if k != seg:
            seg = k
            frozen_v = sys.psi[seg](values[i])
        mu = ts.mu(t)
        dense = dense or ts.is_right_dense(t)
        gval = sys.g(t, values[i], frozen_v)
        nxt = values[i] + mu * gval
        if not math.isfinite(nxt):
            raise BlowUpError(t, f"comparison state became non-finite stepping from t={t}")
        values.append(nxt)
        segments.append(sys.segment_of(float(ts.points[i + 1])))
    return ScalarTrajectory(ts, np.asarray(values), np.asarray(segments, dtype=int),
                            approximate_maximality=dense)


@dataclass
class MonotonicityReport:
    """Sampled check of the comparison-principle monotonicity hypotheses.

    Violations are content, not errors: each entry records the sampled
    point at which a finite difference had the wrong sign.
    """

    samples: int
    seed: int
    box: tuple[float, float]
    g_mu_r_violations: list[tuple[float, float, float, float]]
    g_v_violations: list[tuple[float, float, float, float]]
    psi_violations: list[tuple[int, float, float]]

    @property
    def passed(self) -> bool:
        return not (self.g_mu_r_violations or self.g_v_violations or self.psi_violations)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "samples": self.samples,
            "seed": self.seed,
            "box": list(self.box),
            "g_mu_r_violations": [list(v) for v in self.g_mu_r_violations[:10]],
            "g_v_violations": [list(v) for v in self.g_v_violations[:10]],
            "psi_violations": [list(v) for v in self.psi_violations[:10]],
        }


def check_monotonicity_hypothesis(sys: ScalarHybridSystem, samples: int = 200,
                                  seed: int = 0,
                                  box: tuple[float, float] = (0.0, 10.0),
                                  tol: float = 1e-9) -> MonotonicityReport:
    """Randomized sampled verification of the three monotonicity conditions.

    Over (t, r, v) draws with r, v in ``box`` checks that
      * r -> g(t, r, v) * mu(t) + r is nondecreasing,
      * v -> g(t, r, v) is nondecreasing, and
      * v -> psi_k(v) is nondecreasing for every k.
    """
    if samples < 1:
        raise InvalidShapeError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    ts = sys.ts
    lo, hi = box
    kappa = ts.kappa_points()
    g_mu_r: list[tuple[float, float, float, float]] = []
    g_v: list[tuple[float, float, float, float]] = []
    psi_bad: list[tuple[int, float, float]] = []
    for _ in range(samples):
        t = float(kappa[rng.integers(0, len(kappa))])
        mu = ts.mu(t)
        r1, r2 = sorted(rng.uniform(lo, hi, size=2))
        v1, v2 = sorted(rng.uniform(lo, hi, size=2))
        v = float(rng.uniform(lo, hi))
        r = float(rng.uniform(lo, hi))
        left = sys.g(t, r1, v) * mu + r1
        right = sys.g(t, r2, v) * mu + r2
        if right < left - tol:
            g_mu_r.append((t, r1, r2, right - left))
        gv1, gv2 = sys.g(t, r, v1), sys.g(t, r, v2)
        if gv2 < gv1 - tol:
            g_v.append((t, v1, v2, gv2 - gv1))
    for k, psi in enumerate(sys.psi):
        for _ in range(max(8, samples // max(1, len(sys.psi)))):
            v1, v2 = sorted(rng.uniform(lo, hi, size=2))
            if psi(v2) < psi(v1) - tol:
                psi_bad.append((k, v1, v2))
    return MonotonicityReport(samples, seed, box, g_mu_r, g_v, psi_bad)
