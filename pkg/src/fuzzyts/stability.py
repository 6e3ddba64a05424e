"""Lyapunov machinery and practical-stability verdicts for hybrid fuzzy systems.

The checker runs three layers and reports all of them:

1. *Hypothesis checks* — sampled validation of everything the comparison
   criterion assumes: V is sandwiched between two class-K functions of the
   state's distance to zero, V is locally Lipschitz (spot-checked, the
   estimated constant is reported), the dynamics satisfy the differential
   inequality along sampled trajectories, the comparison data are monotone
   where required, and the gate a(lambda) < b(A) holds.

2. *Comparison route* — empirical practical stability of the scalar
   comparison system over a grid of starting values r0 in [0, a(lambda)).
   When the hypothesis layer passes, these verdicts transfer to the fuzzy
   system; the implied conclusions are reported separately.

3. *Direct route* — seeded Monte-Carlo simulation of the fuzzy system
   itself over initial states with distance to zero drawn uniformly in
   (0, lambda), plus one deterministic probe at the premise boundary
   (distance exactly lambda).  Because close-by interior states follow
   close-by trajectories, a strict exceedance along the probe is confirmed
   by re-simulating a shrunken interior copy before it is counted; probe
   grazes (equality) are never counted.  The per-property outcomes are
   decided by this layer: "holds-on-samples" is the strongest positive
   verdict this tool ever states, never proof.

A first-class consistency flag reports any run where the hypothesis layer
and the comparison grid both pass while the direct route still witnesses a
violation; no such run should exist.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import comparison as cmp, fuzzy, hybrid
from .comparison import ScalarHybridSystem, ScalarTrajectory, check_monotonicity_hypothesis
from .errors import ConfigError, InvalidShapeError, StepFailureError
from .fuzzy import AlphaGrid, FuzzyVector
from .hukuhara import FuzzyTrajectory
from .hybrid import HybridFuzzySystem, StepMode
from .timescale import TimeScale

PROPERTIES = ("practically_stable", "quasi_stable", "strongly_stable", "asymptotically_stable")

HOLDS = "holds-on-samples"
VIOLATED = "violated"
NOT_TESTED = "not-tested"


@dataclass(frozen=True)
class LyapunovFn:
    """Nonnegative energy-like function of (t, state)."""

    fn: Callable[[float, FuzzyVector], float]
    lipschitz: float | None = None

    def __call__(self, t: float, u: FuzzyVector) -> float:
        return float(self.fn(t, u))


def norm_lyapunov() -> LyapunovFn:
    """V(t, u) = distance of u to the crisp zero."""
    return LyapunovFn(lambda t, u: fuzzy.norm(u), lipschitz=1.0)


@dataclass(frozen=True)
class ClassKPair:
    """Candidate class-K bounds a, b used to sandwich V."""

    a: Callable[[float], float]
    b: Callable[[float], float]


@dataclass(frozen=True)
class SamplingPlan:
    count: int = 200
    seed: int = 0
    family: str = "triangular"  # crisp | triangular | trapezoid

    def __post_init__(self):
        if self.count < 1:
            raise ConfigError("sampling count must be >= 1")
        if self.family not in ("crisp", "triangular", "trapezoid"):
            raise ConfigError(f"unknown sampling family {self.family!r}")


@dataclass(frozen=True)
class StabilityQuery:
    """Practical-stability question: premise radius lam, bounds A/B, tail T0.

    The direct test is well posed for lam <= A (equality allowed); the
    comparison-criterion gate additionally needs a(lam) < b(A) and reports
    itself untested otherwise.
    """

    lam: float
    A: float
    B: float | None = None
    T0: float | None = None
    rho: float = 100.0
    sampling: SamplingPlan = field(default_factory=SamplingPlan)

    def __post_init__(self):
        if not (0 < self.lam <= self.A):
            raise ConfigError(f"need 0 < lambda <= A, got lambda={self.lam}, A={self.A}")
        if self.lam >= self.rho:
            raise ConfigError(f"need lambda < rho, got lambda={self.lam}, rho={self.rho}")
        if self.B is not None and self.B <= 0:
            raise ConfigError("B must be positive")
        if self.T0 is not None and self.T0 < 0:
            raise ConfigError("T0 must be nonnegative")


# ---------------------------------------------------------------------------
# Dini derivative along a trajectory and the comparison bound
# ---------------------------------------------------------------------------

def dini_along_solution(V: LyapunovFn, traj: FuzzyTrajectory, t: float, k: int = 8) -> float:
    """Upper Dini derivative of t -> V(t, u(t)) along a stored trajectory.

    Exact quotient [V(sigma, u(sigma)) - V(t, u(t))] / mu at right-scattered
    points; sup of forward quotients over the next ``k`` samples at
    right-dense points.
    """
    ts = traj.ts
    i = ts.index_of(t)
    if i >= len(traj.values) - 1:
        raise InvalidShapeError(f"trajectory has no successor value at t={t}")

    def m(s: float) -> float:
        return V(s, traj.value_at(s))

    limit = min(len(traj.values) - 1, len(ts) - 1)
    t0 = float(ts.points[i])
    t1 = float(ts.points[i + 1])
    if not ts.is_right_dense(t0):
        return (m(t1) - m(t0)) / (t1 - t0)
    quotients = []
    fst = m(t1)
    for j in range(i + 2, min(i + 2 + k, limit + 1)):
        s = float(ts.points[j])
        quotients.append((fst - m(s)) / (t1 - s))
    if not quotients:
        return (m(t1) - m(t0)) / (t1 - t0)
    return max(quotients)


@dataclass
class BoundReport:
    """Outcome of checking V(t, u(t)) <= r(t) + tol point by point."""

    precondition_ok: bool
    checked_points: int
    violations: list[tuple[float, float, float]]  # (t, V, r)
    max_excess: float

    @property
    def holds(self) -> bool:
        return self.precondition_ok and not self.violations

    def to_dict(self) -> dict:
        return {
            "precondition_ok": self.precondition_ok,
            "checked_points": self.checked_points,
            "violations": [list(v) for v in self.violations[:10]],
            "max_excess": self.max_excess,
            "holds": self.holds,
        }


def verify_comparison_bound(V: LyapunovFn, fuzzy_traj: FuzzyTrajectory,
                            scalar_traj: ScalarTrajectory, tol: float = 1e-9) -> BoundReport:
    """Check the comparison bound along paired trajectories.

    Requires the hypothesis V(t0, u0) <= r0 + tol; when it fails the check
    is skipped and reported as a precondition failure.
    """
    if fuzzy_traj.ts is not scalar_traj.ts and not np.array_equal(
            fuzzy_traj.ts.points, scalar_traj.ts.points):
        raise InvalidShapeError("trajectories live on different time scales")
    n = min(len(fuzzy_traj), len(scalar_traj))
    t0 = float(fuzzy_traj.ts.points[0])
    v0 = V(t0, fuzzy_traj.values[0])
    if v0 > float(scalar_traj.values[0]) + tol:
        return BoundReport(False, 0, [], max_excess=v0 - float(scalar_traj.values[0]))
    violations = []
    worst = -math.inf
    for i in range(n):
        t = float(fuzzy_traj.ts.points[i])
        v = V(t, fuzzy_traj.values[i])
        r = float(scalar_traj.values[i])
        worst = max(worst, v - r)
        if v > r + tol:
            violations.append((t, v, r))
    return BoundReport(True, n, violations, max_excess=worst)


# ---------------------------------------------------------------------------
# Initial-condition sampling
# ---------------------------------------------------------------------------

def sample_initial_state(rng: np.random.Generator, grid: AlphaGrid, n: int,
                         family: str, target: float) -> FuzzyVector:
    """Random fuzzy vector with distance to zero exactly ``target``.

    Cores and widths are drawn uniformly, then the vector is rescaled; by
    absolute homogeneity of the metric the rescale lands the distance on
    target while preserving shape.
    """
    comps = []
    for _ in range(n):
        c = float(rng.uniform(-1.0, 1.0))
        if family == "crisp":
            comps.append((c, c, c, c))
        elif family == "triangular":
            wl = float(rng.uniform(0.0, 1.0))
            wr = float(rng.uniform(0.0, 1.0))
            comps.append((c - wl, c, c, c + wr))
        else:
            wl = float(rng.uniform(0.0, 1.0))
            wr = float(rng.uniform(0.0, 1.0))
            half = float(rng.uniform(0.0, 0.5))
            comps.append((c - half - wl, c - half, c + half, c + wr + half))
    raw = FuzzyVector(tuple(fuzzy.make_trapezoid(a, b, c2, d, grid) for a, b, c2, d in comps))
    size = fuzzy.norm(raw)
    if size <= 1e-9:
        # a nearly-zero draw cannot be rescaled; recurse on fresh randomness
        return sample_initial_state(rng, grid, n, family, target)
    return fuzzy.vec_scale(target / size, raw)


def boundary_probe(grid: AlphaGrid, n: int, family: str, lam: float) -> FuzzyVector:
    """Deterministic probe at the premise boundary (distance exactly lam)."""
    if family == "crisp":
        comp = fuzzy.crisp(lam, grid)
    else:
        comp = fuzzy.make_triangle(-lam, 0.0, lam, grid)
    return FuzzyVector(tuple(comp for _ in range(n)))


# ---------------------------------------------------------------------------
# Verdict structure
# ---------------------------------------------------------------------------

@dataclass
class Witness:
    """Concrete violation: which trajectory, where, and how large."""

    property: str
    t: float
    value: float
    bound: float
    mode: str
    sample: int  # -1 marks the boundary probe
    u0_distance: float
    u0: list  # per-component (alpha, lower, upper) records

    def sort_key(self):
        return (self.t, self.sample, self.mode, self.property)

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "t": self.t,
            "value": self.value,
            "bound": self.bound,
            "mode": self.mode,
            "sample": self.sample,
            "u0_distance": self.u0_distance,
            "u0": self.u0,
        }


@dataclass
class Verdict:
    """Structured result of a practical-stability check."""

    properties: dict  # name -> {"status": ..., "witness": ... | None}
    hypothesis_report: dict
    comparison_verdict: dict
    implied_conclusions: dict
    consistency: dict
    metadata: dict

    def to_dict(self) -> dict:
        return {
            "properties": self.properties,
            "hypothesis_report": self.hypothesis_report,
            "comparison_verdict": self.comparison_verdict,
            "implied_conclusions": self.implied_conclusions,
            "consistency": self.consistency,
            "metadata": self.metadata,
        }

    @property
    def any_violation(self) -> bool:
        return any(p["status"] == VIOLATED for p in self.properties.values()) \
            or self.consistency.get("inconsistent", False)

    @property
    def all_tested_hold(self) -> bool:
        tested = [p for p in self.properties.values() if p["status"] != NOT_TESTED]
        return bool(tested) and all(p["status"] == HOLDS for p in tested)

    def exit_code(self) -> int:
        if self.any_violation:
            return 1
        if self.all_tested_hold:
            return 0
        return 2


# ---------------------------------------------------------------------------
# Hypothesis layer
# ---------------------------------------------------------------------------

def _validate_class_k(kpair: ClassKPair, xmax: float, points: int = 101) -> dict:
    xs = np.linspace(0.0, xmax, points)
    out = {}
    for name, f in (("a", kpair.a), ("b", kpair.b)):
        values = np.array([float(f(x)) for x in xs])
        zero_ok = abs(values[0]) <= 1e-12
        diffs = np.diff(values)
        out[name] = {
            "zero_at_zero": bool(zero_ok),
            "strictly_increasing": bool(np.all(diffs > 0)),
            "min_increment": float(diffs.min()),
        }
        out[name]["passed"] = out[name]["zero_at_zero"] and out[name]["strictly_increasing"]
    out["grid_max"] = float(xmax)
    out["passed"] = out["a"]["passed"] and out["b"]["passed"]
    return out


def _check_sandwich(V: LyapunovFn, kpair: ClassKPair, ts: TimeScale, grid: AlphaGrid,
                    n: int, family: str, radius: float, rng: np.random.Generator,
                    samples: int, tol: float) -> dict:
    violations = []
    worst_low = math.inf
    worst_high = math.inf
    for _ in range(samples):
        t = float(ts.points[rng.integers(0, len(ts))])
        target = float(rng.uniform(0.0, radius))
        u = sample_initial_state(rng, grid, n, family, target)
        d = fuzzy.norm(u)
        v = V(t, u)
        low_margin = v - float(kpair.b(d))
        high_margin = float(kpair.a(d)) - v
        worst_low = min(worst_low, low_margin)
        worst_high = min(worst_high, high_margin)
        if low_margin < -tol or high_margin < -tol:
            violations.append((t, d, v))
    return {
        "passed": not violations,
        "samples": samples,
        "worst_lower_margin": worst_low,
        "worst_upper_margin": worst_high,
        "violations": [list(v) for v in violations[:10]],
    }


def _check_lipschitz(V: LyapunovFn, ts: TimeScale, grid: AlphaGrid, n: int,
                     family: str, radius: float, rng: np.random.Generator,
                     samples: int) -> dict:
    estimate = 0.0
    for _ in range(samples):
        t = float(ts.points[rng.integers(0, len(ts))])
        u1 = sample_initial_state(rng, grid, n, family, float(rng.uniform(0.0, radius)))
        u2 = sample_initial_state(rng, grid, n, family, float(rng.uniform(0.0, radius)))
        gap = fuzzy.vec_dist(u1, u2)
        if gap <= 1e-12:
            continue
        estimate = max(estimate, abs(V(t, u1) - V(t, u2)) / gap)
    declared = V.lipschitz
    ok = True if declared is None else estimate <= declared * (1.0 + 1e-9) + 1e-12
    return {
        "passed": bool(ok and math.isfinite(estimate)),
        "estimated_constant": estimate,
        "declared_constant": declared,
        "samples": samples,
    }


def _check_condition_ii(V: LyapunovFn, comp: ScalarHybridSystem,
                        trajectories: list[tuple[str, int, FuzzyTrajectory]],
                        tol: float) -> dict:
    """Differential inequality along every sampled trajectory."""
    worst = math.inf
    violations = []
    checked = 0
    for mode, sample_id, traj in trajectories:
        seg_entry_v: dict[int, float] = {}
        for i in range(len(traj.values) - 1):
            t = float(traj.ts.points[i])
            k = comp.segment_of(t)
            if k not in seg_entry_v:
                tk = comp.switch_times[k]
                seg_entry_v[k] = V(tk, traj.value_at(tk))
            lhs = dini_along_solution(V, traj, t)
            rhs = comp.g(t, V(t, traj.values[i]), comp.psi[k](seg_entry_v[k]))
            margin = rhs - lhs
            worst = min(worst, margin)
            checked += 1
            if margin < -tol:
                violations.append((t, lhs, rhs, mode, sample_id))
    return {
        "passed": not violations,
        "checked_steps": checked,
        "worst_margin": worst if checked else None,
        "violations": [list(v) for v in violations[:10]],
    }


# ---------------------------------------------------------------------------
# Comparison route
# ---------------------------------------------------------------------------

def _comparison_route(comp: ScalarHybridSystem, kpair: ClassKPair, q: StabilityQuery,
                      horizon: float, grid_size: int = 16) -> dict:
    a_lam = float(kpair.a(q.lam))
    b_A = float(kpair.b(q.A))
    b_B = float(kpair.b(q.B)) if q.B is not None else None
    t0 = float(comp.ts.points[0])
    starts = np.linspace(0.0, a_lam, grid_size, endpoint=False) if a_lam > 0 else np.array([0.0])
    stable = True
    quasi = True if (b_B is not None and q.T0 is not None) else None
    approx = False
    worst_peak = -math.inf
    failures = []
    for r0 in starts:
        traj = cmp.solve_comparison(dataclasses.replace(comp, r0=float(r0)), horizon=horizon)
        approx = approx or traj.approximate_maximality
        peak = float(np.max(traj.values))
        worst_peak = max(worst_peak, peak)
        if peak >= b_A:
            stable = False
            t_bad = float(traj.times[int(np.argmax(traj.values >= b_A))])
            failures.append({"r0": float(r0), "t": t_bad, "r": peak, "bound": b_A})
        if quasi is not None:
            tail = traj.values[traj.times >= t0 + q.T0]
            if tail.size and float(np.max(tail)) >= b_B:
                quasi = False
    # the tail bound with b(A) is implied by the full-horizon bound
    asymptotic = stable
    strong = None if quasi is None else (stable and quasi)

    def status(flag):
        if flag is None:
            return NOT_TESTED
        return HOLDS if flag else VIOLATED

    return {
        "grid_size": int(starts.size),
        "r0_max": float(starts.max()) if starts.size else 0.0,
        "a_lambda": a_lam,
        "b_A": b_A,
        "b_B": b_B,
        "approximate_maximality": approx,
        "worst_peak": worst_peak,
        "failures": failures[:10],
        "practically_stable": status(stable),
        "quasi_stable": status(quasi),
        "strongly_stable": status(strong),
        "asymptotically_stable": status(asymptotic),
    }


# ---------------------------------------------------------------------------
# Direct route and the full checker
# ---------------------------------------------------------------------------

def _simulate_direct(sys: HybridFuzzySystem, q: StabilityQuery, horizon: float,
                     modes: tuple[StepMode, ...]):
    """All direct-route trajectories: (mode, sample_id, u0, trajectory).

    sample_id -1 is the deterministic boundary probe; nonnegative ids are
    seeded Monte-Carlo draws with premise distance uniform in (0, lambda).
    Contractive failures are recorded and skipped, not treated as verdicts.
    """
    grid = sys.u0.grid
    n = sys.u0.n
    plan = q.sampling
    initial_states: list[tuple[int, FuzzyVector]] = []
    initial_states.append((-1, boundary_probe(grid, n, plan.family, q.lam)))
    for i in range(plan.count):
        rng = np.random.default_rng([plan.seed, i])
        target = float(rng.uniform(0.0, q.lam))
        while target <= 0.0:
            target = float(rng.uniform(0.0, q.lam))
        initial_states.append((i, sample_initial_state(rng, grid, n, plan.family, target)))

    runs = []
    skipped = []
    for mode in modes:
        for sample_id, u0 in initial_states:
            try:
                system = dataclasses.replace(sys, u0=u0)
            except InvalidShapeError as exc:
                raise ConfigError(
                    f"sampled initial state (distance {fuzzy.norm(u0):g}) lies "
                    f"outside the validity ball of radius {sys.rho:g}") from exc
            try:
                traj = hybrid.solve(system, mode=mode, horizon=horizon)
            except StepFailureError as exc:
                skipped.append({"mode": mode.value, "sample": sample_id, "t": exc.t})
                continue
            runs.append((mode.value, sample_id, u0, traj))
    return runs, skipped


def _direct_route(sys: HybridFuzzySystem, q: StabilityQuery, horizon: float,
                  modes: tuple[StepMode, ...]):
    """Monte-Carlo test of the practical-stability definitions."""
    runs, skipped = _simulate_direct(sys, q, horizon, modes)
    t0 = float(sys.ts.points[0])
    witnesses: list[Witness] = []
    probe_grazes = []

    def record(prop, t, value, bound, mode, sample_id, u0):
        witnesses.append(Witness(prop, t, value, bound, mode, sample_id,
                                 u0_distance=fuzzy.norm(u0), u0=u0.to_records()))

    def confirmed_probe_excess(mode: str, t: float, bound: float, u0: FuzzyVector) -> bool:
        # Re-simulate a shrunken interior copy; count the probe only if the
        # interior trajectory also reaches the bound at the same instant.
        inner = fuzzy.vec_scale(1.0 - 1e-9, u0)
        try:
            traj = hybrid.solve(dataclasses.replace(sys, u0=inner),
                                mode=StepMode(mode), horizon=horizon)
        except StepFailureError:
            return False
        return fuzzy.norm(traj.value_at(t)) >= bound

    def check_bound(prop, t, d, bound, mode, sample_id, u0):
        if d < bound:
            return
        if sample_id == -1:  # boundary probe: strict excess, interior-confirmed
            if d > bound and confirmed_probe_excess(mode, t, bound, u0):
                record(prop, t, d, bound, mode, sample_id, u0)
            else:
                probe_grazes.append({"property": prop, "mode": mode,
                                     "t": t, "value": d})
        else:
            record(prop, t, d, bound, mode, sample_id, u0)

    for mode, sample_id, u0, traj in runs:
        for t, v in zip(traj.times, traj.values):
            t = float(t)
            d = fuzzy.norm(v)
            in_tail = q.T0 is not None and t >= t0 + q.T0
            # stability: distance must stay below A for all t
            check_bound("practically_stable", t, d, q.A, mode, sample_id, u0)
            # quasi: distance below B from t0 + T0 on
            if q.B is not None and in_tail:
                check_bound("quasi_stable", t, d, q.B, mode, sample_id, u0)
            # asymptotic tail: distance below A from t0 + T0 on
            if in_tail:
                check_bound("asymptotically_stable", t, d, q.A, mode, sample_id, u0)

    witnesses.sort(key=Witness.sort_key)
    by_prop: dict[str, list[Witness]] = {p: [] for p in PROPERTIES}
    for w in witnesses:
        by_prop[w.property].append(w)

    # no surviving trajectory means nothing was tested, never "holds"
    quasi_testable = bool(runs) and q.B is not None and q.T0 is not None
    stable_testable = bool(runs)

    def outcome(testable, violated_list):
        if not testable:
            return {"status": NOT_TESTED, "witness": None}
        if violated_list:
            return {"status": VIOLATED, "witness": violated_list[0].to_dict()}
        return {"status": HOLDS, "witness": None}

    outcomes: dict[str, dict] = {}
    outcomes["practically_stable"] = outcome(stable_testable, by_prop["practically_stable"])
    outcomes["quasi_stable"] = outcome(quasi_testable, by_prop["quasi_stable"])
    # strong = stable and quasi; carry the earliest witness of either part
    strong_wits = sorted(by_prop["practically_stable"] + by_prop["quasi_stable"],
                         key=Witness.sort_key)
    outcomes["strongly_stable"] = outcome(quasi_testable, strong_wits)
    # asymptotic = stability plus the tail bound with A beyond t0 + T0; when
    # no T0 is given the tail requirement is witnessed by T0 = 0, so the
    # outcome coincides with plain stability
    asym_wits = sorted(by_prop["practically_stable"] + by_prop["asymptotically_stable"],
                       key=Witness.sort_key)
    outcomes["asymptotically_stable"] = outcome(stable_testable, asym_wits)
    return outcomes, runs, skipped, probe_grazes


def check_practical_stability(sys: HybridFuzzySystem, comp: ScalarHybridSystem,
                              V: LyapunovFn, kpair: ClassKPair, q: StabilityQuery,
                              horizon: float,
                              modes: Sequence[StepMode] = (StepMode.EXPANSIVE,
                                                           StepMode.CONTRACTIVE),
                              hypothesis_samples: int = 100,
                              tol: float = 1e-9) -> Verdict:
    """Full practical-stability check; see the module docstring for the layers."""
    sys.ts.index_of(horizon)
    modes = tuple(modes)
    grid = sys.u0.grid
    n = sys.u0.n
    plan = q.sampling

    seq = np.random.SeedSequence(plan.seed)
    rng_sandwich, rng_lipschitz = [np.random.default_rng(s) for s in seq.spawn(2)]

    # Layer 1: hypothesis checks.
    xmax = max(q.A, q.lam, q.B or 0.0, 1.0) * 1.5
    class_k = _validate_class_k(kpair, xmax)
    a_lam = float(kpair.a(q.lam))
    b_A = float(kpair.b(q.A))
    gate = {"a_lambda": a_lam, "b_A": b_A, "passed": a_lam < b_A}
    sandwich = _check_sandwich(V, kpair, sys.ts, grid, n, plan.family,
                               radius=q.A, rng=rng_sandwich,
                               samples=hypothesis_samples, tol=tol)
    lipschitz = _check_lipschitz(V, sys.ts, grid, n, plan.family,
                                 radius=min(q.rho, 2.0 * q.A), rng=rng_lipschitz,
                                 samples=hypothesis_samples)
    monotonicity = check_monotonicity_hypothesis(
        comp, samples=max(hypothesis_samples, 50), seed=plan.seed,
        box=(0.0, max(1.0, 2.0 * b_A)))

    # Layer 3 runs first so its trajectories can feed the condition (ii) check.
    outcomes, runs, skipped, grazes = _direct_route(sys, q, horizon, modes)
    cond_ii = _check_condition_ii(V, comp, [(m, s, tr) for m, s, _, tr in runs], tol)

    hypothesis_report = {
        "class_k": class_k,
        "gate_a_lambda_lt_b_A": gate,
        "sandwich": sandwich,
        "lipschitz": lipschitz,
        "monotonicity": monotonicity.to_dict(),
        "condition_ii": cond_ii,
    }
    hyp_passed = (class_k["passed"] and gate["passed"] and sandwich["passed"]
                  and lipschitz["passed"] and monotonicity.passed and cond_ii["passed"])
    hypothesis_report["all_passed"] = hyp_passed

    # Layer 2: comparison route.
    comparison_verdict = _comparison_route(comp, kpair, q, horizon)

    implied = {}
    for prop in PROPERTIES:
        if not hyp_passed:
            implied[prop] = NOT_TESTED + " (hypotheses not established on samples)"
        elif comparison_verdict[prop] == HOLDS:
            implied[prop] = HOLDS + " (transferred from the comparison system)"
        elif comparison_verdict[prop] == VIOLATED:
            implied[prop] = "no conclusion (comparison system not stable on the grid)"
        else:
            implied[prop] = NOT_TESTED

    inconsistencies = []
    for prop in PROPERTIES:
        if (hyp_passed and comparison_verdict[prop] == HOLDS
                and outcomes[prop]["status"] == VIOLATED):
            inconsistencies.append({
                "property": prop,
                "witness": outcomes[prop]["witness"],
            })
    consistency = {
        "checked": hyp_passed,
        "inconsistent": bool(inconsistencies),
        "details": inconsistencies,
    }

    metadata = {
        "lambda": q.lam,
        "A": q.A,
        "B": q.B,
        "T0": q.T0,
        "rho": q.rho,
        "horizon": horizon,
        "modes": [m.value for m in modes],
        "sampling": {"count": plan.count, "seed": plan.seed, "family": plan.family},
        "trajectories": len(runs),
        "skipped_step_failures": skipped[:20],
        "probe_grazes": grazes[:20],
        "quantifier_note": (
            "definitions quantify over every solution and initial state; this tool "
            "samples seeded initial states with premise distance uniform in "
            "(0, lambda), adds one boundary probe at distance lambda, and runs the "
            "listed step modes"
        ),
    }

    return Verdict(
        properties=outcomes,
        hypothesis_report=hypothesis_report,
        comparison_verdict=comparison_verdict,
        implied_conclusions=implied,
        consistency=consistency,
        metadata=metadata,
    )
