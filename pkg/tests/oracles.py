"""Independent oracles used to compute expected values.

Everything here is deliberately brute force (sampling, enumeration, plain
float recursions) and never calls the code paths it is used to check.
"""

from __future__ import annotations

import bisect

import numpy as np


# -- interval arithmetic by point sampling ----------------------------------

def interval_sum(a, b, n=33):
    """Minkowski sum of two intervals via the sampled sum set."""
    pts = np.linspace(a[0], a[1], n)[:, None] + np.linspace(b[0], b[1], n)[None, :]
    return float(pts.min()), float(pts.max())


def interval_scale(k, a, n=65):
    pts = k * np.linspace(a[0], a[1], n)
    return float(pts.min()), float(pts.max())


def hausdorff_sampled(a, b, n=801):
    """Hausdorff distance by direct sup-inf evaluation on sampled points."""
    pa = np.linspace(a[0], a[1], n)
    pb = np.linspace(b[0], b[1], n)
    gaps = np.abs(pa[:, None] - pb[None, :])
    return float(max(gaps.min(axis=1).max(), gaps.min(axis=0).max()))


def trapezoid_cut(a, b, c, d, alpha):
    """Hand interpolation of a trapezoid's alpha cut."""
    return a + alpha * (b - a), d - alpha * (d - c)


# -- nested-cut random generators --------------------------------------------

def random_cuts(rng, m, span=5.0):
    """Random valid (lower, upper) endpoint arrays for m alpha levels."""
    core_lo = rng.uniform(-span, span)
    core_hi = core_lo + rng.uniform(0.0, span)
    down = rng.uniform(0.0, 1.0, m - 1)
    up = rng.uniform(0.0, 1.0, m - 1)
    lower = core_lo - np.concatenate([np.cumsum(down[::-1])[::-1], [0.0]])
    upper = core_hi + np.concatenate([np.cumsum(up[::-1])[::-1], [0.0]])
    return lower, upper


# -- plain float recursions ---------------------------------------------------

def segment_index(switch_times, t):
    return max(bisect.bisect_right(switch_times, t) - 1, 0)


def hybrid_euler_crisp(points, switch_times, f, lam_maps, x0):
    """Real-valued Euler recursion with per-segment frozen switch values.

    f(t, x, lam) and lam_maps[k](t_k, x_k) are plain float functions.
    """
    xs = [float(x0)]
    seg = -1
    lam = None
    for i in range(len(points) - 1):
        t = float(points[i])
        k = segment_index(switch_times, t)
        if k != seg:
            seg = k
            lam = lam_maps[k](switch_times[k], xs[i])
        mu = float(points[i + 1]) - t
        xs.append(xs[i] + mu * f(t, xs[i], lam))
    return xs


def comparison_euler(points, switch_times, g, psi_list, r0):
    """Scalar comparison recursion with frozen psi_k(r_k)."""
    rs = [float(r0)]
    seg = -1
    frozen = None
    for i in range(len(points) - 1):
        t = float(points[i])
        k = segment_index(switch_times, t)
        if k != seg:
            seg = k
            frozen = psi_list[k](rs[i])
        mu = float(points[i + 1]) - t
        rs.append(rs[i] + mu * g(t, rs[i], frozen))
    return rs


def contraction_sequence(x0, steps):
    """x(t+1) = x(t)/2 closed form."""
    return [x0 * 0.5 ** t for t in range(steps + 1)]


def companion_sequence(r0, steps):
    """r(t+1) = 1.5 r(t) + 0.5 r0 (the first-segment companion recursion)."""
    rs = [r0]
    for _ in range(steps):
        rs.append(1.5 * rs[-1] + 0.5 * r0)
    return rs


def expansive_width_sequence(w0, steps):
    """Support width under u(t+1) = u(t) + (-1/2) u(t): grows by 1.5 each step."""
    return [w0 * 1.5 ** t for t in range(steps + 1)]


# -- gH round trip at the endpoint level -------------------------------------

def gh_roundtrip_ok(u_records, v_records, w_records, atol=1e-12):
    """Level-wise: u = v + w or v = u + (-1)w, mixing across levels allowed.

    Arguments are (alpha, lower, upper) record lists.
    """
    for (_, ul, uu), (_, vl, vu), (_, wl, wu) in zip(u_records, v_records, w_records):
        first = abs(vl + wl - ul) <= atol and abs(vu + wu - uu) <= atol
        # (-1) * w has endpoints (-wu, -wl)
        second = abs(ul - wu - vl) <= atol and abs(uu - wl - vu) <= atol
        if not (first or second):
            return False
    return True
