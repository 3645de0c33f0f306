"""Extremal families, bound constants, and sharpness/limit verification.

Two degenerating families realize the ends of the ratio inequality
lower(d) < Delta(K)/V1(K) < 1/3:

* ``k_delta(d, delta)``: the simplex conv(e1, -e1, delta e2, ..., delta e_d),
  whose ratio tends to lower(d) = (3d+1)/(2(d+1)(2d+1));
* ``k_prime_delta(d, delta)``: the box [-1, 1] x [0, delta]^{d-1}, whose ratio
  tends to 1/3.

Both have exact point samplers (simplex and box), so the sweep keeps pair
Monte Carlo at every delta; the chord estimator remains available as a
cross-check. ``verify_limits`` produces the per-delta table with the envelope
checks |ratio - limit| <= 2 delta + 3 sigma (the linear-in-delta envelope is a
test heuristic motivated by the explicit one-sided bound
Delta(K_delta) <= (3d+1)/((d+1)(2d+1)) + delta, which is asserted as such).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import exp, lgamma, log, pi, sqrt

import numpy as np

from .bodies import Box, Simplex
from .distance import Estimate, mc_mean_distance
from .intrinsic import SphereQuadrature, v1_with_error

__all__ = [
    "BoundConstants",
    "bound_constants",
    "lower_bound",
    "k_delta",
    "k_prime_delta",
    "LimitRow",
    "LimitReport",
    "verify_limits",
]


def lower_bound(d: int) -> float:
    """(3d+1) / (2(d+1)(2d+1)), the sharp lower ratio bound."""
    return (3 * d + 1) / (2.0 * (d + 1) * (2 * d + 1))


@dataclass(frozen=True)
class BoundConstants:
    """The four constants of the ratio and diameter bounds in dimension d."""

    d: int
    lower: float
    upper: float
    diam_upper_new: float
    diam_upper_bp09: float


def bound_constants(d: int) -> BoundConstants:
    """Bound constants for dimension d, log-gamma evaluated for large d."""
    if d < 2:
        raise ValueError(f"bounds are stated for d >= 2, got {d}")
    new = sqrt(pi) / 3.0 * exp(lgamma((d + 1) / 2) - lgamma(d / 2))
    bp09 = sqrt(2.0 * d / (pi * (d + 1))) * exp(
        (d - 2) * log(2.0) + 2.0 * lgamma(d / 2) - lgamma(d - 0.5)
    )
    return BoundConstants(d, lower_bound(d), 1.0 / 3.0, new, bp09)


def k_delta(d: int, delta: float) -> Simplex:
    """conv(e1, -e1, delta e2, ..., delta e_d): the lower-limit family."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if not delta > 0.0:
        raise ValueError(f"delta must be positive, got {delta!r}")
    V = np.zeros((d + 1, d))
    V[0, 0] = 1.0
    V[1, 0] = -1.0
    for i in range(2, d + 1):
        V[i, i - 1] = delta
    return Simplex(V)


def k_prime_delta(d: int, delta: float) -> Box:
    """[-1, 1] x [0, delta]^{d-1}: the upper-limit family."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if not delta > 0.0:
        raise ValueError(f"delta must be positive, got {delta!r}")
    lower = np.concatenate([[-1.0], np.zeros(d - 1)])
    upper = np.concatenate([[1.0], np.full(d - 1, delta)])
    return Box(lower, upper)


@dataclass(frozen=True)
class LimitRow:
    """One delta of the sweep: estimates, ratios, and per-row assertions."""

    d: int
    delta: float
    delta_k: Estimate
    delta_kp: Estimate
    v1_k: tuple[float, float]
    v1_kp: tuple[float, float]
    ratio_k: float
    ratio_k_se: float
    ratio_kp: float
    ratio_kp_se: float
    envelope_k_pass: bool
    envelope_kp_pass: bool
    delta_kp_lower_pass: bool
    delta_k_upper_pass: bool
    interior_pass: bool


@dataclass(frozen=True)
class LimitReport:
    """Sweep table plus trend diagnostics for one dimension.

    ``passed`` aggregates the per-row assertions; the Kendall statistics are
    reported for the monotone-approach diagnosis (the trend of the simplex
    family is quadratic in delta and drowns in Monte Carlo noise for very
    small delta, so the sign tests are diagnostic rather than gating here).
    """

    d: int
    deltas: tuple[float, ...]
    rows: list[LimitRow] = field(repr=False)
    kendall_k: tuple[float, float]
    kendall_kp: tuple[float, float]
    passed: bool

    def csv_rows(self) -> list[dict]:
        out = []
        bc = bound_constants(self.d)
        for r in self.rows:
            out.extend(
                [
                    {
                        "suite": "extremal",
                        "d": self.d,
                        "delta": r.delta,
                        "quantity": "delta_k_delta",
                        "estimate": r.delta_k.value,
                        "std_error": r.delta_k.std_error,
                        "target": 2.0 * bc.lower,
                        "pass": r.delta_k_upper_pass,
                    },
                    {
                        "suite": "extremal",
                        "d": self.d,
                        "delta": r.delta,
                        "quantity": "delta_k_prime_delta",
                        "estimate": r.delta_kp.value,
                        "std_error": r.delta_kp.std_error,
                        "target": 2.0 / 3.0,
                        "pass": r.delta_kp_lower_pass,
                    },
                    {
                        "suite": "extremal",
                        "d": self.d,
                        "delta": r.delta,
                        "quantity": "ratio_k_delta",
                        "estimate": r.ratio_k,
                        "std_error": r.ratio_k_se,
                        "target": bc.lower,
                        "pass": r.envelope_k_pass and r.interior_pass,
                    },
                    {
                        "suite": "extremal",
                        "d": self.d,
                        "delta": r.delta,
                        "quantity": "ratio_k_prime_delta",
                        "estimate": r.ratio_kp,
                        "std_error": r.ratio_kp_se,
                        "target": bc.upper,
                        "pass": r.envelope_kp_pass and r.interior_pass,
                    },
                ]
            )
        return out


def _kendall_one_sided(x: np.ndarray, y: np.ndarray, alternative: str) -> tuple[float, float]:
    from scipy.stats import kendalltau

    res = kendalltau(x, y, alternative=alternative)
    return float(res.statistic), float(res.pvalue)


def verify_limits(
    d: int,
    deltas,
    n_samples: int = 1_000_000,
    seed: int = 0,
    threads: int = 1,
    n_dirs: int = 200_000,
    envelope_slope: float = 2.0,
) -> LimitReport:
    """Sweep delta -> 0 over both families and check the limit statements.

    Per delta: pair-MC mean distances, quadrature V1 (deterministic angle
    grid in the plane, seeded MC otherwise), both ratios with propagated
    errors, and four assertions:

    * |ratio(K_delta) - lower(d)|   <= envelope_slope * delta + 3 sigma,
    * |ratio(K'_delta) - 1/3|       <= envelope_slope * delta + 3 sigma,
    * Delta(K'_delta)               >= 2/3 - 3 sigma (holds at every delta),
    * Delta(K_delta)                <= (3d+1)/((d+1)(2d+1)) + delta + 3 sigma,

    plus the strict-interior check that neither ratio escapes
    (lower - 3 sigma, 1/3 + 3 sigma). Each delta runs its own deterministic
    seed derived from (seed, delta index).
    """
    deltas = tuple(float(x) for x in deltas)
    if not deltas or any(x <= 0 for x in deltas):
        raise ValueError("deltas must be a non-empty list of positive reals")
    bc = bound_constants(d)
    delta_k_limit = 2.0 * bc.lower  # (3d+1)/((d+1)(2d+1))
    rows: list[LimitRow] = []
    for i, dl in enumerate(deltas):
        kd = k_delta(d, dl)
        kp = k_prime_delta(d, dl)
        base = seed + 10_000 * i
        est_k = mc_mean_distance(kd, n_samples, seed=base + 1, threads=threads)
        est_kp = mc_mean_distance(kp, n_samples, seed=base + 2, threads=threads)
        if d == 2:
            quad = SphereQuadrature.grid2d(7200)
        else:
            quad = SphereQuadrature.mc(n_dirs, seed=base + 3)
        v1k = v1_with_error(kd, quad)
        v1kp = v1_with_error(kp, quad)
        rk = est_k.value / v1k[0]
        rk_se = rk * sqrt(
            (est_k.std_error / est_k.value) ** 2 + (v1k[1] / v1k[0]) ** 2
        )
        rkp = est_kp.value / v1kp[0]
        rkp_se = rkp * sqrt(
            (est_kp.std_error / est_kp.value) ** 2 + (v1kp[1] / v1kp[0]) ** 2
        )
        rows.append(
            LimitRow(
                d=d,
                delta=dl,
                delta_k=est_k,
                delta_kp=est_kp,
                v1_k=v1k,
                v1_kp=v1kp,
                ratio_k=rk,
                ratio_k_se=rk_se,
                ratio_kp=rkp,
                ratio_kp_se=rkp_se,
                envelope_k_pass=abs(rk - bc.lower) <= envelope_slope * dl + 3 * rk_se,
                envelope_kp_pass=abs(rkp - bc.upper) <= envelope_slope * dl + 3 * rkp_se,
                delta_kp_lower_pass=est_kp.value >= 2.0 / 3.0 - 3 * est_kp.std_error,
                delta_k_upper_pass=est_k.value <= delta_k_limit + dl + 3 * est_k.std_error,
                interior_pass=(
                    bc.lower - 3 * rk_se < rk < bc.upper + 3 * rk_se
                    and bc.lower - 3 * rkp_se < rkp < bc.upper + 3 * rkp_se
                ),
            )
        )

    dl_arr = np.asarray(deltas)
    rk_arr = np.asarray([r.ratio_k for r in rows])
    rkp_arr = np.asarray([r.ratio_kp for r in rows])
    # ratio(K_delta) decreases toward lower(d) and ratio(K'_delta) rises to 1/3
    kend_k = _kendall_one_sided(dl_arr, rk_arr, "greater")
    kend_kp = _kendall_one_sided(dl_arr, rkp_arr, "less")
    passed = all(
        r.envelope_k_pass
        and r.envelope_kp_pass
        and r.delta_kp_lower_pass
        and r.delta_k_upper_pass
        and r.interior_pass
        for r in rows
    )
    return LimitReport(d, deltas, rows, kend_k, kend_kp, passed)
