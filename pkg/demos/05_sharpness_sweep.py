"""
Sharpness of the ratio band: the degenerating families
======================================================

No convex body attains either end of the band

    lower(d) < Delta(K) / V1(K) < 1/3,

but two families get arbitrarily close as delta -> 0:

* K_delta  = conv(e1, -e1, delta e2, ..., delta e_d): a collapsing simplex
  whose cross-section density along e1 is exactly the extremal tent density,
  driving the ratio down to lower(d);
* K'_delta = [-1, 1] x [0, delta]^{d-1}: a collapsing box whose ratio climbs
  to 1/3 while Delta(K'_delta) stays >= 2/3, the segment value.

This sweep estimates both families along a delta grid and checks the
one-sided bound Delta(K_delta) <= 2 lower(d) + delta at every step.
"""

from meandist import bound_constants, verify_limits

for d in (2, 3):
    bc = bound_constants(d)
    print(f"\nd = {d}:  lower = {bc.lower:.6f}, upper = {bc.upper:.6f}")
    print(f"{'delta':>7} {'Delta(K_d)':>11} {'ratio(K_d)':>11} "
          f"{'Delta(K_d_prime)':>16} {'ratio(K_d_prime)':>16}  checks")
    report = verify_limits(d, [0.1, 0.03, 0.01, 0.003, 0.001], n_samples=400_000, seed=0)
    for row in report.rows:
        flags = "".join(
            "y" if f else "N"
            for f in (
                row.envelope_k_pass,
                row.envelope_kp_pass,
                row.delta_kp_lower_pass,
                row.delta_k_upper_pass,
                row.interior_pass,
            )
        )
        print(f"{row.delta:7.3f} {row.delta_k.value:11.6f} {row.ratio_k:11.6f} "
              f"{row.delta_kp.value:16.6f} {row.ratio_kp:16.6f}  {flags}")
    print(f"all assertions passed: {report.passed}")
    print(f"trend diagnostics: ratio(K_delta) vs delta tau = {report.kendall_k[0]:+.2f}, "
          f"ratio(K'_delta) vs delta tau = {report.kendall_kp[0]:+.2f}")

print("\nNote: the monotone trend of the simplex family is quadratic in delta,")
print("so at the smallest deltas it sits below the Monte Carlo noise floor;")
print("rerun with deltas like 0.6,0.4,0.25,0.15,0.08 to see tau = +1 sharply.")
