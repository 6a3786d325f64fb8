"""Walkthrough: averaged cloning fidelities over the sharpness-angle plane.

For each (alpha, eta) with beta at its saturating value, the script
computes sphere-averaged fidelities by quadrature, compares them with the
closed forms, and tabulates the gap between coherent cloning and
measure-and-prepare.  The same table is what `spinclone sweep` writes as
CSV for external surface plotting.
"""

import numpy as np

from spinclone import (
    beta_max,
    fidelity_report,
    geometry_from_angles,
    universal_baseline,
)

alphas = np.linspace(0.0, 1.0, 5)
etas = np.linspace(0.0, np.pi, 5)

print("alpha  eta     beta    F_av(quad)  F_av(closed)  F_m(quad)   gap")
worst_closed = 0.0
for alpha in alphas:
    for eta in etas:
        g = geometry_from_angles(alpha, beta_max(alpha, eta), eta)
        rep = fidelity_report(g, resolution=32)
        gap = rep.f_av_quad - rep.f_m_quad
        worst_closed = max(worst_closed, abs(rep.f_av_quad - rep.f_av_closed))
        print(f"{alpha:5.2f}  {eta:5.2f}  {rep.beta:6.3f}   {rep.f_av_quad:.8f}"
              f"  {rep.f_av_closed:.8f}   {rep.f_m_quad:.8f}  {gap:+.2e}")

print(f"\nLargest closed-form vs quadrature deviation: {worst_closed:.2e}")
print("The coherent surface dominates the measure-and-prepare surface at")
print("every grid point; the two touch where the measurement is projective")
print("on a single axis (eta = 0 or pi with a sharp component).")

baseline, (sa, sb) = universal_baseline()
g = geometry_from_angles(0.6, beta_max(0.6, np.pi / 2), np.pi / 2)
rep = fidelity_report(g, resolution=32)
print(f"\nUniversal-cloner comparison: its two-copy fidelity {baseline:.4f}")
print(f"exceeds this cloner's F_av = {rep.f_av_quad:.4f} at alpha=0.6, eta=pi/2,")
print(f"but its sharpness pair ({sa:.3f}, {sb:.3f}) never saturates the joint-")
print("measurement bound, while every geometry in this package does.")

print("\nSingle-clone averages at the same point:")
print(f"  F_a = {rep.f_a_quad:.6f} (closed {rep.f_a_closed:.6f})")
print(f"  F_b = {rep.f_b_quad:.6f} (closed {rep.f_b_closed:.6f})")
print(f"  measure-and-prepare: F_ma = {rep.f_ma_closed:.6f}, F_mb = {rep.f_mb_closed:.6f}")
print("The b-side fidelities coincide; the a-side keeps an advantage from")
print("the coherence retained in the first output qubit.")
